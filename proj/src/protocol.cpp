#include "qlogic/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qlogic/error.hpp"
#include "qlogic/rng.hpp"

namespace qlogic {

EveStrategy parse_eve_strategy(std::string_view name) {
  if (name == "none") return EveStrategy::None;
  if (name == "intercept_resend_uniform") return EveStrategy::InterceptResendUniform;
  if (name == "intercept_resend_fixed") return EveStrategy::InterceptResendFixed;
  if (name == "intercept_resend_known") return EveStrategy::InterceptResendKnown;
  throw InputError("UnknownStrategy", "unknown eavesdropper strategy '" + std::string(name) + "'",
                   {{"strategy", std::string(name)}});
}

std::string_view eve_strategy_name(EveStrategy s) {
  switch (s) {
    case EveStrategy::None: return "none";
    case EveStrategy::InterceptResendUniform: return "intercept_resend_uniform";
    case EveStrategy::InterceptResendFixed: return "intercept_resend_fixed";
    case EveStrategy::InterceptResendKnown: return "intercept_resend_known";
  }
  return "?";
}

namespace {

void validate(const Theory& theory, const ProtocolConfig& c, const Quotient* quotient) {
  auto bad = [](const std::string& msg, nlohmann::ordered_json details = {}) {
    throw InputError("InvalidConfig", msg, std::move(details));
  };
  if (c.rounds == 0) bad("rounds must be positive");
  if (c.classes.size() < 2) bad("at least two question classes are needed");
  if (std::set<std::string>(c.classes.begin(), c.classes.end()).size() != c.classes.size())
    bad("question classes must be distinct");
  if (!(c.eve_rate >= 0 && c.eve_rate <= 1)) bad("eve rate must lie in [0, 1]", {{"eve_rate", c.eve_rate}});
  if (!(c.sample_fraction > 0 && c.sample_fraction < 1))
    bad("sample fraction must lie in (0, 1)", {{"sample_fraction", c.sample_fraction}});
  if (!(c.abort_threshold >= 0 && c.abort_threshold <= 1))
    bad("abort threshold must lie in [0, 1]", {{"threshold", c.abort_threshold}});
  if (c.eve == EveStrategy::InterceptResendFixed &&
      std::find(c.classes.begin(), c.classes.end(), c.eve_class) == c.classes.end())
    bad("fixed strategy needs --eve-class among the protocol classes", {{"eve_class", c.eve_class}});
  for (std::size_t i = 0; i < c.classes.size(); ++i)
    for (std::size_t j = 0; j < c.classes.size(); ++j)
      if (i != j && implied(theory, c.classes[i], c.classes[j], quotient))
        throw InputError("ImpliedClasses", "classes '" + c.classes[i] + "' and '" + c.classes[j] + "' are implied",
                         {{"pair", {c.classes[i], c.classes[j]}}});
}

// Cumulative weights of one class sequence's joint distribution.
struct Sampler {
  std::vector<Outcome> outcomes;
  std::vector<double> cumulative;

  explicit Sampler(const JointDistribution& d) {
    double acc = 0;
    for (const auto& [x, p] : d.weights) {
      acc += p.to_double();
      outcomes.push_back(x);
      cumulative.push_back(acc);
    }
  }
  const Outcome& draw(double u) const {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u * cumulative.back());
    return outcomes[std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), outcomes.size() - 1)];
  }
};

struct Prepared {
  std::size_t k = 0;
  std::vector<Sampler> direct;     // [alice * k + bob]
  std::vector<Sampler> intercepted;  // [(alice * k + eve) * k + bob]
};

Prepared prepare(const Theory& theory, const ProtocolConfig& c) {
  Prepared p;
  p.k = c.classes.size();
  for (const auto& a : c.classes)
    for (const auto& b : c.classes) p.direct.emplace_back(theory.evaluate(std::vector{a, b}));
  if (c.eve != EveStrategy::None && c.eve_rate > 0)
    for (const auto& a : c.classes)
      for (const auto& e : c.classes)
        for (const auto& b : c.classes) p.intercepted.emplace_back(theory.evaluate(std::vector{a, e, b}));
  return p;
}

RoundRecord simulate_round(const Prepared& p, const ProtocolConfig& c, std::uint64_t round) {
  CounterRng alice(c.seed, round, CounterRng::Alice), eve(c.seed, round, CounterRng::Eve),
      bob(c.seed, round, CounterRng::Bob), outcomes(c.seed, round, CounterRng::Outcomes),
      sampling(c.seed, round, CounterRng::Sampling);
  RoundRecord r;
  r.round = round;
  const auto k = p.k;
  r.alice_class = static_cast<std::uint32_t>(alice.below(k));
  if (c.eve != EveStrategy::None && eve.uniform() < c.eve_rate) {
    r.eve_intercepted = true;
    switch (c.eve) {
      case EveStrategy::InterceptResendUniform: r.eve_class = static_cast<std::uint32_t>(eve.below(k)); break;
      case EveStrategy::InterceptResendFixed:
        r.eve_class = static_cast<std::uint32_t>(std::find(c.classes.begin(), c.classes.end(), c.eve_class) -
                                                 c.classes.begin());
        break;
      default: r.eve_class = r.alice_class; break;
    }
  }
  r.bob_class = static_cast<std::uint32_t>(bob.below(k));
  const double u = outcomes.uniform();
  if (r.eve_intercepted) {
    const auto& x = p.intercepted[(r.alice_class * k + *r.eve_class) * k + r.bob_class].draw(u);
    r.alice_answer = x[0];
    r.eve_answer = x[1];
    r.bob_answer = x[2];
  } else {
    const auto& x = p.direct[r.alice_class * k + r.bob_class].draw(u);
    r.alice_answer = x[0];
    r.bob_answer = x[1];
  }
  r.sifted = r.alice_class == r.bob_class;
  if (r.sifted) {
    r.error = r.alice_answer != r.bob_answer;
    r.sampled = sampling.uniform() < c.sample_fraction;
  }
  return r;
}

ProtocolStats aggregate(const std::vector<RoundRecord>& records, const ProtocolConfig& c) {
  ProtocolStats s;
  s.rounds = records.size();
  for (const auto& r : records) {
    if (!r.sifted) continue;
    ++s.sifted_count;
    s.sifted_errors += r.error;
    if (r.sampled) {
      ++s.sampled_count;
      s.sampled_errors += r.error;
    }
    if (r.eve_intercepted && r.eve_class == r.alice_class) ++s.eve_information_rounds;
  }
  if (s.sampled_count) s.qber = static_cast<double>(s.sampled_errors) / static_cast<double>(s.sampled_count);
  if (s.sifted_count) s.sifted_qber = static_cast<double>(s.sifted_errors) / static_cast<double>(s.sifted_count);
  s.detected = s.qber > c.abort_threshold;
  return s;
}

ProtocolResult run(const Theory& theory, const ProtocolConfig& c, const Quotient* quotient, bool parallel) {
  validate(theory, c, quotient);
  const auto prepared = prepare(theory, c);
  ProtocolResult out;
  out.records.resize(c.rounds);
  const auto n = static_cast<std::int64_t>(c.rounds);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t i = 0; i < n; ++i)
    out.records[static_cast<std::size_t>(i)] = simulate_round(prepared, c, static_cast<std::uint64_t>(i));
  out.stats = aggregate(out.records, c);
  return out;
}

}  // namespace

ProtocolResult run_protocol(const Theory& theory, const ProtocolConfig& config, const Quotient* quotient) {
  return run(theory, config, quotient, true);
}

ProtocolResult run_protocol_serial(const Theory& theory, const ProtocolConfig& config, const Quotient* quotient) {
  return run(theory, config, quotient, false);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t rate_index, std::uint64_t rep) {
  return splitmix64(splitmix64(splitmix64(seed) ^ (rate_index + 1)) ^ rep);
}

DetectionCurve detection_curve(const Theory& theory, const ProtocolConfig& base, const std::vector<double>& rates,
                               unsigned repetitions, const Quotient* quotient) {
  if (repetitions == 0) throw InputError("InvalidConfig", "repetitions must be positive", {});
  if (base.eve == EveStrategy::None) throw InputError("InvalidConfig", "a detection curve needs an eavesdropping strategy", {});
  for (const auto r : rates)
    if (!(r >= 0 && r <= 1)) throw InputError("InvalidRate", "rates must lie in [0, 1]", {{"rate", r}});
  DetectionCurve curve;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    DetectionRow row;
    row.rate = rates[i];
    std::vector<double> qbers;
    unsigned detections = 0;
    for (unsigned rep = 0; rep < repetitions; ++rep) {
      auto config = base;
      config.eve_rate = rates[i];
      config.seed = derive_seed(base.seed, i, rep);
      const auto stats = run_protocol(theory, config, quotient).stats;
      qbers.push_back(stats.qber);
      row.mean_sifted_qber += stats.sifted_qber / repetitions;
      detections += stats.detected;
    }
    for (const auto q : qbers) row.mean_qber += q / repetitions;
    // With one repetition the spread is estimated from the binomial variance.
    double var = 0;
    if (repetitions > 1) {
      for (const auto q : qbers) var += (q - row.mean_qber) * (q - row.mean_qber);
      var /= (repetitions - 1);
    } else {
      const double expected_sample = static_cast<double>(base.rounds) * base.sample_fraction / 2;
      var = row.mean_qber * (1 - row.mean_qber) / std::max(1.0, expected_sample);
    }
    row.qber_stderr = std::sqrt(var / repetitions);
    row.detection_probability = static_cast<double>(detections) / repetitions;
    curve.rows.push_back(row);
  }
  std::vector<std::size_t> order(curve.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return curve.rows[a].rate < curve.rows[b].rate; });
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& lo = curve.rows[order[i]];
      const auto& hi = curve.rows[order[j]];
      const double slack = 3 * std::hypot(lo.qber_stderr, hi.qber_stderr);
      if (hi.rate > lo.rate && hi.mean_qber < lo.mean_qber - slack) curve.monotone = false;
    }
  return curve;
}

Theory flip_protocol_theory(const std::vector<std::string>& classes) {
  FlipTheory t;
  for (const auto& c : classes) t.initial[c] = true;
  return Theory::flip(std::move(t));
}

ProtocolResult flip_model_protocol(ProtocolConfig config) {
  if (config.classes.empty()) config.classes = {"A", "B"};
  return run_protocol(flip_protocol_theory(config.classes), config);
}

}  // namespace qlogic
