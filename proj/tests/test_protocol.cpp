#include <doctest.h>

#include <array>
#include <cmath>

#include "qlogic/error.hpp"
#include "qlogic/io.hpp"
#include "qlogic/protocol.hpp"
#include "qlogic/rng.hpp"
#include "support.hpp"

using namespace qlogic;

namespace {

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

Theory qubit() { return io::parse_theory(io::read_json_file(support::fixture("qubit.json"))); }

ProtocolConfig config(EveStrategy eve, double rate, std::uint64_t rounds = 20000, std::uint64_t seed = 1) {
  ProtocolConfig c;
  c.rounds = rounds;
  c.classes = {"X", "Z"};
  c.eve = eve;
  c.eve_rate = rate;
  c.seed = seed;
  return c;
}

// Four standard errors of a binomial proportion, plus slack for tiny n.
double band(double p, std::uint64_t n) { return 4 * std::sqrt(p * (1 - p) / static_cast<double>(n)) + 1e-9; }

}  // namespace

TEST_CASE("splitmix64 reference values") {
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("counter streams are reproducible and independent of draw order") {
  CounterRng a(7, 3, CounterRng::Eve), b(7, 3, CounterRng::Eve), c(7, 4, CounterRng::Eve);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  CounterRng u(1, 0, 0);
  std::array<int, 4> hist{};
  for (int i = 0; i < 40000; ++i) {
    const double x = CounterRng(1, i, 0).uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    ++hist[u.below(4)];
  }
  for (const auto h : hist) CHECK(std::abs(h - 10000) < 400);
}

TEST_CASE("parallel and serial protocol runs agree bit for bit") {
  const auto theory = qubit();
  for (auto eve : {EveStrategy::None, EveStrategy::InterceptResendUniform, EveStrategy::InterceptResendFixed,
                   EveStrategy::InterceptResendKnown}) {
    auto c = config(eve, eve == EveStrategy::None ? 0.0 : 0.7, 5000, 42);
    c.eve_class = "Z";
    const auto p = run_protocol(theory, c);
    const auto s = run_protocol_serial(theory, c);
    CHECK(p.records == s.records);
    CHECK(io::to_json(p.stats).dump() == io::to_json(s.stats).dump());
  }
  auto c = config(EveStrategy::InterceptResendUniform, 1.0, 3000, 5);
  c.classes = {"A", "B"};
  const auto flip = flip_protocol_theory(c.classes);
  CHECK(run_protocol(flip, c).records == run_protocol_serial(flip, c).records);
}

TEST_CASE("replay determinism and seed sensitivity") {
  const auto theory = qubit();
  const auto c = config(EveStrategy::InterceptResendUniform, 1.0, 4000, 9);
  CHECK(run_protocol(theory, c).records == run_protocol(theory, c).records);
  auto d = c;
  d.seed = 10;
  CHECK(run_protocol(theory, c).records != run_protocol(theory, d).records);
}

TEST_CASE("no eavesdropper means no errors") {
  const auto r = run_protocol(qubit(), config(EveStrategy::None, 0.0));
  CHECK(r.stats.sampled_errors == 0);
  CHECK(r.stats.qber == 0.0);
  CHECK(r.stats.sifted_qber == 0.0);
  CHECK_FALSE(r.stats.detected);
  CHECK(std::abs(static_cast<double>(r.stats.sifted_count) / 20000 - 0.5) < band(0.5, 20000));
  const auto zero_rate = run_protocol(qubit(), config(EveStrategy::InterceptResendUniform, 0.0));
  CHECK(zero_rate.stats.sifted_errors == 0);
}

TEST_CASE("intercept-resend error rates") {
  const auto uniform = run_protocol(qubit(), config(EveStrategy::InterceptResendUniform, 1.0));
  CHECK(std::abs(uniform.stats.sifted_qber - 0.25) < band(0.25, uniform.stats.sifted_count));
  CHECK(uniform.stats.detected);

  auto fixed_config = config(EveStrategy::InterceptResendFixed, 1.0);
  fixed_config.eve_class = "Z";
  const auto fixed = run_protocol(qubit(), fixed_config);
  // Only Alice's X rounds are disturbed, each with probability 1/2.
  CHECK(std::abs(fixed.stats.sifted_qber - 0.25) < band(0.25, fixed.stats.sifted_count));
  for (const auto& rec : fixed.records)
    if (rec.sifted && rec.alice_class == 1) CHECK_FALSE(rec.error);

  // Knowing Alice's class, Eve asks an equivalent question and leaves no trace.
  const auto known = run_protocol(qubit(), config(EveStrategy::InterceptResendKnown, 1.0));
  CHECK(known.stats.sifted_errors == 0);
  CHECK(known.stats.eve_information_rounds == known.stats.sifted_count);

  const auto half = run_protocol(qubit(), config(EveStrategy::InterceptResendUniform, 0.5));
  CHECK(std::abs(half.stats.sifted_qber - 0.125) < band(0.125, half.stats.sifted_count));
}

TEST_CASE("records are consistent with the statistics") {
  const auto r = run_protocol(qubit(), config(EveStrategy::InterceptResendUniform, 0.6, 3000, 4));
  std::uint64_t sifted = 0, errors = 0, sampled = 0;
  for (const auto& rec : r.records) {
    CHECK(rec.sifted == (rec.alice_class == rec.bob_class));
    if (rec.sifted) {
      ++sifted;
      errors += rec.error;
      CHECK(rec.error == (rec.alice_answer != rec.bob_answer));
    }
    sampled += rec.sampled;
    CHECK((!rec.sampled || rec.sifted));
    CHECK(rec.eve_class.has_value() == rec.eve_intercepted);
  }
  CHECK(sifted == r.stats.sifted_count);
  CHECK(errors == r.stats.sifted_errors);
  CHECK(sampled == r.stats.sampled_count);
}

TEST_CASE("flip model") {
  ProtocolConfig c = config(EveStrategy::InterceptResendUniform, 1.0, 10000, 7);
  c.classes = {};
  const auto r = flip_model_protocol(c);
  CHECK(std::abs(r.stats.sifted_qber - 0.5) < band(0.5, r.stats.sifted_count));
  c.eve = EveStrategy::None;
  c.eve_rate = 0;
  CHECK(flip_model_protocol(c).stats.sifted_errors == 0);
}

TEST_CASE("protocol configuration is validated") {
  const auto theory = qubit();
  auto c = config(EveStrategy::None, 0.0);
  c.classes = {"Z", "Z"};
  CHECK_FALSE(error_code([&] { run_protocol(theory, c); }).empty());
  c.classes = {"Z", "Y"};
  CHECK(error_code([&] { run_protocol(theory, c); }) == "UnknownClass");
  c = config(EveStrategy::None, 0.0);
  c.sample_fraction = 1.5;
  CHECK(error_code([&] { run_protocol(theory, c); }) == "InvalidConfig");
  c = config(EveStrategy::InterceptResendFixed, 1.0);
  CHECK(error_code([&] { run_protocol(theory, c); }) == "InvalidConfig");

  // Commuting classes are implied by one another.
  QuantumTheory q;
  q.rho = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  const auto z0 = support::ray({1, 0}), z1 = support::ray({0, 1});
  q.classes["Z"] = {kBinaryAnswers, {z0 * z0.adjoint(), z1 * z1.adjoint()}};
  q.classes["W"] = {kBinaryAnswers, {z1 * z1.adjoint(), z0 * z0.adjoint()}};
  c = config(EveStrategy::None, 0.0);
  c.classes = {"Z", "W"};
  CHECK(error_code([&] { run_protocol(Theory::quantum(q), c); }) == "ImpliedClasses");
}

TEST_CASE("detection curve") {
  const auto theory = qubit();
  const auto c = config(EveStrategy::InterceptResendUniform, 0.0, 4000, 3);
  const auto curve = detection_curve(theory, c, {0.0, 0.25, 0.5, 1.0}, 8);
  REQUIRE(curve.rows.size() == 4);
  CHECK(curve.monotone);
  CHECK(curve.rows[0].mean_qber == 0.0);
  CHECK(curve.rows[0].detection_probability == 0.0);
  CHECK(curve.rows[3].detection_probability == 1.0);
  CHECK(curve.rows[3].mean_qber == doctest::Approx(0.25).epsilon(0.1));
  CHECK(error_code([&] { detection_curve(theory, c, {1.5}, 2); }) == "InvalidRate");
  CHECK(error_code([&] { detection_curve(theory, config(EveStrategy::None, 0.0), {0.5}, 2); }) == "InvalidConfig");
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 1, 0) != derive_seed(1, 0, 1));
}
