#include "qlogic/theory.hpp"

#include <algorithm>
#include <numeric>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

[[noreturn]] void unknown_class(const std::string& c) {
  throw InputError("UnknownClass", "theory does not know class '" + c + "'", {{"class", c}});
}

bool reserved(const std::string& c) { return c == kTautology || c == kAbsurdity; }

JointDistribution point_mass(std::vector<std::vector<std::string>> labels, Outcome x) {
  JointDistribution d;
  d.labels = std::move(labels);
  d.weights.emplace(std::move(x), Probability::exact(1));
  return d;
}

// Joint of independent blocks; `blocks[k]` fills coordinates `where[k]`.
JointDistribution independent(const std::vector<JointDistribution>& blocks,
                              const std::vector<std::vector<std::size_t>>& where, std::size_t n) {
  JointDistribution out;
  out.labels.resize(n);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (std::size_t i = 0; i < where[k].size(); ++i) out.labels[where[k][i]] = blocks[k].labels[i];
  std::vector<std::pair<Outcome, Probability>> acc{{Outcome(n, 0), Probability::exact(1)}};
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    std::vector<std::pair<Outcome, Probability>> next;
    for (const auto& [x, p] : acc)
      for (const auto& [y, q] : blocks[k].weights) {
        auto z = x;
        for (std::size_t i = 0; i < y.size(); ++i) z[where[k][i]] = y[i];
        next.emplace_back(std::move(z), p * q);
      }
    acc = std::move(next);
  }
  for (auto& [x, p] : acc) out.weights[x] += p;
  return out;
}

void check_normalized(const JointDistribution& d, const std::string& what) {
  for (const auto& [x, p] : d.weights) {
    if (p < Probability::exact(0))
      throw InputError("NotNormalized", what + " has a negative weight", {{"entry", what}});
    if (x.size() != d.dimension())
      throw InputError("InvalidOutcome", what + " has an outcome of the wrong length", {{"entry", what}});
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] >= d.labels[i].size())
        throw InputError("InvalidOutcome", what + " names an unknown answer", {{"entry", what}});
  }
  if (!approx_equal(d.total(), Probability::exact(1), 1e-12))
    throw InputError("NotNormalized", what + " does not sum to 1", {{"entry", what}, {"total", d.total().str()}});
}

void check_labels(const std::vector<std::string>& labels, const std::string& c) {
  auto sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (labels.empty() || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("InvalidAnswers", "class '" + c + "' needs a nonempty set of distinct answers", {{"class", c}});
}

bool commute(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double tol) {
  return (a * b - b * a).norm() < tol;
}

// -- per-variant evaluation of one run (reserved classes already removed) --

JointDistribution eval_tabulated(const TabulatedTheory& t, const std::vector<std::string>& seq) {
  if (auto it = t.table.find(seq); it != t.table.end()) return it->second;
  const std::pair<const std::vector<std::string>, JointDistribution>* best = nullptr;
  for (const auto& entry : t.table) {
    const auto& key = entry.first;
    if (key.size() > seq.size() && std::equal(seq.begin(), seq.end(), key.begin()) &&
        (!best || key.size() < best->first.size()))
      best = &entry;
  }
  if (!best) {
    auto names = nlohmann::ordered_json::array();
    for (const auto& c : seq) names.push_back(c);
    throw InputError("UnknownSequence", "tabulated theory has no entry for this sequence", {{"sequence", names}});
  }
  std::vector<std::size_t> keep(seq.size());
  std::iota(keep.begin(), keep.end(), 0);
  return best->second.marginal(keep);
}

JointDistribution eval_product(const ProductTheory& t, const std::vector<std::string>& seq) {
  std::vector<JointDistribution> blocks;
  std::vector<std::vector<std::size_t>> where;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& cd = t.classes.at(seq[i]);
    JointDistribution d;
    d.labels = {cd.labels};
    for (std::size_t a = 0; a < cd.probabilities.size(); ++a)
      if (!(cd.probabilities[a] == Probability::exact(0)))
        d.weights.emplace(Outcome{static_cast<std::uint8_t>(a)}, cd.probabilities[a]);
    blocks.push_back(std::move(d));
    where.push_back({i});
  }
  return independent(blocks, where, seq.size());
}

JointDistribution eval_flip(const FlipTheory& t, const std::vector<std::string>& seq) {
  auto state = t.initial;
  Outcome x;
  for (const auto& c : seq) {
    x.push_back(state.at(c) ? 0 : 1);
    for (auto& [d, v] : state)
      if (d != c && !t.implied.contains({c, d})) v = !v;
  }
  return point_mass(std::vector<std::vector<std::string>>(seq.size(), kBinaryAnswers), std::move(x));
}

JointDistribution eval_quantum(const QuantumTheory& t, const std::vector<std::string>& seq) {
  JointDistribution out;
  for (const auto& c : seq) out.labels.push_back(t.classes.at(c).labels);
  Outcome x(seq.size());
  // Branches below this weight are dropped.
  constexpr double prune = 1e-15;
  auto descend = [&](auto&& self, std::size_t k, const Eigen::MatrixXcd& rho) -> void {
    if (k == seq.size()) {
      out.weights.emplace(x, Probability(rho.trace().real()));
      return;
    }
    const auto& projectors = t.classes.at(seq[k]).projectors;
    for (std::size_t a = 0; a < projectors.size(); ++a) {
      Eigen::MatrixXcd next = projectors[a] * rho * projectors[a];
      if (next.trace().real() <= prune) continue;
      x[k] = static_cast<std::uint8_t>(a);
      self(self, k + 1, next);
    }
  };
  descend(descend, 0, t.rho);
  return out;
}

}  // namespace

InquirySequence inquiry(const std::vector<std::string>& classes, const std::string& run) {
  InquirySequence seq;
  for (std::size_t i = 0; i < classes.size(); ++i) seq.push_back({classes[i], run, static_cast<int>(i), classes[i]});
  return seq;
}

std::vector<std::string> class_sequence(const InquirySequence& seq) {
  std::vector<std::string> out;
  for (const auto& q : seq) out.push_back(q.class_id);
  return out;
}

// -- JointDistribution --

Probability JointDistribution::at(const Outcome& x) const {
  const auto it = weights.find(x);
  return it == weights.end() ? Probability::exact(0) : it->second;
}

Probability JointDistribution::total() const {
  Probability sum = Probability::exact(0);
  for (const auto& [_, p] : weights) sum += p;
  return sum;
}

bool JointDistribution::is_exact() const {
  return std::all_of(weights.begin(), weights.end(), [](const auto& w) { return w.second.is_exact(); });
}

JointDistribution JointDistribution::marginal(const std::vector<std::size_t>& keep) const {
  JointDistribution out;
  for (const auto i : keep) out.labels.push_back(labels.at(i));
  for (const auto& [x, p] : weights) {
    Outcome y;
    for (const auto i : keep) y.push_back(x[i]);
    out.weights[y] += p;
  }
  return out;
}

std::vector<Probability> JointDistribution::coordinate(std::size_t i) const {
  std::vector<Probability> out(labels.at(i).size(), Probability::exact(0));
  for (const auto& [x, p] : weights) out[x[i]] += p;
  return out;
}

Probability JointDistribution::agreement(std::size_t i, std::size_t j) const {
  Probability sum = Probability::exact(0);
  for (const auto& [x, p] : weights)
    if (labels[i][x[i]] == labels[j][x[j]]) sum += p;
  return sum;
}

Probability total_variation(const JointDistribution& p, const JointDistribution& q) {
  if (p.labels != q.labels) throw InputError("LabelMismatch", "distributions have different answer sets", {});
  Probability sum = Probability::exact(0);
  for (const auto& [x, w] : p.weights) sum += abs(w - q.at(x));
  for (const auto& [x, w] : q.weights)
    if (!p.weights.contains(x)) sum += abs(w);
  return sum * Probability::exact(1, 2);
}

// -- Theory --

Theory Theory::tabulated(TabulatedTheory t) {
  for (const auto& [c, labels] : t.classes) {
    check_labels(labels, c);
    if (reserved(c)) throw InputError("InvalidSpace", c + " is reserved", {{"class", c}});
  }
  for (const auto& [key, d] : t.table) {
    std::string name;
    for (const auto& c : key) {
      if (!t.classes.contains(c)) unknown_class(c);
      name += (name.empty() ? "" : ",") + c;
    }
    if (d.dimension() != key.size()) throw InputError("InvalidOutcome", "entry " + name + " has wrong arity", {});
    for (std::size_t i = 0; i < key.size(); ++i)
      if (d.labels[i] != t.classes.at(key[i]))
        throw InputError("InvalidOutcome", "entry " + name + " uses answers of another class", {{"entry", name}});
    check_normalized(d, "entry " + name);
  }
  return Theory(std::move(t));
}

Theory Theory::product(ProductTheory t) {
  for (const auto& [c, cd] : t.classes) {
    if (reserved(c)) throw InputError("InvalidSpace", c + " is reserved", {{"class", c}});
    check_labels(cd.labels, c);
    if (cd.labels.size() != cd.probabilities.size())
      throw InputError("InvalidOutcome", "class '" + c + "' lists a probability per answer", {{"class", c}});
    JointDistribution d;
    d.labels = {cd.labels};
    for (std::size_t a = 0; a < cd.labels.size(); ++a)
      d.weights.emplace(Outcome{static_cast<std::uint8_t>(a)}, cd.probabilities[a]);
    check_normalized(d, "class " + c);
  }
  return Theory(std::move(t));
}

Theory Theory::flip(FlipTheory t) {
  if (t.initial.empty()) throw InputError("InvalidTheory", "flip theory needs at least one class", {});
  for (const auto& [c, _] : t.initial)
    if (reserved(c)) throw InputError("InvalidSpace", c + " is reserved", {{"class", c}});
  for (const auto& [c, d] : t.implied) {
    if (!t.initial.contains(c)) unknown_class(c);
    if (!t.initial.contains(d)) unknown_class(d);
  }
  return Theory(std::move(t));
}

Theory Theory::quantum(QuantumTheory t, double tol) {
  const auto dim = t.rho.rows();
  if (dim == 0 || t.rho.cols() != dim) throw InputError("InvalidState", "state must be a nonempty square matrix", {});
  if ((t.rho - t.rho.adjoint()).norm() > tol) throw InputError("InvalidState", "state is not Hermitian", {});
  if (std::abs(t.rho.trace() - 1.0) > tol) throw InputError("InvalidState", "state does not have unit trace", {});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(t.rho);
  if (eig.eigenvalues().minCoeff() < -tol) throw InputError("InvalidState", "state is not positive semidefinite", {});
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& [c, qc] : t.classes) {
    if (reserved(c)) throw InputError("InvalidSpace", c + " is reserved", {{"class", c}});
    check_labels(qc.labels, c);
    auto bad = [&](const std::string& why) {
      throw InputError("InvalidProjectors", "class '" + c + "': " + why, {{"class", c}});
    };
    if (qc.labels.size() != qc.projectors.size()) bad("one projector per answer is required");
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& p : qc.projectors) {
      if (p.rows() != dim || p.cols() != dim) bad("projector has the wrong dimension");
      if ((p - p.adjoint()).norm() > tol || (p * p - p).norm() > tol) bad("not an orthogonal projector");
      sum += p;
    }
    if ((sum - id).norm() > tol) bad("projectors do not sum to the identity");
  }
  return Theory(std::move(t));
}

std::string Theory::kind() const {
  static constexpr const char* names[] = {"tabulated", "product", "flip", "quantum"};
  return names[v_.index()];
}

std::vector<std::string> Theory::classes() const {
  std::vector<std::string> out{kAbsurdity, kTautology};
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, FlipTheory>)
          for (const auto& [c, _] : t.initial) out.push_back(c);
        else
          for (const auto& [c, _] : t.classes) out.push_back(c);
      },
      v_);
  std::sort(out.begin(), out.end());
  return out;
}

bool Theory::has_class(const std::string& c) const {
  if (reserved(c)) return true;
  return std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, FlipTheory>)
          return t.initial.contains(c);
        else
          return t.classes.contains(c);
      },
      v_);
}

const std::vector<std::string>& Theory::labels(const std::string& c) const {
  if (!has_class(c)) unknown_class(c);
  if (reserved(c)) return kBinaryAnswers;
  return std::visit(
      [&](const auto& t) -> const std::vector<std::string>& {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, FlipTheory>)
          return kBinaryAnswers;
        else if constexpr (std::is_same_v<T, TabulatedTheory>)
          return t.classes.at(c);
        else
          return t.classes.at(c).labels;
      },
      v_);
}

JointDistribution Theory::evaluate(const std::vector<std::string>& seq) const {
  std::vector<std::string> core;
  std::vector<std::size_t> core_at;
  Outcome fixed;
  std::vector<std::size_t> fixed_at;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!has_class(seq[i])) unknown_class(seq[i]);
    if (reserved(seq[i])) {
      fixed.push_back(seq[i] == kTautology ? 0 : 1);
      fixed_at.push_back(i);
    } else {
      core.push_back(seq[i]);
      core_at.push_back(i);
    }
  }
  auto d = std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, TabulatedTheory>) return eval_tabulated(t, core);
        if constexpr (std::is_same_v<T, ProductTheory>) return eval_product(t, core);
        if constexpr (std::is_same_v<T, FlipTheory>) return eval_flip(t, core);
        if constexpr (std::is_same_v<T, QuantumTheory>) return eval_quantum(t, core);
      },
      v_);
  if (fixed.empty()) return d;
  auto q = point_mass(std::vector<std::vector<std::string>>(fixed.size(), kBinaryAnswers), fixed);
  return independent({d, q}, {core_at, fixed_at}, seq.size());
}

JointDistribution Theory::evaluate(const InquirySequence& seq) const {
  std::vector<std::string> runs;
  std::map<std::string, int> last_slot;
  for (const auto& q : seq) {
    if (std::find(runs.begin(), runs.end(), q.run_id) == runs.end()) runs.push_back(q.run_id);
    const auto [it, fresh] = last_slot.try_emplace(q.run_id, q.slot);
    if (!fresh && q.slot < it->second)
      throw InputError("InvalidSequence", "slots decrease within run " + q.run_id,
                       {{"run", q.run_id}, {"slot", q.slot}, {"previous", it->second}});
    it->second = q.slot;
  }
  if (runs.size() <= 1) return evaluate(class_sequence(seq));
  std::vector<JointDistribution> blocks;
  std::vector<std::vector<std::size_t>> where;
  for (const auto& run : runs) {
    std::vector<std::string> classes;
    std::vector<std::size_t> at;
    for (std::size_t i = 0; i < seq.size(); ++i)
      if (seq[i].run_id == run) {
        classes.push_back(seq[i].class_id);
        at.push_back(i);
      }
    blocks.push_back(evaluate(classes));
    where.push_back(std::move(at));
  }
  return independent(blocks, where, seq.size());
}

bool implied(const Theory& theory, const std::string& c, const std::string& d, const Quotient* quotient) {
  if (!theory.has_class(c)) unknown_class(c);
  if (!theory.has_class(d)) unknown_class(d);
  if (c == d || reserved(c) || reserved(d)) return true;
  if (quotient) {
    const auto& l = quotient->lattice;
    const auto a = l.find(c), b = l.find(d);
    if (a && b) {
      if (l.leq(*a, *b) || l.leq(*b, *a)) return true;
      if (quotient->ortho) {
        const auto nb = (*quotient->ortho)(*b);
        if (l.leq(*a, nb) || l.leq(nb, *a)) return true;
      }
    }
  }
  if (const auto* q = std::get_if<QuantumTheory>(&theory.variant())) {
    for (const auto& p : q->classes.at(c).projectors)
      for (const auto& r : q->classes.at(d).projectors)
        if (!commute(p, r, 1e-9)) return false;
    return true;
  }
  if (const auto* f = std::get_if<FlipTheory>(&theory.variant())) return f->implied.contains({c, d});
  return false;
}

// -- contextuality --

ContextualityReport is_noncontextual(const Theory& theory, const std::vector<InquirySequence>& domain_in,
                                     double tol) {
  struct Entry {
    std::vector<std::string> classes, runs;
    JointDistribution joint;
  };
  std::vector<Entry> domain;
  for (const auto& seq : domain_in) {
    Entry e{class_sequence(seq), {}, {}};
    for (const auto& q : seq) e.runs.push_back(q.run_id);
    domain.push_back(std::move(e));
  }
  auto key = [](const Entry& e) { return std::tie(e.classes, e.runs); };
  std::sort(domain.begin(), domain.end(), [&](const Entry& a, const Entry& b) {
    if (a.classes.size() != b.classes.size()) return a.classes.size() < b.classes.size();
    return key(a) < key(b);
  });
  domain.erase(std::unique(domain.begin(), domain.end(), [&](const Entry& a, const Entry& b) { return key(a) == key(b); }),
               domain.end());
  for (auto& e : domain) {
    InquirySequence seq;
    for (std::size_t i = 0; i < e.classes.size(); ++i)
      seq.push_back({e.classes[i], e.runs[i], static_cast<int>(i), e.classes[i]});
    e.joint = theory.evaluate(seq);
  }

  ContextualityReport report;
  auto labels_of = [](const JointDistribution& d, const Outcome& x) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(d.labels[i][x[i]]);
    return out;
  };

  // Order invariance: the k-th occurrence of a class maps to its k-th occurrence.
  for (std::size_t s = 0; s < domain.size(); ++s)
    for (std::size_t t = s + 1; t < domain.size(); ++t) {
      auto a = domain[s].classes, b = domain[t].classes;
      if (a == b) continue;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) continue;
      const auto& cs = domain[s].classes;
      const auto& ct = domain[t].classes;
      std::vector<std::size_t> pi(cs.size());
      std::vector<bool> used(ct.size(), false);
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < ct.size(); ++j)
          if (!used[j] && ct[j] == cs[i]) {
            pi[i] = j;
            used[j] = true;
            break;
          }
      auto check = [&](const Outcome& x) {
        Outcome y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) y[pi[i]] = x[i];
        const auto ps = domain[s].joint.at(x), pt = domain[t].joint.at(y);
        if (approx_equal(ps, pt, tol)) return true;
        report.witness = ContextualityWitness{"order-dependence", ct, cs, std::nullopt,
                                              labels_of(domain[t].joint, y), ps, pt};
        return false;
      };
      for (const auto& [x, _] : domain[s].joint.weights)
        if (!check(x)) return report;
      for (const auto& [y, _] : domain[t].joint.weights) {
        Outcome x(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[pi[i]];
        if (!check(x)) return report;
      }
    }

  // Forced per-class distributions: first occurrence in canonical order.
  std::map<std::string, std::vector<std::string>> forced_by;
  for (const auto& e : domain)
    for (std::size_t i = 0; i < e.classes.size(); ++i)
      if (!report.assignment.contains(e.classes[i])) {
        report.assignment[e.classes[i]] = {e.joint.labels[i], e.joint.coordinate(i)};
        forced_by[e.classes[i]] = e.classes;
      }

  for (const auto& e : domain)
    for (std::size_t i = 0; i < e.classes.size(); ++i) {
      const auto observed = e.joint.coordinate(i);
      const auto& expected = report.assignment.at(e.classes[i]).probabilities;
      for (std::size_t a = 0; a < observed.size(); ++a)
        if (!approx_equal(observed[a], expected[a], tol)) {
          report.witness = ContextualityWitness{"marginal-mismatch", e.classes, forced_by.at(e.classes[i]), i,
                                                {e.joint.labels[i][a]}, expected[a], observed[a]};
          return report;
        }
    }

  for (const auto& e : domain) {
    const auto n = e.classes.size();
    Outcome x(n, 0);
    while (true) {
      Probability expected = Probability::exact(1);
      for (std::size_t i = 0; i < n; ++i) expected = expected * report.assignment.at(e.classes[i]).probabilities[x[i]];
      const auto observed = e.joint.at(x);
      if (!approx_equal(expected, observed, tol)) {
        report.witness =
            ContextualityWitness{"not-product", e.classes, {}, std::nullopt, labels_of(e.joint, x), expected, observed};
        return report;
      }
      std::size_t k = 0;
      while (k < n && ++x[k] == e.joint.labels[k].size()) x[k++] = 0;
      if (k == n) break;
    }
  }
  report.noncontextual = true;
  return report;
}

// -- isolation and disturbance --

IsolationReport is_isolated(const Theory& theory, const InquirySequence& seq, double tol) {
  IsolationReport report;
  report.agreement = Probability::exact(1);
  const auto joint = theory.evaluate(seq);
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (!equivalent(seq[i], seq[j])) continue;
      const auto p = joint.agreement(i, j);
      if (!approx_equal(p, Probability::exact(1), tol)) {
        report.isolated = false;
        report.witness = {i, j};
        report.agreement = p;
        return report;
      }
    }
  return report;
}

DisturbanceReport disturbance_profile(const Theory& theory, const InquirySequence& base, const Question& insert,
                                      std::size_t position, double tol, const Quotient* quotient) {
  if (position > base.size())
    throw InputError("InvalidPosition", "insertion position is past the end of the sequence",
                     {{"position", position}, {"length", base.size()}});
  DisturbanceReport r;
  r.base = base;
  r.extended = base;
  r.extended.insert(r.extended.begin() + static_cast<std::ptrdiff_t>(position), insert);

  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = 0; j < base.size(); ++j)
      if (i != j && equivalent(base[i], base[j])) {
        r.tracked.push_back(i);
        break;
      }
  if (r.tracked.empty()) {
    r.tracked.resize(base.size());
    std::iota(r.tracked.begin(), r.tracked.end(), 0);
  }
  std::vector<std::size_t> shifted;
  for (const auto i : r.tracked) shifted.push_back(i < position ? i : i + 1);

  const auto before = theory.evaluate(base);
  const auto after = theory.evaluate(r.extended);
  r.distance = total_variation(before.marginal(r.tracked), after.marginal(shifted));

  r.implied = std::all_of(r.tracked.begin(), r.tracked.end(), [&](std::size_t i) {
    return base[i].run_id != insert.run_id || implied(theory, insert.class_id, base[i].class_id, quotient);
  });
  const bool zero = approx_equal(r.distance, Probability::exact(0), tol);
  r.compliant = r.implied ? zero : !zero;

  for (std::size_t a = 0; a < r.tracked.size() && !r.agreement; ++a)
    for (std::size_t b = a + 1; b < r.tracked.size(); ++b) {
      const auto i = r.tracked[a], j = r.tracked[b];
      if (!equivalent(base[i], base[j])) continue;
      r.agreement = std::pair{before.agreement(i, j), after.agreement(shifted[a], shifted[b])};
      break;
    }
  return r;
}

// -- inconsistent triad --

TriadReport inconsistent_triad(int num_classes, int length) {
  if (num_classes < 2 || num_classes > 8 || length < 1 || length > 20)
    throw InputError("SizeBound", "triad search needs 2 ≤ classes ≤ 8 and 1 ≤ length ≤ 20",
                     {{"num_classes", num_classes}, {"length", length}});
  TriadReport r;
  r.num_classes = num_classes;
  r.length = length;
  std::vector<int> cls(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    cls[static_cast<std::size_t>(i)] = i % 2 == 0 ? 0 : 1 + (i / 2) % (num_classes - 1);
    r.sequence.emplace_back(1, static_cast<char>('A' + cls[static_cast<std::size_t>(i)]));
  }
  const auto n = static_cast<std::size_t>(length);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (cls[i] == cls[j] && std::any_of(cls.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                          cls.begin() + static_cast<std::ptrdiff_t>(j),
                                          [&](int k) { return k != cls[i]; }))
        r.constraints.emplace_back(i, j);

  // Bit k of a mask is 1 when answer k is "f".
  auto satisfies = [&](std::uint64_t mask) {
    return std::all_of(r.constraints.begin(), r.constraints.end(),
                       [&](const auto& c) { return ((mask >> c.first) & 1) != ((mask >> c.second) & 1); });
  };
  auto labels = [&](std::uint64_t mask) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back(kBinaryAnswers[(mask >> k) & 1]);
    return out;
  };

  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t count = 0, first = total;
#pragma omp parallel for reduction(+ : count) reduction(min : first)
  for (std::uint64_t m = 0; m < total; ++m)
    if (satisfies(m)) {
      ++count;
      first = std::min(first, m);
    }
  r.assignments_checked = total;
  r.consistent_assignments = count;
  if (first < total) r.consistent_example = labels(first);

  // Deterministic update rules applied to every other class on inquiry.
  const std::vector<std::pair<std::string, bool (*)(bool)>> rules{
      {"identity", [](bool v) { return v; }},
      {"negation", [](bool v) { return !v; }},
      {"constant-t", [](bool) { return true; }},
      {"constant-f", [](bool) { return false; }},
  };
  auto run_rule = [&](bool (*update)(bool), unsigned initial) {
    std::vector<bool> state(static_cast<std::size_t>(num_classes));
    for (int c = 0; c < num_classes; ++c) state[static_cast<std::size_t>(c)] = !((initial >> c) & 1);
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto c = static_cast<std::size_t>(cls[k]);
      if (!state[c]) mask |= std::uint64_t{1} << k;
      for (std::size_t d = 0; d < state.size(); ++d)
        if (d != c) state[d] = update(state[d]);
    }
    return mask;
  };
  for (const auto& [name, update] : rules) {
    TriadRule rule{name, 0};
    for (unsigned s = 0; s < (1u << num_classes); ++s)
      if (satisfies(run_rule(update, s))) ++rule.consistent_initial_states;
    r.rules.push_back(rule);
  }

  const auto flip = run_rule(rules[1].second, 0);
  r.flip_answers = labels(flip);
  for (const auto& c : r.constraints)
    if (((flip >> c.first) & 1) == ((flip >> c.second) & 1)) {
      r.violated_constraint = c;
      break;
    }
  return r;
}

}  // namespace qlogic
