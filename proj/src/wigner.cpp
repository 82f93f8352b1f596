#include "qlogic/wigner.hpp"

#include <cmath>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

constexpr double kTol = 1e-9;

Mat projector(const Vec& v) { return v * v.adjoint(); }

Vec basis(int dim, int i) {
  Vec v = Vec::Zero(dim);
  v(i) = 1;
  return v;
}

Vec qubit(WignerInput in) {
  if (in == WignerInput::Eigen) return basis(2, 0);
  return (basis(2, 0) + basis(2, 1)) / std::sqrt(2.0);
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::string f_label(int f) { return f == wigner::kDelta ? wigner::kDeltaLabel : std::to_string(f); }

QuantumClass binary(const Mat& p) {
  return {kBinaryAnswers, {p, Mat::Identity(p.rows(), p.cols()) - p}};
}

}  // namespace

Eigen::MatrixXcd wigner::interaction_unitary() {
  Mat u = Mat::Identity(6, 6);
  for (int s = 0; s < 2; ++s) {
    const int ready = 3 * s + kDelta, copied = 3 * s + s;
    u(ready, ready) = u(copied, copied) = 0;
    u(ready, copied) = u(copied, ready) = 1;
  }
  return u;
}

WignerInput parse_wigner_input(std::string_view name) {
  if (name == "eigen") return WignerInput::Eigen;
  if (name == "super") return WignerInput::Super;
  throw InputError("UnknownInput", "input must be eigen or super", {{"input", std::string(name)}});
}

std::string_view wigner_input_name(WignerInput in) { return in == WignerInput::Eigen ? "eigen" : "super"; }

WignerBranch parse_wigner_branch(std::string_view name) {
  if (name == "friend_first") return WignerBranch::FriendFirst;
  if (name == "wigner_first") return WignerBranch::WignerFirst;
  throw InputError("UnknownBranch", "branch must be friend_first or wigner_first", {{"branch", std::string(name)}});
}

std::string_view wigner_branch_name(WignerBranch b) {
  return b == WignerBranch::FriendFirst ? "friend_first" : "wigner_first";
}

WignerScenario build_quantum_scenario(WignerInput input) {
  using namespace wigner;
  const Mat u = interaction_unitary();
  const Mat i2 = Mat::Identity(2, 2), i3 = Mat::Identity(3, 3);
  const Vec delta = basis(3, kDelta);

  QuantumTheory t;
  const Mat initial = projector(kron(qubit(input), delta));
  t.rho = u * initial * u.adjoint();

  QuantumClass fs{{"0", "1"}, {}}, ff{{"0", "1", kDeltaLabel}, {}}, record, permuted;
  for (int s = 0; s < 2; ++s) fs.projectors.push_back(kron(projector(basis(2, s)), i3));
  for (int f = 0; f < 3; ++f) ff.projectors.push_back(kron(i2, projector(basis(3, f))));
  for (int s = 0; s < 2; ++s)
    for (int f = 0; f < 3; ++f) {
      const Mat p = projector(basis(6, 3 * s + f));
      record.labels.push_back(std::to_string(s) + "," + f_label(f));
      record.projectors.push_back(p);
      permuted.labels.push_back(std::to_string(s) + "," + f_label(f));
      permuted.projectors.push_back(u * p * u.adjoint());
    }
  t.classes[kFinalS] = std::move(fs);
  t.classes[kFinalF] = std::move(ff);
  t.classes[kRecord] = std::move(record);
  t.classes[kRecordPermuted] = std::move(permuted);
  t.classes[kInteraction] = binary(u * projector(kron(qubit(WignerInput::Eigen), delta)) * u.adjoint());
  t.classes[kInteractionPrime] = binary(u * projector(kron(qubit(WignerInput::Super), delta)) * u.adjoint());

  return {input, initial, Theory::quantum(std::move(t)),
          input == WignerInput::Eigen ? kInteraction : kInteractionPrime};
}

BranchReport run_branch(const WignerScenario& sc, WignerBranch branch) {
  const std::string record = wigner::kRecord;
  const auto& q_int = sc.interaction_class;
  BranchReport r;
  r.branch = branch;
  r.input = sc.input;
  r.sequence = branch == WignerBranch::FriendFirst ? std::vector{record, q_int} : std::vector{q_int, record};
  const std::size_t int_at = branch == WignerBranch::FriendFirst ? 1 : 0;
  const std::size_t record_at = 1 - int_at;

  const auto joint = sc.theory.evaluate(r.sequence);
  for (std::size_t k = 0; k < r.sequence.size(); ++k) {
    const auto marginal = joint.coordinate(k);
    for (std::size_t a = 0; a < marginal.size(); ++a)
      if (marginal[a].to_double() > 0) r.transcript.push_back({r.sequence[k], joint.labels[k][a], marginal[a].to_double()});
  }
  r.interaction_true = joint.coordinate(int_at)[0].to_double();
  r.isolation_verdict = std::abs(r.interaction_true - 1) <= kTol;
  r.definite_record = branch == WignerBranch::FriendFirst || implied(sc.theory, q_int, record);

  const auto rec = joint.coordinate(record_at);
  for (std::size_t idx = 0; idx < rec.size(); ++idx)
    if (idx / 3 == idx % 3) r.record_correlation += rec[idx].to_double();

  auto repeated = r.sequence;
  repeated.push_back(r.sequence.front());
  r.reassurance = sc.theory.evaluate(repeated).agreement(0, 2).to_double();

  if (!r.isolation_verdict) r.disturbance_witness = DisturbanceWitness{q_int, r.interaction_true};
  return r;
}

FoilReport collapse_foil() {
  const std::string q = wigner::kInteractionPrime;
  TabulatedTheory t;
  t.classes[q] = kBinaryAnswers;
  JointDistribution once{{kBinaryAnswers}, {{{0}, Probability::exact(1)}}};
  // The friend's record collapses inside the box: the repeat is a fair coin.
  JointDistribution twice{{kBinaryAnswers, kBinaryAnswers},
                          {{{0, 0}, Probability::exact(1, 2)}, {{0, 1}, Probability::exact(1, 2)}}};
  t.table[{q}] = std::move(once);
  t.table[{q, q}] = std::move(twice);
  auto theory = Theory::tabulated(std::move(t));

  const bool claims = theory.evaluate(std::vector{q}).at({0}) == Probability::exact(1);
  const auto iso = is_isolated(theory, inquiry({q, q}));
  return {theory, claims, iso.isolated, iso.agreement.to_double(), claims && !iso.isolated};
}

IncompatibilityReport incompatibility_report(const WignerScenario& sc) {
  auto ff = run_branch(sc, WignerBranch::FriendFirst);
  auto wf = run_branch(sc, WignerBranch::WignerFirst);
  const bool conflict_free = (ff.definite_record && ff.isolation_verdict) || (wf.definite_record && wf.isolation_verdict);
  return {std::move(ff), std::move(wf), conflict_free, collapse_foil()};
}

}  // namespace qlogic
