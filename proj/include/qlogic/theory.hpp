#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qlogic/probability.hpp"
#include "qlogic/question_space.hpp"

namespace qlogic {

/// Questions in the order they are inquired. Theories only look at the
/// class and run of each question.
using InquirySequence = std::vector<Question>;

/// A sequence of classes inquired in one run, with slots 0, 1, 2, ...
InquirySequence inquiry(const std::vector<std::string>& classes, const std::string& run = "r");

std::vector<std::string> class_sequence(const InquirySequence& seq);

/// Answer indices, one per coordinate.
using Outcome = std::vector<std::uint8_t>;

struct JointDistribution {
  /// Answer labels per coordinate.
  std::vector<std::vector<std::string>> labels;
  /// Outcome → weight. Absent outcomes have weight 0.
  std::map<Outcome, Probability> weights;

  std::size_t dimension() const { return labels.size(); }
  Probability at(const Outcome& x) const;
  Probability total() const;
  bool is_exact() const;
  /// Marginal over the listed coordinates, in the listed order.
  JointDistribution marginal(const std::vector<std::size_t>& keep) const;
  /// Marginal distribution of coordinate i, indexed by answer.
  std::vector<Probability> coordinate(std::size_t i) const;
  /// P(label of a_i == label of a_j).
  Probability agreement(std::size_t i, std::size_t j) const;
};

/// ½ Σ |p(x) − q(x)| over the union of supports. Labels must match.
Probability total_variation(const JointDistribution& p, const JointDistribution& q);

inline const std::vector<std::string> kBinaryAnswers{"t", "f"};

struct ClassDistribution {
  std::vector<std::string> labels;
  std::vector<Probability> probabilities;
};

/// Explicit finite table keyed by class sequences. A sequence missing from
/// the table is answered by marginalizing the shortest listed extension.
struct TabulatedTheory {
  std::map<std::string, std::vector<std::string>> classes;
  std::map<std::vector<std::string>, JointDistribution> table;
};

/// Every question answered independently from its class distribution.
struct ProductTheory {
  std::map<std::string, ClassDistribution> classes;
};

/// Binary deterministic theory: each class holds a current answer
/// (true = "t"); inquiring c returns it and flips the stored answer of every
/// other class d unless (c, d) is listed as implied.
struct FlipTheory {
  std::map<std::string, bool> initial;
  std::set<std::pair<std::string, std::string>> implied;
};

struct QuantumClass {
  std::vector<std::string> labels;
  std::vector<Eigen::MatrixXcd> projectors;
};

/// Density matrix plus one projective decomposition per class, evaluated by
/// the sequential Lüders rule.
struct QuantumTheory {
  Eigen::MatrixXcd rho;
  std::map<std::string, QuantumClass> classes;
};

/// A map from inquiry sequences to joint answer distributions.
///
/// The constructors validate their payload (InputError) and add the classes
/// Q_t and Q_a where the variant allows it. Questions from different runs
/// concern different systems and are evaluated independently.
class Theory {
 public:
  using Variant = std::variant<TabulatedTheory, ProductTheory, FlipTheory, QuantumTheory>;

  static Theory tabulated(TabulatedTheory t);
  static Theory product(ProductTheory t);
  static Theory flip(FlipTheory t);
  static Theory quantum(QuantumTheory t, double tolerance = 1e-9);

  std::string kind() const;
  const Variant& variant() const { return v_; }
  std::vector<std::string> classes() const;
  bool has_class(const std::string& c) const;
  /// Throws InputError("UnknownClass").
  const std::vector<std::string>& labels(const std::string& c) const;

  /// Throws InputError("UnknownClass"), InputError("UnknownSequence") for a
  /// tabulated theory without a matching entry, and
  /// InputError("InvalidSequence") when slots decrease within a run.
  JointDistribution evaluate(const InquirySequence& seq) const;
  /// Evaluation of a single run's class sequence.
  JointDistribution evaluate(const std::vector<std::string>& classes) const;

 private:
  explicit Theory(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Whether inquiring `c` leaves the answer to `d` undisturbed: c ≡ d, either
/// is Q_t/Q_a, projector commutation (quantum), a listed implied pair
/// (flip), or c, d comparable with d or d⊥ in `quotient`.
bool implied(const Theory& theory, const std::string& c, const std::string& d, const Quotient* quotient = nullptr);

struct ContextualityWitness {
  /// "order-dependence", "marginal-mismatch" or "not-product".
  std::string reason;
  std::vector<std::string> sequence;
  std::vector<std::string> reference_sequence;
  std::optional<std::size_t> coordinate;
  std::vector<std::string> outcome;
  Probability expected, observed;
};

struct ContextualityReport {
  bool noncontextual = false;
  /// The forced per-class distributions (the factorization when it exists).
  std::map<std::string, ClassDistribution> assignment;
  std::optional<ContextualityWitness> witness;
};

/// Decides whether independent per-class distributions reproduce every joint
/// of `domain` within `tolerance` (exactly for exact weights).
///
/// The domain is put in canonical order first, so the decision and witness
/// do not depend on the order it is listed in. Checks: order invariance
/// between permuted domain sequences, then marginals against the forced
/// per-class distributions (first occurrence), then the product form.
ContextualityReport is_noncontextual(const Theory& theory, const std::vector<InquirySequence>& domain,
                                     double tolerance = 1e-9);

struct IsolationReport {
  bool isolated = true;
  /// 0-based coordinates of the first ≡-pair that disagrees.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  Probability agreement;
};

/// True iff every ≡-pair i < j of `seq` has P(a_i = a_j) = 1 within tolerance.
IsolationReport is_isolated(const Theory& theory, const InquirySequence& seq, double tolerance = 1e-9);

struct DisturbanceReport {
  InquirySequence base, extended;
  /// Base coordinates compared before and after the insertion.
  std::vector<std::size_t> tracked;
  Probability distance;
  /// Whether the inserted class is implied by or equivalent to every tracked class.
  bool implied = false;
  /// distance = 0 for implied inserts, > 0 otherwise.
  bool compliant = false;
  /// Agreement of the first tracked ≡-pair, before and after.
  std::optional<std::pair<Probability, Probability>> agreement;
};

/// Total-variation distance between the joint of the base's repeated-class
/// coordinates (all coordinates if none repeat) before and after inserting
/// `insert` at `position`. Throws InputError("InvalidPosition").
DisturbanceReport disturbance_profile(const Theory& theory, const InquirySequence& base, const Question& insert,
                                      std::size_t position, double tolerance = 1e-9,
                                      const Quotient* quotient = nullptr);

struct TriadRule {
  std::string name;
  /// Initial states (out of 2^num_classes) whose answers meet every constraint.
  std::size_t consistent_initial_states = 0;
};

struct TriadReport {
  int num_classes = 0, length = 0;
  std::vector<std::string> sequence;
  /// Same-class pairs (0-based) separated by a non-equivalent inquiry; their
  /// answers must differ.
  std::vector<std::pair<std::size_t, std::size_t>> constraints;
  std::uint64_t assignments_checked = 0, consistent_assignments = 0;
  std::optional<std::vector<std::string>> consistent_example;
  std::vector<TriadRule> rules;
  /// Answers of the flip theory started with every class at "t".
  std::vector<std::string> flip_answers;
  /// First constraint the flip answers violate.
  std::optional<std::pair<std::size_t, std::size_t>> violated_constraint;
  bool contradiction() const { return consistent_assignments == 0; }
};

/// Exhaustive check of binary deterministic answers over the alternating
/// sequence A, B, A, C, ... (class A at even positions) against the
/// interaction assumption. Throws InputError("SizeBound") unless
/// 2 ≤ num_classes ≤ 8 and 1 ≤ length ≤ 20.
TriadReport inconsistent_triad(int num_classes, int length);

}  // namespace qlogic
