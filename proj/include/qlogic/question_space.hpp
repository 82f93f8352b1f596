#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlogic/lattice.hpp"

namespace qlogic {

/// Class ids reserved for the tautological and the absurd question.
inline constexpr const char* kTautology = "Q_t";
inline constexpr const char* kAbsurdity = "Q_a";

/// A context: one time slot of one experimental run.
struct ContextKey {
  std::string run;
  int slot = 0;

  auto operator<=>(const ContextKey&) const = default;
  std::string str() const { return run + ":" + std::to_string(slot); }
};

/// A question: an element of one context's sub-lattice, tagged with its
/// ~-class (class_id) and its ~^s-class (run_id).
struct Question {
  std::string class_id;
  std::string run_id;
  int slot = 0;
  std::string element;

  ContextKey context() const { return {run_id, slot}; }
  friend bool operator==(const Question&, const Question&) = default;
};

/// Q1 ~ Q2: same equivalence class.
inline bool similar(const Question& a, const Question& b) { return a.class_id == b.class_id; }
/// Q1 ~^s Q2: same run (identical system).
inline bool same_system(const Question& a, const Question& b) { return a.run_id == b.run_id; }
/// Q1 ≡ Q2: both.
inline bool equivalent(const Question& a, const Question& b) { return similar(a, b) && same_system(a, b); }

struct SubLattice {
  Lattice lattice;
  std::optional<OrthoMap> ortho;
  /// class id per element (indexed by Element).
  std::vector<std::string> classes;
};

/// Per-context ortholattices interlaced by the ~ relation.
class QuestionSpace {
 public:
  struct ContextInput {
    Lattice lattice;
    std::optional<OrthoMap> ortho;
    /// element id → class id. Unlisted elements get their own id as class;
    /// top and bottom always get Q_t and Q_a.
    std::map<std::string, std::string> classes;
  };

  QuestionSpace() = default;
  /// Throws InputError("InvalidSpace") when top/bottom are assigned a class
  /// other than Q_t/Q_a, a non-top/bottom element claims Q_t/Q_a, or a
  /// class map names an unknown element.
  explicit QuestionSpace(std::map<ContextKey, ContextInput> contexts);

  const std::map<ContextKey, SubLattice>& contexts() const { return contexts_; }
  const SubLattice& context(const ContextKey& key) const;
  std::vector<int> slots(const std::string& run) const;
  std::vector<std::string> runs() const;

  /// The question at `element` of context `key`.
  Question question(const ContextKey& key, const std::string& element) const;
  /// The element of `key` carrying `class_id`, if exactly one does.
  std::optional<Element> element_of_class(const ContextKey& key, const std::string& class_id) const;
  /// All class ids, sorted.
  std::vector<std::string> class_ids() const;

 private:
  std::map<ContextKey, SubLattice> contexts_;
};

/// Q1 ⪯ Q2 within one context. Throws InputError("DifferentContext").
bool implies(const QuestionSpace& space, const Question& q1, const Question& q2);

/// The question at element(q)⊥. Throws InputError("NoOrthoMap").
Question negate(const QuestionSpace& space, const Question& q);

struct OrthogonalityViolation {
  ContextKey context;
  std::string first, second, class_id;
  /// Whether the pair meets the weaker condition Q1 ∧ Q2 = 0, Q1 ∨ Q2 = 1.
  bool complementary = false;
};

struct OrthogonalityReport {
  std::vector<OrthogonalityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Flags every pair of distinct elements of one context sharing a class.
OrthogonalityReport check_sublattice_orthogonality(const QuestionSpace& space);

struct PreservationFailure {
  ContextKey from, to;
  std::string q1, q1_prime, q2;
  enum class Kind { Missing, Ambiguous } kind = Kind::Missing;
  std::vector<std::string> candidates;
};

struct PreservationReport {
  std::vector<PreservationFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Q1 ~ Q1' and Q1 ⪯ Q2 ⇒ ∃! Q2': Q1' ⪯ Q2' and Q2 ~ Q2', for every ordered
/// pair of contexts. Context pairs are scanned in parallel.
PreservationReport check_structure_preservation(const QuestionSpace& space);
/// Serial reference implementation of the same scan.
PreservationReport check_structure_preservation_serial(const QuestionSpace& space);

/// The lattice on class ids carried over from the contexts.
struct Quotient {
  Lattice lattice;
  std::optional<OrthoMap> ortho;
  ContextKey representative;
};

/// Lifts the lattice structure to the ~-classes of all contexts (or only
/// those of `run`). Throws CheckError("PreservationFailed") when structure
/// preservation fails or the contexts are not class-isomorphic.
Quotient lift_quotient(const QuestionSpace& space, const std::optional<std::string>& run = std::nullopt);

struct ClassJoinFlag {
  ContextKey context;
  std::string first, second;
  std::string merged_class;  // representative of the closure class
  bool introduced_by_merge = true;
};

struct ClassJoinReport {
  /// Closure classes (sorted members) that absorb more than one class.
  std::vector<std::vector<std::string>> merged_classes;
  std::vector<ClassJoinFlag> flags;
  bool ok() const { return flags.empty(); }
};

/// Diagnoses what joining the given classes would do; never mutates.
ClassJoinReport detect_class_joins(const QuestionSpace& space,
                                   const std::vector<std::pair<std::string, std::string>>& merges);

/// Maximal refinements of `run`: chains Q_1 ≻ Q_2 ≻ ... of classes from Q_t
/// down to an atom of the run's quotient, bottom excluded. Q_i is placed in
/// the i-th slot of the run, or the last slot once the slots run out.
std::vector<std::vector<Question>> enumerate_refinements(const QuestionSpace& space, const std::string& run);

/// Maximal refinement length of `run`. Throws CheckError("NotAtomic") when
/// the run's quotient is not atomic.
std::size_t resolution_restriction(const QuestionSpace& space, const std::string& run);

}  // namespace qlogic
