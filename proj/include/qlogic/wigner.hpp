#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qlogic/theory.hpp"

namespace qlogic {

/// The joint system S ⊗ F: S a qubit with answers {0, 1}, F a qutrit with
/// answers {0, 1, Δ} where Δ is the ready state. Basis index = 3·s + f.
namespace wigner {

inline constexpr int kDelta = 2;
inline constexpr const char* kDeltaLabel = "Δ";

/// Class ids of the scenario's quantum theory.
inline constexpr const char* kFinalS = "fS";
inline constexpr const char* kFinalF = "fF";
/// Joint record (Q_fS, Q_fF), answers "s,f".
inline constexpr const char* kRecord = "fSfF";
/// Joint record (Q_fS, Q_fF′), F's answers relabelled by the interaction.
inline constexpr const char* kRecordPermuted = "fSfF'";
/// Q_int ≡ (Q_iS, Q_iF): was the initial pair (0, Δ)?
inline constexpr const char* kInteraction = "int";
/// Q_int′ ≡ (Q_iS′, Q_iF): was the initial pair (+, Δ)?
inline constexpr const char* kInteractionPrime = "int'";

/// The controlled-copy interaction |s, Δ⟩ ↔ |s, s⟩ (a basis permutation).
Eigen::MatrixXcd interaction_unitary();

}  // namespace wigner

enum class WignerInput {
  /// S prepared in the Q_iS eigenstate |0⟩.
  Eigen,
  /// S prepared in |+⟩, an eigenstate of Q_iS′ ≁ Q_iS.
  Super,
};

enum class WignerBranch { FriendFirst, WignerFirst };

WignerInput parse_wigner_input(std::string_view name);
std::string_view wigner_input_name(WignerInput in);
WignerBranch parse_wigner_branch(std::string_view name);
std::string_view wigner_branch_name(WignerBranch b);

struct WignerScenario {
  WignerInput input = WignerInput::Super;
  /// Pre-interaction state |ψ_S⟩ ⊗ |Δ⟩.
  Eigen::MatrixXcd initial_state;
  /// The quantum theory on the post-interaction state.
  Theory theory;
  /// The interaction class equivalent to the prepared initial pair:
  /// "int" for the eigenstate input, "int'" for the superposition.
  std::string interaction_class;
};

WignerScenario build_quantum_scenario(WignerInput input = WignerInput::Super);

struct TranscriptEntry {
  std::string question;
  std::string answer;
  double probability = 0;
};

struct DisturbanceWitness {
  std::string question;
  /// Probability that the inquiry still returns the prepared answer "t".
  double agreement = 0;
};

struct BranchReport {
  WignerBranch branch = WignerBranch::FriendFirst;
  WignerInput input = WignerInput::Super;
  std::vector<std::string> sequence;
  /// Every outcome of every inquiry with its marginal probability.
  std::vector<TranscriptEntry> transcript;
  /// P(interaction class = t) in this branch.
  double interaction_true = 0;
  /// Joint system still answers the interaction class as prepared.
  bool isolation_verdict = false;
  /// The friend's record is a definite answer compatible with the
  /// interaction inquiry (it was inquired first, or the two commute).
  bool definite_record = false;
  /// P(A_fS = A_fF) from the record inquiry. Reported, not asserted.
  double record_correlation = 0;
  /// P(first inquiry repeated after the second gives the same answer).
  double reassurance = 0;
  std::optional<DisturbanceWitness> disturbance_witness;
};

BranchReport run_branch(const WignerScenario& scenario, WignerBranch branch);

struct FoilReport {
  /// Tabulated collapse theory: int' answers t, then a spontaneous collapse
  /// of the friend's record randomizes the repeat.
  Theory theory;
  bool claims_isolation = false;
  bool isolated = false;
  double agreement = 0;
  /// No non-equivalent inquiry separates the pair, yet the answer changed.
  bool violates_interaction_assumption = false;
};

FoilReport collapse_foil();

struct IncompatibilityReport {
  BranchReport friend_first, wigner_first;
  /// Some branch has both a definite record and an isolation verdict.
  bool conflict_free = false;
  FoilReport foil;
};

IncompatibilityReport incompatibility_report(const WignerScenario& scenario);

}  // namespace qlogic
