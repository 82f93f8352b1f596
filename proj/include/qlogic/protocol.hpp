#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlogic/theory.hpp"

namespace qlogic {

enum class EveStrategy {
  None,
  /// Eve picks a class uniformly.
  InterceptResendUniform,
  /// Eve always asks `eve_class`.
  InterceptResendFixed,
  /// Eve asks Alice's class: the case where she can guess an equivalent question.
  InterceptResendKnown,
};

EveStrategy parse_eve_strategy(std::string_view name);
std::string_view eve_strategy_name(EveStrategy s);

struct ProtocolConfig {
  std::uint64_t rounds = 10000;
  std::vector<std::string> classes;
  EveStrategy eve = EveStrategy::None;
  std::string eve_class;
  double eve_rate = 0;
  double sample_fraction = 0.5;
  double abort_threshold = 0.10;
  std::uint64_t seed = 0;
};

struct RoundRecord {
  std::uint64_t round = 0;
  std::uint32_t alice_class = 0, alice_answer = 0;
  bool eve_intercepted = false;
  std::optional<std::uint32_t> eve_class, eve_answer;
  std::uint32_t bob_class = 0, bob_answer = 0;
  bool sifted = false, sampled = false, error = false;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct ProtocolStats {
  std::uint64_t rounds = 0, sifted_count = 0, sampled_count = 0, sampled_errors = 0;
  /// Error rate on the sacrificed sample; drives detection.
  double qber = 0;
  bool detected = false;
  /// Sifted rounds in which Eve asked Alice's class.
  std::uint64_t eve_information_rounds = 0;
  /// Error rate over every sifted round (known to the simulator only).
  std::uint64_t sifted_errors = 0;
  double sifted_qber = 0;
};

struct ProtocolResult {
  ProtocolStats stats;
  std::vector<RoundRecord> records;
};

/// Simulates `config.rounds` rounds, each a fresh run inquired in the order
/// Alice, Eve (optional), Bob. Rounds are drawn from per-round counter
/// streams, so the parallel and serial paths agree bit-for-bit.
///
/// Throws InputError for an invalid config, InputError("UnknownClass") and
/// InputError("ImpliedClasses") when two protocol classes are implied.
ProtocolResult run_protocol(const Theory& theory, const ProtocolConfig& config, const Quotient* quotient = nullptr);
ProtocolResult run_protocol_serial(const Theory& theory, const ProtocolConfig& config,
                                   const Quotient* quotient = nullptr);

struct DetectionRow {
  double rate = 0;
  double mean_qber = 0, mean_sifted_qber = 0;
  /// Fraction of repetitions with qber above the threshold.
  double detection_probability = 0;
  /// Standard error of mean_qber across repetitions.
  double qber_stderr = 0;
};

struct DetectionCurve {
  std::vector<DetectionRow> rows;
  /// mean_qber nondecreasing in rate, up to three combined standard errors.
  bool monotone = true;
};

/// Seed of repetition `rep` at rate index `rate_index`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t rate_index, std::uint64_t rep);

/// Throws InputError("InvalidRate") for rates outside [0, 1].
DetectionCurve detection_curve(const Theory& theory, const ProtocolConfig& base, const std::vector<double>& rates,
                               unsigned repetitions, const Quotient* quotient = nullptr);

/// The flip theory used by flip_model_protocol: classes all start at "t",
/// no implied pairs.
Theory flip_protocol_theory(const std::vector<std::string>& classes);

/// run_protocol over flip_protocol_theory(config.classes); classes default to {A, B}.
ProtocolResult flip_model_protocol(ProtocolConfig config);

}  // namespace qlogic
