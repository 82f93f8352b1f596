#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

namespace qlogic {

/// Base class of every failure raised by the toolkit.
///
/// `code()` is a stable machine-readable name (e.g. "NotALattice") and
/// `details()` carries the structured payload (offending pair, witness tuple,
/// ...). The CLI serializes both verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, nlohmann::ordered_json details = {})
      : std::runtime_error(message), code_(std::move(code)), details_(std::move(details)) {}

  const std::string& code() const noexcept { return code_; }
  const nlohmann::ordered_json& details() const noexcept { return details_; }

 private:
  std::string code_;
  nlohmann::ordered_json details_;
};

/// Malformed input: unparsable files, unknown identifiers, out-of-range
/// parameters. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  explicit InputError(const std::string& message, nlohmann::ordered_json details = {})
      : Error("InputError", message, std::move(details)) {}
  InputError(std::string code, const std::string& message, nlohmann::ordered_json details)
      : Error(std::move(code), message, std::move(details)) {}
};

/// Well-formed input that fails a structural check (NotALattice,
/// InvalidOrthoMap, PreservationFailed, ...). The CLI maps these to exit code 1.
class CheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlogic
