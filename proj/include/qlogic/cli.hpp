#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qlogic::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one `qll` invocation. `args` excludes the program name.
///
/// Reports go to `out` (or --out) as JSON with a leading "schema": "v1";
/// diagnostics and the run manifest go to `err`. Returns 0 on success,
/// 1 when a check finds violations, 2 on input or usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace qlogic::cli
