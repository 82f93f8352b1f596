#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "qlogic/lattice.hpp"

namespace qlogic {

/// Standard fixture lattices.
///
///   boolean(n)   power set of n atoms (2^n elements), n ≤ 6
///   chain(n)     n-element chain, 1 ≤ n ≤ 32
///   mo(n)        0, 1 and n complementary atom pairs (2n + 2 elements), 1 ≤ n ≤ 8
///   benzene      O6: 0 < a < b < 1, 0 < a' < b' < 1
///   diamond_m3   M3: three incomparable atoms
///   pentagon_n5  N5: 0 < a < b < 1, 0 < c < 1
enum class Family { Boolean, Chain, MO, Benzene, DiamondM3, PentagonN5 };

struct FamilyInstance {
  PosetSpec spec;
  /// Canonical orthocomplementation (id → id), where one exists.
  std::optional<std::map<std::string, std::string>> ortho;
};

/// Throws InputError("SizeBound") when n is outside the family's bounds.
FamilyInstance generate_family(Family family, unsigned n = 0);

/// Parses "boolean", "chain", "mo", "benzene", "diamond_m3", "pentagon_n5".
Family parse_family(std::string_view name);
std::string_view family_name(Family family);
/// Whether the family takes a size parameter.
bool family_is_sized(Family family);

}  // namespace qlogic
