#include "qlogic/families.hpp"

#include <bit>
#include <string>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

void require(bool ok, Family f, unsigned n, unsigned lo, unsigned hi) {
  if (!ok)
    throw InputError("SizeBound",
                     std::string(family_name(f)) + "(" + std::to_string(n) + ") is outside [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]",
                     {{"family", std::string(family_name(f))}, {"n", n}, {"min", lo}, {"max", hi}});
}

// Subset mask → id: "0" for ∅, "1" for the full set, else the atom letters.
std::string subset_id(unsigned mask, unsigned n) {
  if (mask == 0) return "0";
  if (mask == (1u << n) - 1) return "1";
  std::string id;
  for (unsigned i = 0; i < n; ++i)
    if (mask >> i & 1) id.push_back(static_cast<char>('a' + i));
  return id;
}

FamilyInstance boolean(unsigned n) {
  FamilyInstance out;
  const unsigned size = 1u << n;
  // Ascending by cardinality, then by mask, so atoms precede coatoms.
  for (unsigned card = 0; card <= n; ++card)
    for (unsigned mask = 0; mask < size; ++mask)
      if (static_cast<unsigned>(std::popcount(mask)) == card) out.spec.elements.push_back(subset_id(mask, n));
  std::map<std::string, std::string> ortho;
  for (unsigned mask = 0; mask < size; ++mask) {
    ortho[subset_id(mask, n)] = subset_id(~mask & (size - 1), n);
    for (unsigned i = 0; i < n; ++i)
      if (!(mask >> i & 1)) out.spec.covers.emplace_back(subset_id(mask, n), subset_id(mask | 1u << i, n));
  }
  out.ortho = std::move(ortho);
  return out;
}

FamilyInstance chain(unsigned n) {
  FamilyInstance out;
  out.spec.elements.push_back("0");
  if (n == 1) {
    out.ortho = std::map<std::string, std::string>{{"0", "0"}};
    return out;
  }
  for (unsigned i = 1; i + 1 < n; ++i) out.spec.elements.push_back("c" + std::to_string(i));
  out.spec.elements.push_back("1");
  for (std::size_t i = 0; i + 1 < out.spec.elements.size(); ++i)
    out.spec.covers.emplace_back(out.spec.elements[i], out.spec.elements[i + 1]);
  if (n == 2) out.ortho = std::map<std::string, std::string>{{"0", "1"}, {"1", "0"}};
  return out;
}

FamilyInstance mo(unsigned n) {
  FamilyInstance out;
  std::map<std::string, std::string> ortho{{"0", "1"}, {"1", "0"}};
  out.spec.elements.push_back("0");
  for (unsigned i = 0; i < n; ++i) {
    const std::string a(1, static_cast<char>('a' + i));
    const std::string a_perp = a + "'";
    out.spec.elements.push_back(a);
    out.spec.elements.push_back(a_perp);
    ortho[a] = a_perp;
    ortho[a_perp] = a;
  }
  out.spec.elements.push_back("1");
  for (std::size_t i = 1; i + 1 < out.spec.elements.size(); ++i) {
    out.spec.covers.emplace_back("0", out.spec.elements[i]);
    out.spec.covers.emplace_back(out.spec.elements[i], "1");
  }
  out.ortho = std::move(ortho);
  return out;
}

}  // namespace

FamilyInstance generate_family(Family family, unsigned n) {
  switch (family) {
    case Family::Boolean:
      require(n <= 6, family, n, 0, 6);
      return boolean(n);
    case Family::Chain:
      require(n >= 1 && n <= 32, family, n, 1, 32);
      return chain(n);
    case Family::MO:
      require(n >= 1 && n <= 8, family, n, 1, 8);
      return mo(n);
    case Family::Benzene: {
      FamilyInstance out;
      out.spec.elements = {"0", "a", "b", "a'", "b'", "1"};
      out.spec.covers = {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "a'"}, {"a'", "b'"}, {"b'", "1"}};
      out.ortho = std::map<std::string, std::string>{{"0", "1"},  {"1", "0"},  {"a", "b'"},
                                                     {"b'", "a"}, {"b", "a'"}, {"a'", "b"}};
      return out;
    }
    case Family::DiamondM3: {
      FamilyInstance out;
      out.spec.elements = {"0", "a", "b", "c", "1"};
      out.spec.covers = {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}};
      return out;
    }
    case Family::PentagonN5: {
      FamilyInstance out;
      out.spec.elements = {"0", "a", "b", "c", "1"};
      out.spec.covers = {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}};
      return out;
    }
  }
  throw InputError("unknown family");
}

Family parse_family(std::string_view name) {
  if (name == "boolean") return Family::Boolean;
  if (name == "chain") return Family::Chain;
  if (name == "mo") return Family::MO;
  if (name == "benzene") return Family::Benzene;
  if (name == "diamond_m3") return Family::DiamondM3;
  if (name == "pentagon_n5") return Family::PentagonN5;
  throw InputError("UnknownFamily", "unknown lattice family '" + std::string(name) + "'",
                   {{"family", std::string(name)}});
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::Boolean: return "boolean";
    case Family::Chain: return "chain";
    case Family::MO: return "mo";
    case Family::Benzene: return "benzene";
    case Family::DiamondM3: return "diamond_m3";
    case Family::PentagonN5: return "pentagon_n5";
  }
  return "?";
}

bool family_is_sized(Family family) {
  return family == Family::Boolean || family == Family::Chain || family == Family::MO;
}

}  // namespace qlogic
