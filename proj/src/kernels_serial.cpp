#include "qlogic/kernels.hpp"

namespace qlogic::kernels::serial {

void transitive_closure(std::size_t n, std::vector<std::uint8_t>& rel) {
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rel[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) rel[i * n + j] |= rel[k * n + j];
    }
  }
}

std::optional<std::array<Element, 3>> first_distributivity_violation(const TableView& t) {
  const auto n = static_cast<Element>(t.n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c)
        if (t.m(a, t.j(b, c)) != t.j(t.m(a, b), t.m(a, c))) return std::array{a, b, c};
  return std::nullopt;
}

std::optional<std::array<Element, 2>> first_orthomodular_violation(const TableView& t,
                                                                   std::span<const Element> ortho) {
  const auto n = static_cast<Element>(t.n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (t.le(a, b) && t.j(a, t.m(ortho[a], b)) != b) return std::array{a, b};
  return std::nullopt;
}

namespace {

constexpr const char* kPairLaws[] = {"commutativity-join", "commutativity-meet",
                                     "idempotence-join",   "idempotence-meet",
                                     "absorption-join",    "absorption-meet"};

}  // namespace

std::optional<LawViolation> first_lattice_law_violation(const TableView& t) {
  const auto n = static_cast<Element>(t.n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const bool ok[] = {t.j(a, b) == t.j(b, a), t.m(a, b) == t.m(b, a), t.j(a, a) == a,
                         t.m(a, a) == a,         t.j(a, t.m(a, b)) == a, t.m(a, t.j(a, b)) == a};
      for (std::size_t law = 0; law < std::size(ok); ++law)
        if (!ok[law]) return LawViolation{kPairLaws[law], {a, b}};
    }
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      for (Element c = 0; c < n; ++c) {
        if (t.j(a, t.j(b, c)) != t.j(t.j(a, b), c)) return LawViolation{"associativity-join", {a, b, c}};
        if (t.m(a, t.m(b, c)) != t.m(t.m(a, b), c)) return LawViolation{"associativity-meet", {a, b, c}};
      }
  return std::nullopt;
}

}  // namespace qlogic::kernels::serial
