#pragma once

// Exhaustive law scans over dense join/meet/order tables.
//
// Every scan exists twice: `serial::` is the reference implementation kept
// for testing, `parallel::` partitions the outer loop across OpenMP threads.
// Both return the lexicographically first violating tuple, so their results
// are identical regardless of thread count.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qlogic {

/// Index of a lattice element; indices follow the input element order.
using Element = std::uint32_t;

/// A failed law together with the first tuple that violates it.
struct LawViolation {
  std::string law;
  std::vector<Element> witness;

  friend bool operator==(const LawViolation&, const LawViolation&) = default;
};

namespace kernels {

/// Row-major n×n views of a lattice's tables.
struct TableView {
  std::size_t n = 0;
  std::span<const std::uint8_t> leq;
  std::span<const Element> join;
  std::span<const Element> meet;

  bool le(Element a, Element b) const { return leq[a * n + b] != 0; }
  Element j(Element a, Element b) const { return join[a * n + b]; }
  Element m(Element a, Element b) const { return meet[a * n + b]; }
};

namespace serial {

/// Reflexive-transitive closure of `rel` (n×n, row-major) in place.
void transitive_closure(std::size_t n, std::vector<std::uint8_t>& rel);

/// a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c) over all triples.
std::optional<std::array<Element, 3>> first_distributivity_violation(const TableView& t);

/// a ≤ b ⇒ a ∨ (a⊥ ∧ b) = b over all ordered pairs.
std::optional<std::array<Element, 2>> first_orthomodular_violation(const TableView& t,
                                                                   std::span<const Element> ortho);

/// Commutativity, idempotence and absorption over pairs, then associativity
/// of both operations over triples.
std::optional<LawViolation> first_lattice_law_violation(const TableView& t);

}  // namespace serial

namespace parallel {

void transitive_closure(std::size_t n, std::vector<std::uint8_t>& rel);
std::optional<std::array<Element, 3>> first_distributivity_violation(const TableView& t);
std::optional<std::array<Element, 2>> first_orthomodular_violation(const TableView& t,
                                                                   std::span<const Element> ortho);
std::optional<LawViolation> first_lattice_law_violation(const TableView& t);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels will use.
int thread_count();

}  // namespace kernels
}  // namespace qlogic
