#include <atomic>
#include <cstdint>
#include <limits>

#include <omp.h>

#include "qlogic/kernels.hpp"

namespace qlogic::kernels {

int thread_count() { return omp_get_max_threads(); }

namespace parallel {

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

// Relaxed running minimum used to skip outer rows that cannot beat the best
// witness found so far; the final answer comes from the OpenMP min reduction.
class MinHint {
 public:
  bool beaten_by(std::uint64_t key) const { return key > value_.load(std::memory_order_relaxed); }
  void offer(std::uint64_t key) {
    auto cur = value_.load(std::memory_order_relaxed);
    while (key < cur && !value_.compare_exchange_weak(cur, key, std::memory_order_relaxed)) {
    }
  }

 private:
  std::atomic<std::uint64_t> value_{kNone};
};

}  // namespace

void transitive_closure(std::size_t n, std::vector<std::uint8_t>& rel) {
  for (std::size_t i = 0; i < n; ++i) rel[i * n + i] = 1;
  const auto rows = static_cast<std::int64_t>(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Row k is not modified during step k (rel[k][k] is already set).
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
      const auto row = static_cast<std::size_t>(i) * n;
      if (!rel[row + k]) continue;
      for (std::size_t j = 0; j < n; ++j) rel[row + j] |= rel[k * n + j];
    }
  }
}

std::optional<std::array<Element, 3>> first_distributivity_violation(const TableView& t) {
  const auto n = static_cast<std::uint64_t>(t.n);
  std::uint64_t best = kNone;
  MinHint hint;
#pragma omp parallel for schedule(dynamic, 1) reduction(min : best)
  for (std::int64_t ai = 0; ai < static_cast<std::int64_t>(n); ++ai) {
    const auto a = static_cast<Element>(ai);
    if (hint.beaten_by(static_cast<std::uint64_t>(a) * n * n)) continue;
    bool found = false;
    for (Element b = 0; b < n && !found; ++b)
      for (Element c = 0; c < n; ++c)
        if (t.m(a, t.j(b, c)) != t.j(t.m(a, b), t.m(a, c))) {
          const auto key = (static_cast<std::uint64_t>(a) * n + b) * n + c;
          best = std::min(best, key);
          hint.offer(key);
          found = true;
          break;
        }
  }
  if (best == kNone) return std::nullopt;
  return std::array{static_cast<Element>(best / (n * n)), static_cast<Element>(best / n % n),
                    static_cast<Element>(best % n)};
}

std::optional<std::array<Element, 2>> first_orthomodular_violation(const TableView& t,
                                                                   std::span<const Element> ortho) {
  const auto n = static_cast<std::uint64_t>(t.n);
  std::uint64_t best = kNone;
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::int64_t ai = 0; ai < static_cast<std::int64_t>(n); ++ai) {
    const auto a = static_cast<Element>(ai);
    for (Element b = 0; b < n; ++b)
      if (t.le(a, b) && t.j(a, t.m(ortho[a], b)) != b) {
        best = std::min(best, static_cast<std::uint64_t>(a) * n + b);
        break;
      }
  }
  if (best == kNone) return std::nullopt;
  return std::array{static_cast<Element>(best / n), static_cast<Element>(best % n)};
}

namespace {

constexpr const char* kPairLaws[] = {"commutativity-join", "commutativity-meet",
                                     "idempotence-join",   "idempotence-meet",
                                     "absorption-join",    "absorption-meet"};
constexpr std::uint64_t kPairLawCount = std::size(kPairLaws);

}  // namespace

std::optional<LawViolation> first_lattice_law_violation(const TableView& t) {
  const auto n = static_cast<std::uint64_t>(t.n);
  const auto rows = static_cast<std::int64_t>(n);

  std::uint64_t best_pair = kNone;
#pragma omp parallel for schedule(static) reduction(min : best_pair)
  for (std::int64_t ai = 0; ai < rows; ++ai) {
    const auto a = static_cast<Element>(ai);
    for (Element b = 0; b < n; ++b) {
      const bool ok[] = {t.j(a, b) == t.j(b, a), t.m(a, b) == t.m(b, a), t.j(a, a) == a,
                         t.m(a, a) == a,         t.j(a, t.m(a, b)) == a, t.m(a, t.j(a, b)) == a};
      std::uint64_t law = 0;
      while (law < kPairLawCount && ok[law]) ++law;
      if (law < kPairLawCount) {
        best_pair = std::min(best_pair, (static_cast<std::uint64_t>(a) * n + b) * kPairLawCount + law);
        break;
      }
    }
  }
  if (best_pair != kNone) {
    const auto law = best_pair % kPairLawCount;
    const auto pair = best_pair / kPairLawCount;
    return LawViolation{kPairLaws[law], {static_cast<Element>(pair / n), static_cast<Element>(pair % n)}};
  }

  std::uint64_t best_triple = kNone;
#pragma omp parallel for schedule(static) reduction(min : best_triple)
  for (std::int64_t ai = 0; ai < rows; ++ai) {
    const auto a = static_cast<Element>(ai);
    bool found = false;
    for (Element b = 0; b < n && !found; ++b)
      for (Element c = 0; c < n; ++c) {
        const auto base = ((static_cast<std::uint64_t>(a) * n + b) * n + c) * 2;
        if (t.j(a, t.j(b, c)) != t.j(t.j(a, b), c)) {
          best_triple = std::min(best_triple, base);
          found = true;
          break;
        }
        if (t.m(a, t.m(b, c)) != t.m(t.m(a, b), c)) {
          best_triple = std::min(best_triple, base + 1);
          found = true;
          break;
        }
      }
  }
  if (best_triple == kNone) return std::nullopt;
  const auto triple = best_triple / 2;
  return LawViolation{best_triple % 2 == 0 ? "associativity-join" : "associativity-meet",
                      {static_cast<Element>(triple / (n * n)), static_cast<Element>(triple / n % n),
                       static_cast<Element>(triple % n)}};
}

}  // namespace parallel
}  // namespace qlogic::kernels
