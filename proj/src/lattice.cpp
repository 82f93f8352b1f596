#include "qlogic/lattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

nlohmann::ordered_json ids_of(const Lattice& l, std::span<const Element> tuple) {
  auto out = nlohmann::ordered_json::array();
  for (auto e : tuple) out.push_back(l.id(e));
  return out;
}

// Finds the unique least element of `candidates` w.r.t. `le`, if any.
template <class Le>
std::optional<Element> least_of(const std::vector<Element>& candidates, Le le) {
  for (auto c : candidates) {
    if (std::all_of(candidates.begin(), candidates.end(), [&](Element o) { return le(c, o); })) return c;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Element> Lattice::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Element Lattice::at(std::string_view id) const {
  if (auto e = find(id)) return *e;
  throw InputError("UnknownElement", "unknown lattice element '" + std::string(id) + "'",
                   {{"element", std::string(id)}});
}

Lattice build_lattice(const PosetSpec& spec, const BuildOptions& options) {
  const std::size_t n = spec.elements.size();
  if (n == 0) throw InputError("EmptyLattice", "a lattice needs at least one element", {});
  if (n > options.max_elements)
    throw InputError("SizeBound",
                     "lattice has " + std::to_string(n) + " elements; bound is " +
                         std::to_string(options.max_elements),
                     {{"size", n}, {"bound", options.max_elements}});

  Lattice l;
  l.ids_ = spec.elements;
  for (std::size_t i = 0; i < n; ++i) {
    if (!l.index_.emplace(spec.elements[i], static_cast<Element>(i)).second)
      throw InputError("DuplicateElement", "duplicate element id '" + spec.elements[i] + "'",
                       {{"element", spec.elements[i]}});
  }

  std::vector<std::uint8_t> rel(n * n, 0);
  for (const auto& [lo, hi] : spec.covers) {
    const auto a = l.at(lo);
    const auto b = l.at(hi);
    if (a == b) throw InputError("CyclicCovers", "cover relation has a self-loop at '" + lo + "'", {{"element", lo}});
    rel[a * n + b] = 1;
  }
  // A cycle shows up as a pair (a, b), a ≠ b, related both ways.
  {
    auto strict = rel;
    kernels::parallel::transitive_closure(n, strict);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (strict[a * n + b] && strict[b * n + a])
          throw InputError("CyclicCovers", "cover relation is cyclic through '" + l.ids_[a] + "'",
                           {{"element", l.ids_[a]}, {"other", l.ids_[b]}});
    rel = std::move(strict);
  }
  l.leq_ = std::move(rel);
  l.join_.assign(n * n, 0);
  l.meet_.assign(n * n, 0);

  auto le = [&](Element a, Element b) { return l.leq_[a * n + b] != 0; };
  auto ge = [&](Element a, Element b) { return le(b, a); };
  auto fail = [&](Element a, Element b, const char* reason) {
    throw CheckError("NotALattice",
                     "pair (" + l.ids_[a] + ", " + l.ids_[b] + ") has " + reason,
                     {{"pair", {l.ids_[a], l.ids_[b]}}, {"reason", reason}});
  };

  std::vector<Element> bounds;
  bounds.reserve(n);
  for (Element a = 0; a < n; ++a) {
    for (Element b = a; b < n; ++b) {
      bounds.clear();
      for (Element u = 0; u < n; ++u)
        if (le(a, u) && le(b, u)) bounds.push_back(u);
      if (bounds.empty()) fail(a, b, "no-upper-bound");
      const auto j = least_of(bounds, le);
      if (!j) fail(a, b, "no-least-upper-bound");

      bounds.clear();
      for (Element u = 0; u < n; ++u)
        if (le(u, a) && le(u, b)) bounds.push_back(u);
      if (bounds.empty()) fail(a, b, "no-lower-bound");
      const auto m = least_of(bounds, ge);
      if (!m) fail(a, b, "no-greatest-lower-bound");

      l.join_[a * n + b] = l.join_[b * n + a] = *j;
      l.meet_[a * n + b] = l.meet_[b * n + a] = *m;
    }
  }
  Element top = 0;
  Element bottom = 0;
  for (Element a = 1; a < n; ++a) {
    top = l.join_[top * n + a];
    bottom = l.meet_[bottom * n + a];
  }
  l.top_ = top;
  l.bottom_ = bottom;
  return l;
}

std::vector<std::pair<Element, Element>> cover_pairs(const Lattice& l) {
  const auto n = static_cast<Element>(l.size());
  std::vector<std::pair<Element, Element>> out;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (!l.less(a, b)) continue;
      bool covered = true;
      for (Element c = 0; c < n && covered; ++c)
        if (l.less(a, c) && l.less(c, b)) covered = false;
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

PosetSpec to_poset_spec(const Lattice& l) {
  PosetSpec spec;
  spec.elements.assign(l.ids().begin(), l.ids().end());
  for (auto [a, b] : cover_pairs(l)) spec.covers.emplace_back(l.id(a), l.id(b));
  return spec;
}

OrthoMap make_ortho(const Lattice& l, const std::map<std::string, std::string>& mapping) {
  std::vector<Element> image(l.size(), 0);
  std::vector<bool> seen(l.size(), false);
  for (const auto& [from, to] : mapping) {
    const auto a = l.at(from);
    image[a] = l.at(to);
    seen[a] = true;
  }
  for (Element a = 0; a < l.size(); ++a)
    if (!seen[a])
      throw InputError("PartialOrthoMap", "ortho map has no image for '" + l.id(a) + "'", {{"element", l.id(a)}});
  return OrthoMap(std::move(image));
}

std::optional<LawViolation> validate_ortho(const Lattice& l, const OrthoMap& ortho) {
  const auto n = static_cast<Element>(l.size());
  if (ortho.size() != n) return LawViolation{"total", {}};
  for (Element a = 0; a < n; ++a)
    if (l.meet(a, ortho(a)) != l.bottom() || l.join(a, ortho(a)) != l.top()) return LawViolation{"complement", {a}};
  for (Element a = 0; a < n; ++a)
    if (ortho(ortho(a)) != a) return LawViolation{"involution", {a}};
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (l.leq(a, b) && !l.leq(ortho(b), ortho(a))) return LawViolation{"order-reversing", {a, b}};
  return std::nullopt;
}

std::vector<Element> atoms(const Lattice& l) {
  std::vector<Element> out;
  for (auto [a, b] : cover_pairs(l))
    if (a == l.bottom()) out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Element> complements(const Lattice& l, Element a) {
  std::vector<Element> out;
  for (Element b = 0; b < l.size(); ++b)
    if (l.meet(a, b) == l.bottom() && l.join(a, b) == l.top()) out.push_back(b);
  return out;
}

std::optional<Element> for_each_orthocomplementation(const Lattice& l,
                                                     const std::function<bool(const OrthoMap&)>& visit) {
  const auto n = static_cast<Element>(l.size());
  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<std::vector<Element>> comps(n);
  for (Element a = 0; a < n; ++a) comps[a] = complements(l, a);

  std::vector<Element> image(n, kUnset);
  bool visited_any = false;
  bool stop = false;
  Element deepest = 0;

  // a⊥ = b and x⊥ known: order reversal between a and x must hold.
  auto consistent = [&](Element a) {
    for (Element x = 0; x < n; ++x) {
      if (image[x] == kUnset) continue;
      if (l.leq(a, x) && !l.leq(image[x], image[a])) return false;
      if (l.leq(x, a) && !l.leq(image[a], image[x])) return false;
    }
    return true;
  };

  std::function<void(Element)> search = [&](Element from) {
    Element a = from;
    while (a < n && image[a] != kUnset) ++a;
    if (a == n) {
      visited_any = true;
      if (!visit(OrthoMap(image))) stop = true;
      return;
    }
    deepest = std::max(deepest, a);
    for (auto b : comps[a]) {
      if (stop) return;
      if (image[b] != kUnset) continue;
      if (b == a) {
        image[a] = a;
        if (consistent(a)) search(a + 1);
        image[a] = kUnset;
        continue;
      }
      image[a] = b;
      image[b] = a;
      if (consistent(a) && consistent(b)) search(a + 1);
      image[a] = kUnset;
      image[b] = kUnset;
    }
  };
  search(0);
  if (visited_any) return std::nullopt;
  return deepest;
}

std::vector<OrthoMap> find_orthocomplementations(const Lattice& l, std::size_t max_results) {
  std::vector<OrthoMap> out;
  if (max_results == 0) return out;
  for_each_orthocomplementation(l, [&](const OrthoMap& m) {
    out.push_back(m);
    return out.size() < max_results;
  });
  return out;
}

ClassificationReport classify(const Lattice& l, const std::optional<OrthoMap>& supplied) {
  ClassificationReport r;
  const auto n = static_cast<Element>(l.size());
  const auto tables = l.tables();

  if (auto bad = kernels::parallel::first_lattice_law_violation(tables)) {
    // Unreachable for lattices produced by build_lattice; kept as a guard.
    r.is_lattice = false;
    r.counterexample_witnesses[bad->law] = bad->witness;
  }

  r.is_complemented = true;
  for (Element a = 0; a < n; ++a)
    if (complements(l, a).empty()) {
      r.is_complemented = false;
      r.counterexample_witnesses["complemented"] = {a};
      break;
    }

  if (supplied) {
    if (auto bad = validate_ortho(l, *supplied)) {
      auto witness = nlohmann::ordered_json::array();
      for (auto e : bad->witness) witness.push_back(l.id(e));
      throw CheckError("InvalidOrthoMap", "supplied ortho map violates the " + bad->law + " law",
                       {{"law", bad->law}, {"witness", witness}});
    }
    r.ortho = supplied;
    r.ortho_source = OrthoSource::Supplied;
  } else if (r.is_complemented) {
    std::optional<OrthoMap> first;
    auto failed_at = for_each_orthocomplementation(l, [&](const OrthoMap& m) {
      if (!first) first = m;
      if (!kernels::parallel::first_orthomodular_violation(tables, m.image())) {
        first = m;
        return false;
      }
      return true;
    });
    if (first) {
      r.ortho = first;
      r.ortho_source = OrthoSource::Found;
    } else if (failed_at) {
      r.counterexample_witnesses["orthocomplementation"] = {*failed_at};
    }
  } else {
    r.counterexample_witnesses["orthocomplementation"] = r.counterexample_witnesses["complemented"];
  }
  r.has_orthocomplementation = r.ortho.has_value();

  if (r.ortho) {
    if (auto bad = kernels::parallel::first_orthomodular_violation(tables, r.ortho->image())) {
      r.counterexample_witnesses["orthomodular"] = {(*bad)[0], (*bad)[1]};
    } else {
      r.is_orthomodular = true;
    }
  }

  if (auto bad = kernels::parallel::first_distributivity_violation(tables)) {
    r.counterexample_witnesses["distributive"] = {(*bad)[0], (*bad)[1], (*bad)[2]};
  } else {
    r.is_distributive = true;
  }

  r.is_boolean = r.is_distributive && r.is_complemented;
  if (!r.is_boolean)
    r.counterexample_witnesses["boolean"] = r.is_distributive ? r.counterexample_witnesses["complemented"]
                                                              : r.counterexample_witnesses["distributive"];

  r.atoms = atoms(l);
  r.is_atomic = true;
  for (Element x = 0; x < n && r.is_atomic; ++x) {
    if (x == l.bottom()) continue;
    if (std::none_of(r.atoms.begin(), r.atoms.end(), [&](Element at) { return l.leq(at, x); })) {
      r.is_atomic = false;
      r.counterexample_witnesses["atomic"] = {x};
    }
  }
  return r;
}

namespace {

// Backtracking enumeration of two-valued homomorphisms with constraint
// propagation: order closure, orthocomplement, and join/meet rules.
class HomomorphismSearch {
 public:
  HomomorphismSearch(const Lattice& l, const OrthoMap& ortho) : l_(l), ortho_(ortho), n_(static_cast<Element>(l.size())) {}

  std::vector<Valuation> run(std::size_t limit) {
    limit_ = limit;
    std::vector<std::int8_t> v(n_, -1);
    if (!assign(v, l_.bottom(), 0) || !assign(v, l_.top(), 1) || !propagate(v)) return {};
    search(v);
    return std::move(out_);
  }

  // Seeds extra assignments before the search (used by the full-set check).
  std::vector<Valuation> run_with(Element a, std::uint8_t va, Element b, std::uint8_t vb) {
    limit_ = 1;
    std::vector<std::int8_t> v(n_, -1);
    if (!assign(v, l_.bottom(), 0) || !assign(v, l_.top(), 1) || !assign(v, a, va) || !assign(v, b, vb) ||
        !propagate(v))
      return {};
    search(v);
    return std::move(out_);
  }

 private:
  bool assign(std::vector<std::int8_t>& v, Element e, int value) {
    if (v[e] == -1) {
      v[e] = static_cast<std::int8_t>(value);
      return true;
    }
    return v[e] == value;
  }

  bool propagate(std::vector<std::int8_t>& v) {
    bool changed = true;
    while (changed) {
      changed = false;
      auto set = [&](Element e, int value) {
        if (v[e] == -1) {
          v[e] = static_cast<std::int8_t>(value);
          changed = true;
          return true;
        }
        return v[e] == value;
      };
      for (Element a = 0; a < n_; ++a) {
        if (v[a] == -1) continue;
        if (!set(ortho_(a), 1 - v[a])) return false;
        for (Element b = 0; b < n_; ++b) {
          if (v[a] == 1 && l_.leq(a, b) && !set(b, 1)) return false;
          if (v[a] == 0 && l_.leq(b, a) && !set(b, 0)) return false;
        }
      }
      for (Element a = 0; a < n_; ++a)
        for (Element b = a + 1; b < n_; ++b) {
          const Element j = l_.join(a, b);
          const Element m = l_.meet(a, b);
          if (v[a] == 0 && v[b] == 0 && !set(j, 0)) return false;
          if (v[a] == 1 && v[b] == 1 && !set(m, 1)) return false;
          if (v[j] == 1 && v[a] == 0 && !set(b, 1)) return false;
          if (v[j] == 1 && v[b] == 0 && !set(a, 1)) return false;
          if (v[m] == 0 && v[a] == 1 && !set(b, 0)) return false;
          if (v[m] == 0 && v[b] == 1 && !set(a, 0)) return false;
        }
    }
    return true;
  }

  bool is_homomorphism(const std::vector<std::int8_t>& v) const {
    if (v[l_.bottom()] != 0 || v[l_.top()] != 1) return false;
    for (Element a = 0; a < n_; ++a) {
      if (v[ortho_(a)] != 1 - v[a]) return false;
      for (Element b = 0; b < n_; ++b) {
        if (v[l_.join(a, b)] != std::max(v[a], v[b])) return false;
        if (v[l_.meet(a, b)] != std::min(v[a], v[b])) return false;
      }
    }
    return true;
  }

  void search(std::vector<std::int8_t>& v) {
    if (out_.size() >= limit_) return;
    const auto it = std::find(v.begin(), v.end(), std::int8_t{-1});
    if (it == v.end()) {
      if (is_homomorphism(v)) out_.emplace_back(v.begin(), v.end());
      return;
    }
    const auto e = static_cast<Element>(it - v.begin());
    for (int value : {0, 1}) {
      auto next = v;
      next[e] = static_cast<std::int8_t>(value);
      if (propagate(next)) search(next);
    }
  }

  const Lattice& l_;
  const OrthoMap& ortho_;
  Element n_;
  std::size_t limit_ = 0;
  std::vector<Valuation> out_;
};

}  // namespace

std::vector<Valuation> two_valued_homomorphisms(const Lattice& l, const OrthoMap& ortho) {
  return HomomorphismSearch(l, ortho).run(static_cast<std::size_t>(-1));
}

bool has_full_set_of_homomorphisms(const Lattice& l, const OrthoMap& ortho) {
  const auto n = static_cast<Element>(l.size());
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (!l.leq(a, b) && HomomorphismSearch(l, ortho).run_with(a, 1, b, 0).empty()) return false;
  return true;
}

BirkhoffRepresentation birkhoff_representation(const Lattice& l) {
  if (auto bad = kernels::parallel::first_distributivity_violation(l.tables())) {
    throw CheckError("NotDistributive", "lattice is not distributive",
                     {{"witness", ids_of(l, *bad)}});
  }
  const auto n = static_cast<Element>(l.size());
  const auto covers = cover_pairs(l);

  BirkhoffRepresentation rep;
  for (Element x = 0; x < n; ++x) {
    const auto lower = std::count_if(covers.begin(), covers.end(), [&](auto c) { return c.second == x; });
    if (lower == 1) rep.join_irreducibles.push_back(x);
  }
  const auto k = rep.join_irreducibles.size();
  if (k > 63) throw InputError("SizeBound", "too many join-irreducibles for the down-set encoding", {{"count", k}});
  const auto& ji = rep.join_irreducibles;

  std::vector<std::uint64_t> below(k, 0);  // strict predecessors within J
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && l.leq(ji[j], ji[i])) below[i] |= std::uint64_t{1} << j;
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!(below[j] >> i & 1)) continue;
      bool cover = true;
      for (std::size_t m = 0; m < k && cover; ++m)
        if ((below[m] >> i & 1) && (below[j] >> m & 1)) cover = false;
      if (cover) rep.irreducible_covers.emplace_back(i, j);
    }

  // Down-sets: decide membership along a linear extension of J. Including an
  // element is allowed iff its predecessors are all included, so every path
  // yields a distinct down-set and the enumeration never dead-ends.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::popcount(below[a]) < std::popcount(below[b]); });
  const std::size_t cap = static_cast<std::size_t>(n) + 1;
  std::function<void(std::size_t, std::uint64_t)> enumerate = [&](std::size_t pos, std::uint64_t mask) {
    if (rep.down_sets.size() > cap) return;
    if (pos == k) {
      rep.down_sets.push_back(mask);
      return;
    }
    const auto e = order[pos];
    enumerate(pos + 1, mask);
    if ((below[e] & mask) == below[e]) enumerate(pos + 1, mask | (std::uint64_t{1} << e));
  };
  enumerate(0, 0);
  std::sort(rep.down_sets.begin(), rep.down_sets.end());

  rep.down_set_of.assign(n, 0);
  for (Element x = 0; x < n; ++x)
    for (std::size_t i = 0; i < k; ++i)
      if (l.leq(ji[i], x)) rep.down_set_of[x] |= std::uint64_t{1} << i;

  // Verify: bijection onto the down-sets and x ≤ y ⇔ φ(x) ⊆ φ(y).
  auto images = rep.down_set_of;
  std::sort(images.begin(), images.end());
  const bool bijective = std::adjacent_find(images.begin(), images.end()) == images.end() && images == rep.down_sets;
  bool order_iso = true;
  for (Element x = 0; x < n && order_iso; ++x)
    for (Element y = 0; y < n; ++y) {
      const bool subset = (rep.down_set_of[x] & rep.down_set_of[y]) == rep.down_set_of[x];
      if (subset != l.leq(x, y)) {
        order_iso = false;
        break;
      }
    }
  if (!bijective || !order_iso)
    throw CheckError("BirkhoffMismatch", "down-set map failed verification on a distributive lattice", {});
  return rep;
}

std::optional<std::vector<Element>> find_isomorphism(const Lattice& a, const Lattice& b) {
  const auto n = static_cast<Element>(a.size());
  if (b.size() != n) return std::nullopt;
  auto profile = [](const Lattice& l, Element x) {
    std::size_t down = 0, up = 0;
    for (Element y = 0; y < l.size(); ++y) {
      down += l.leq(y, x);
      up += l.leq(x, y);
    }
    return std::pair{down, up};
  };
  std::vector<std::pair<std::size_t, std::size_t>> pa(n), pb(n);
  for (Element x = 0; x < n; ++x) {
    pa[x] = profile(a, x);
    pb[x] = profile(b, x);
  }
  {
    auto sa = pa, sb = pb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  constexpr Element kUnset = static_cast<Element>(-1);
  std::vector<Element> image(n, kUnset);
  std::vector<bool> used(n, false);
  std::function<bool(Element)> search = [&](Element x) {
    if (x == n) return true;
    for (Element y = 0; y < n; ++y) {
      if (used[y] || pa[x] != pb[y]) continue;
      bool ok = true;
      for (Element z = 0; z < x && ok; ++z)
        ok = a.leq(z, x) == b.leq(image[z], y) && a.leq(x, z) == b.leq(y, image[z]);
      if (!ok) continue;
      image[x] = y;
      used[y] = true;
      if (search(x + 1)) return true;
      used[y] = false;
      image[x] = kUnset;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return image;
}

}  // namespace qlogic
