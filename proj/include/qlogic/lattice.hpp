#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qlogic/kernels.hpp"

namespace qlogic {

/// A finite poset given by its cover (Hasse) relation. Element identifiers
/// are opaque strings; their order in `elements` is the canonical element
/// order used for witnesses.
struct PosetSpec {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> covers;  // (lower, upper)
};

struct BuildOptions {
  std::size_t max_elements = 64;
};

/// An immutable finite lattice with dense order, join and meet tables.
class Lattice {
 public:
  std::size_t size() const { return ids_.size(); }
  std::span<const std::string> ids() const { return ids_; }
  const std::string& id(Element e) const { return ids_[e]; }
  std::optional<Element> find(std::string_view id) const;
  /// Like find() but throws InputError("UnknownElement") when absent.
  Element at(std::string_view id) const;

  bool leq(Element a, Element b) const { return leq_[a * size() + b] != 0; }
  bool less(Element a, Element b) const { return a != b && leq(a, b); }
  Element join(Element a, Element b) const { return join_[a * size() + b]; }
  Element meet(Element a, Element b) const { return meet_[a * size() + b]; }
  Element top() const { return top_; }
  Element bottom() const { return bottom_; }

  kernels::TableView tables() const { return {size(), leq_, join_, meet_}; }

 private:
  friend Lattice build_lattice(const PosetSpec&, const BuildOptions&);

  std::vector<std::string> ids_;
  std::unordered_map<std::string, Element> index_;
  std::vector<std::uint8_t> leq_;
  std::vector<Element> join_;
  std::vector<Element> meet_;
  Element top_ = 0;
  Element bottom_ = 0;
};

/// Builds the lattice of `spec`, computing the order by transitive closure.
///
/// Throws InputError for empty/oversized/duplicate/unknown-id input,
/// InputError("CyclicCovers") for a cyclic cover relation, and
/// CheckError("NotALattice") naming the first pair (in input order) without a
/// unique join or meet, with reason one of no-upper-bound,
/// no-least-upper-bound, no-lower-bound, no-greatest-lower-bound.
Lattice build_lattice(const PosetSpec& spec, const BuildOptions& options = {});

/// Cover pairs (a ⋖ b) of a lattice, in lexicographic element order.
std::vector<std::pair<Element, Element>> cover_pairs(const Lattice& lattice);

/// The cover-relation spec that rebuilds `lattice` (same element order).
PosetSpec to_poset_spec(const Lattice& lattice);

/// A total map a ↦ a⊥ on the elements of one lattice.
class OrthoMap {
 public:
  OrthoMap() = default;
  explicit OrthoMap(std::vector<Element> image) : image_(std::move(image)) {}

  Element operator()(Element a) const { return image_[a]; }
  std::span<const Element> image() const { return image_; }
  std::size_t size() const { return image_.size(); }

  friend bool operator==(const OrthoMap&, const OrthoMap&) = default;

 private:
  std::vector<Element> image_;
};

/// Resolves an id→id map against `lattice`. Throws InputError when the map
/// is not total or names unknown elements.
OrthoMap make_ortho(const Lattice& lattice, const std::map<std::string, std::string>& mapping);

/// First violated orthocomplementation law ("complement", "involution",
/// "order-reversing"), or nullopt if `ortho` is an orthocomplementation.
std::optional<LawViolation> validate_ortho(const Lattice& lattice, const OrthoMap& ortho);

/// Elements covering the bottom.
std::vector<Element> atoms(const Lattice& lattice);

/// All complements of `a` in input order.
std::vector<Element> complements(const Lattice& lattice, Element a);

enum class OrthoSource { Supplied, Found, None };

struct ClassificationReport {
  bool is_lattice = true;
  bool is_bounded = true;
  bool is_complemented = false;
  bool has_orthocomplementation = false;
  bool is_orthomodular = false;
  bool is_distributive = false;
  bool is_boolean = false;
  bool is_atomic = false;
  std::vector<Element> atoms;
  /// Failed law name → first violating tuple (input element order).
  std::map<std::string, std::vector<Element>> counterexample_witnesses;
  std::optional<OrthoMap> ortho;
  OrthoSource ortho_source = OrthoSource::None;
};

/// Classifies `lattice` along lattice ⊃ complemented ⊃ orthocomplemented ⊃
/// orthomodular ⊃ Boolean by exhaustive law checks.
///
/// A supplied `ortho` is validated first (CheckError "InvalidOrthoMap" with
/// {law, witness} on failure). Without one, the orthocomplementations are
/// searched and the first orthomodular one (else the first one) is used.
ClassificationReport classify(const Lattice& lattice, const std::optional<OrthoMap>& ortho = std::nullopt);

/// Visits every orthocomplementation in lexicographic order of images until
/// `visit` returns false. Returns the element at which the search failed
/// deepest (useful as a witness when none exists), or nullopt if at least one
/// map was visited.
std::optional<Element> for_each_orthocomplementation(const Lattice& lattice,
                                                     const std::function<bool(const OrthoMap&)>& visit);

std::vector<OrthoMap> find_orthocomplementations(const Lattice& lattice,
                                                 std::size_t max_results = static_cast<std::size_t>(-1));

/// A map elements → {0, 1}.
using Valuation = std::vector<std::uint8_t>;

/// Every map preserving bounds, joins, meets and h(a⊥) = 1 − h(a), in
/// lexicographic order.
std::vector<Valuation> two_valued_homomorphisms(const Lattice& lattice, const OrthoMap& ortho);

/// True iff for every a ≰ b some two-valued homomorphism has h(a)=1, h(b)=0.
bool has_full_set_of_homomorphisms(const Lattice& lattice, const OrthoMap& ortho);

struct BirkhoffRepresentation {
  /// Join-irreducible elements (exactly one lower cover), input order.
  std::vector<Element> join_irreducibles;
  /// Cover pairs of the induced subposet, as indices into join_irreducibles.
  std::vector<std::pair<std::size_t, std::size_t>> irreducible_covers;
  /// Per lattice element: bitmask over join_irreducibles of the down-set
  /// {j ≤ x}. This is the verified isomorphism onto the down-set lattice.
  std::vector<std::uint64_t> down_set_of;
  /// Every down-set of the irreducible poset, ascending by mask.
  std::vector<std::uint64_t> down_sets;
};

/// Throws CheckError("NotDistributive") with the first violating triple.
BirkhoffRepresentation birkhoff_representation(const Lattice& lattice);

/// An order isomorphism from `a` onto `b` (image per element of `a`).
std::optional<std::vector<Element>> find_isomorphism(const Lattice& a, const Lattice& b);

}  // namespace qlogic
