#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qlogic/error.hpp"
#include "qlogic/families.hpp"
#include "qlogic/kernels.hpp"
#include "qlogic/lattice.hpp"
#include "qlogic/projector_lattice.hpp"
#include "support.hpp"

using namespace qlogic;

namespace {

ClassificationReport classify_spec(const support::NamedLattice& f) {
  const auto l = build_lattice(f.spec);
  std::optional<OrthoMap> o;
  if (f.ortho) o = make_ortho(l, *f.ortho);
  return classify(l, o);
}

PosetSpec shuffled(const PosetSpec& spec, std::uint64_t seed) {
  PosetSpec out = spec;
  std::mt19937_64 rng(seed);
  std::shuffle(out.elements.begin(), out.elements.end(), rng);
  std::shuffle(out.covers.begin(), out.covers.end(), rng);
  return out;
}

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("family taxonomy") {
  for (unsigned n = 1; n <= 6; ++n) {
    const auto r = classify_spec(support::from_family(Family::Boolean, n));
    CHECK(r.is_orthomodular);
    CHECK(r.is_distributive);
    CHECK(r.is_boolean);
  }
  const auto mo2 = classify_spec(support::from_family(Family::MO, 2));
  CHECK(mo2.is_orthomodular);
  CHECK_FALSE(mo2.is_distributive);
  CHECK(mo2.counterexample_witnesses.count("distributive") == 1);

  const auto o6 = classify_spec(support::from_family(Family::Benzene));
  CHECK(o6.has_orthocomplementation);
  CHECK_FALSE(o6.is_orthomodular);
  CHECK(o6.counterexample_witnesses.count("orthomodular") == 1);

  for (auto f : {Family::DiamondM3, Family::PentagonN5}) {
    const auto r = classify_spec(support::from_family(f));
    CHECK_FALSE(r.is_distributive);
    CHECK_FALSE(r.has_orthocomplementation);
  }
  CHECK(classify_spec(support::from_family(Family::PentagonN5)).counterexample_witnesses.count("complemented") == 0);
}

TEST_CASE("distributivity agrees with the oracle") {
  std::vector<support::NamedLattice> all = support::ortholattice_fixtures();
  all.push_back(support::from_family(Family::DiamondM3));
  all.push_back(support::from_family(Family::PentagonN5));
  for (unsigned n = 1; n <= 10; ++n) all.push_back(support::from_family(Family::Chain, n));
  for (const auto& f : all) {
    CAPTURE(f.name);
    CHECK(classify_spec(f).is_distributive == oracle::distributive(oracle::Order(f.spec)));
  }
}

TEST_CASE("classification is invariant under relabelling the input order") {
  for (const auto& f : support::ortholattice_fixtures()) {
    CAPTURE(f.name);
    const auto base = classify_spec(f);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto g = f;
      g.spec = shuffled(f.spec, seed);
      const auto r = classify_spec(g);
      CHECK(r.is_orthomodular == base.is_orthomodular);
      CHECK(r.is_distributive == base.is_distributive);
      CHECK(r.is_boolean == base.is_boolean);
      CHECK(r.atoms.size() == base.atoms.size());
    }
  }
}

TEST_CASE("lattice laws hold on generated tables") {
  const auto l = build_lattice(support::from_family(Family::MO, 3).spec);
  const auto n = static_cast<Element>(l.size());
  for (Element a = 0; a < n; ++a) {
    CHECK(l.join(a, a) == a);
    CHECK(l.meet(a, a) == a);
    for (Element b = 0; b < n; ++b) {
      CHECK(l.join(a, b) == l.join(b, a));
      CHECK(l.join(a, l.meet(a, b)) == a);
      CHECK(l.meet(a, l.join(a, b)) == a);
      CHECK(l.leq(a, b) == (l.join(a, b) == b));
      for (Element c = 0; c < n; ++c) CHECK(l.join(a, l.join(b, c)) == l.join(l.join(a, b), c));
    }
  }
}

TEST_CASE("two-valued homomorphisms match brute force") {
  for (const auto& f : support::ortholattice_fixtures()) {
    CAPTURE(f.name);
    const auto l = build_lattice(f.spec);
    const auto homs = two_valued_homomorphisms(l, make_ortho(l, *f.ortho));
    oracle::Order o(f.spec);
    auto expected = oracle::homomorphisms(o, *f.ortho);
    std::vector<std::vector<int>> got;
    for (const auto& h : homs) {
      std::vector<int> v(o.size());
      for (std::size_t i = 0; i < o.size(); ++i) v[i] = h[l.at(o.ids[i])];
      got.push_back(v);
    }
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
  }
}

TEST_CASE("full set of homomorphisms iff distributive") {
  for (const auto& f : support::ortholattice_fixtures()) {
    CAPTURE(f.name);
    const auto l = build_lattice(f.spec);
    const auto r = classify(l, make_ortho(l, *f.ortho));
    CHECK(has_full_set_of_homomorphisms(l, make_ortho(l, *f.ortho)) == r.is_distributive);
  }
}

TEST_CASE("benzene and the two-block qutrit lattice admit homomorphisms without being distributive") {
  for (const auto& f : {support::from_family(Family::Benzene), support::two_block_qutrit()}) {
    CAPTURE(f.name);
    const auto l = build_lattice(f.spec);
    CHECK_FALSE(two_valued_homomorphisms(l, make_ortho(l, *f.ortho)).empty());
    CHECK_FALSE(classify(l).is_distributive);
  }
}

TEST_CASE("orthocomplementation search") {
  const auto mo2 = build_lattice(support::from_family(Family::MO, 2).spec);
  // Pairings of four atoms into complementary pairs.
  CHECK(find_orthocomplementations(mo2).size() == 3);
  CHECK(find_orthocomplementations(build_lattice(support::from_family(Family::PentagonN5).spec)).empty());
  for (const auto& o : find_orthocomplementations(mo2)) {
    CHECK_FALSE(validate_ortho(mo2, o).has_value());
    for (Element a = 0; a < mo2.size(); ++a) CHECK(o(o(a)) == a);
  }
}

TEST_CASE("supplied ortho maps are validated") {
  const auto f = support::from_family(Family::MO, 2);
  const auto l = build_lattice(f.spec);
  auto bad = *f.ortho;
  bad["b"] = "b";
  bad["b'"] = "b'";
  const auto violation = validate_ortho(l, make_ortho(l, bad));
  REQUIRE(violation.has_value());
  CHECK(violation->law == "complement");
  CHECK(error_code([&] { classify(l, make_ortho(l, bad)); }) == "InvalidOrthoMap");
}

TEST_CASE("build_lattice rejects non-lattices") {
  PosetSpec bowtie{{"0", "a", "b", "c", "d", "1"},
                   {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"b", "c"}, {"a", "d"}, {"b", "d"}, {"c", "1"}, {"d", "1"}}};
  try {
    build_lattice(bowtie);
    FAIL("expected NotALattice");
  } catch (const CheckError& e) {
    CHECK(e.code() == "NotALattice");
    CHECK(e.details()["reason"] == "no-least-upper-bound");
  }
  CHECK(error_code([] { build_lattice({{"a", "b"}, {{"a", "b"}, {"b", "a"}}}); }) == "CyclicCovers");
  CHECK_FALSE(error_code([] { build_lattice({{"a", "a"}, {}}); }).empty());
  CHECK_FALSE(error_code([] { build_lattice({{"a"}, {{"a", "z"}}}); }).empty());
}

TEST_CASE("birkhoff representation of distributive lattices") {
  const auto b3 = build_lattice(support::from_family(Family::Boolean, 3).spec);
  const auto rep = birkhoff_representation(b3);
  CHECK(rep.join_irreducibles.size() == 3);
  CHECK(rep.down_sets.size() == 8);
  const auto c5 = build_lattice(support::from_family(Family::Chain, 5).spec);
  CHECK(birkhoff_representation(c5).join_irreducibles.size() == 4);
  for (Element a = 0; a < b3.size(); ++a)
    for (Element b = 0; b < b3.size(); ++b)
      CHECK((rep.down_set_of[b3.join(a, b)]) == (rep.down_set_of[a] | rep.down_set_of[b]));
  CHECK(error_code([] { birkhoff_representation(build_lattice(support::from_family(Family::MO, 2).spec)); }) ==
        "NotDistributive");
}

TEST_CASE("isomorphism search") {
  const auto f = support::from_family(Family::MO, 3);
  const auto a = build_lattice(f.spec);
  const auto b = build_lattice(shuffled(f.spec, 9));
  const auto iso = find_isomorphism(a, b);
  REQUIRE(iso.has_value());
  for (Element x = 0; x < a.size(); ++x)
    for (Element y = 0; y < a.size(); ++y) CHECK(a.leq(x, y) == b.leq((*iso)[x], (*iso)[y]));
  CHECK_FALSE(find_isomorphism(a, build_lattice(support::from_family(Family::Boolean, 3).spec)).has_value());
}

TEST_CASE("serial and parallel kernels agree") {
  std::vector<support::NamedLattice> all = support::ortholattice_fixtures();
  all.push_back(support::from_family(Family::Boolean, 6));
  all.push_back(support::from_family(Family::DiamondM3));
  all.push_back(support::from_family(Family::PentagonN5));
  all.push_back(support::from_family(Family::Chain, 32));
  for (const auto& f : all) {
    CAPTURE(f.name);
    const auto l = build_lattice(f.spec);
    const auto t = l.tables();
    CHECK(kernels::serial::first_distributivity_violation(t) == kernels::parallel::first_distributivity_violation(t));
    CHECK(kernels::serial::first_lattice_law_violation(t) == kernels::parallel::first_lattice_law_violation(t));
    if (f.ortho) {
      const auto o = make_ortho(l, *f.ortho);
      CHECK(kernels::serial::first_orthomodular_violation(t, o.image()) ==
            kernels::parallel::first_orthomodular_violation(t, o.image()));
    }
  }

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 40;
    std::vector<std::uint8_t> rel(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) rel[i * n + j] = (rng() % 10) == 0;
    auto p = rel;
    kernels::serial::transitive_closure(n, rel);
    kernels::parallel::transitive_closure(n, p);
    CHECK(rel == p);
  }
}

TEST_CASE("the closure kernel matches the oracle order") {
  const auto f = support::from_family(Family::Boolean, 4);
  const auto l = build_lattice(f.spec);
  oracle::Order o(f.spec);
  for (std::size_t a = 0; a < o.size(); ++a)
    for (std::size_t b = 0; b < o.size(); ++b) CHECK(l.leq(l.at(o.ids[a]), l.at(o.ids[b])) == o.le[a][b]);
}

TEST_CASE("projector lattices") {
  const auto q = support::qubit_projector_lattices();
  const auto zx = build_lattice(q[1].spec);
  CHECK(zx.size() == 6);
  CHECK(find_isomorphism(zx, build_lattice(support::from_family(Family::MO, 2).spec)).has_value());
  CHECK(build_lattice(q[2].spec).size() == 8);

  const auto qutrit = support::two_block_qutrit();
  const auto l = build_lattice(qutrit.spec);
  CHECK(l.size() == 12);
  const auto r = classify(l, make_ortho(l, *qutrit.ortho));
  CHECK(r.is_orthomodular);
  CHECK_FALSE(r.is_distributive);

  CHECK(error_code([] { projector_lattice(4, {support::ray({1, 0, 0, 0})}); }) == "UnsupportedDimension");
  CHECK(error_code([] { projector_lattice(2, {support::ray({0, 0})}); }) == "DegenerateRay");
  std::vector<Eigen::VectorXcd> many;
  for (int k = 0; k < 20; ++k) many.push_back(support::ray({1, std::complex<double>(k + 1, 0)}));
  CHECK(error_code([&] { projector_lattice(2, many); }) == "NotClosed");
}

TEST_CASE("family bounds") {
  CHECK(error_code([] { generate_family(Family::Boolean, 7); }) == "SizeBound");
  CHECK(error_code([] { generate_family(Family::MO, 0); }) == "SizeBound");
  CHECK(parse_family("diamond_m3") == Family::DiamondM3);
  CHECK_FALSE(error_code([] { parse_family("cube"); }).empty());
}
