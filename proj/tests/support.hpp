#pragma once

#include <cmath>
#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qlogic/families.hpp"
#include "qlogic/lattice.hpp"
#include "qlogic/projector_lattice.hpp"
#include "qlogic/question_space.hpp"

namespace support {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(QLOGIC_FIXTURE_DIR) / name;
}

struct NamedLattice {
  std::string name;
  qlogic::PosetSpec spec;
  std::optional<std::map<std::string, std::string>> ortho;
};

inline NamedLattice from_family(qlogic::Family f, unsigned n = 0) {
  auto inst = qlogic::generate_family(f, n);
  std::string name(qlogic::family_name(f));
  if (qlogic::family_is_sized(f)) name += "(" + std::to_string(n) + ")";
  return {name, std::move(inst.spec), std::move(inst.ortho)};
}

inline NamedLattice from_projectors(const std::string& name, const qlogic::ProjectorLattice& p) {
  std::map<std::string, std::string> ortho;
  for (std::size_t i = 0; i < p.lattice.size(); ++i)
    ortho[p.lattice.id(static_cast<qlogic::Element>(i))] = p.lattice.id(p.ortho(static_cast<qlogic::Element>(i)));
  return {name, qlogic::to_poset_spec(p.lattice), std::move(ortho)};
}

inline Eigen::VectorXcd ray(std::initializer_list<std::complex<double>> xs) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

/// Qubit projector lattices from the Z, X and Y eigenrays.
inline std::vector<NamedLattice> qubit_projector_lattices() {
  const double r = 1 / std::sqrt(2.0);
  const std::complex<double> im(0, r);
  std::vector<NamedLattice> out;
  out.push_back(from_projectors("qubit{Z}", qlogic::projector_lattice(2, {ray({1, 0})})));
  out.push_back(from_projectors("qubit{Z,X}", qlogic::projector_lattice(2, {ray({1, 0}), ray({r, r})})));
  out.push_back(
      from_projectors("qubit{Z,X,Y}", qlogic::projector_lattice(2, {ray({1, 0}), ray({r, r}), ray({r, im})})));
  return out;
}

/// Two Boolean blocks of C^3 sharing the ray e3.
inline NamedLattice two_block_qutrit() {
  const double r = 1 / std::sqrt(2.0);
  return from_projectors("qutrit{e1,e2,(e1+e2)/sqrt2}",
                         qlogic::projector_lattice(3, {ray({1, 0, 0}), ray({0, 1, 0}), ray({r, r, 0})}));
}

/// Orthomodular fixtures from the standard families and qubit projector lattices.
inline std::vector<NamedLattice> orthomodular_fixtures() {
  std::vector<NamedLattice> out;
  for (unsigned n = 1; n <= 5; ++n) out.push_back(from_family(qlogic::Family::Boolean, n));
  for (unsigned n = 1; n <= 8; ++n) out.push_back(from_family(qlogic::Family::MO, n));
  for (auto& q : qubit_projector_lattices()) out.push_back(std::move(q));
  return out;
}

/// Every ortholattice fixture, including the non-orthomodular O6 and the
/// two-block qutrit lattice.
inline std::vector<NamedLattice> ortholattice_fixtures() {
  auto out = orthomodular_fixtures();
  out.push_back(from_family(qlogic::Family::Benzene));
  out.push_back(two_block_qutrit());
  return out;
}

/// A single-run space whose two slots both carry `spec` with identical
/// class labels, so that its quotient is `spec` itself.
inline qlogic::QuestionSpace mirrored_space(const qlogic::PosetSpec& spec,
                                            const std::optional<std::map<std::string, std::string>>& ortho) {
  std::map<qlogic::ContextKey, qlogic::QuestionSpace::ContextInput> contexts;
  for (int slot = 0; slot < 2; ++slot) {
    auto lattice = qlogic::build_lattice(spec);
    std::optional<qlogic::OrthoMap> o;
    if (ortho) o = qlogic::make_ortho(lattice, *ortho);
    std::map<std::string, std::string> classes;
    for (const auto& id : spec.elements) classes[id] = "C_" + id;
    classes.erase(lattice.id(lattice.top()));
    classes.erase(lattice.id(lattice.bottom()));
    contexts.emplace(qlogic::ContextKey{"r", slot}, qlogic::QuestionSpace::ContextInput{lattice, o, classes});
  }
  return qlogic::QuestionSpace(std::move(contexts));
}

}  // namespace support
