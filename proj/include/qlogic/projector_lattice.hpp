#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qlogic/lattice.hpp"

namespace qlogic {

struct ProjectorOptions {
  /// Principal-angle tolerance for subspace equality and orthogonality.
  double tolerance = 1e-9;
  /// NotClosed is raised once the ray closure exceeds this many rays.
  std::size_t max_rays = 31;
};

/// Subspace-inclusion lattice generated by a set of rays in C^2 or C^3.
struct ProjectorLattice {
  Lattice lattice;
  OrthoMap ortho;
  /// Normalized rays after closure; ray i is element "v<i>".
  std::vector<Eigen::VectorXcd> rays;
  /// Orthogonal projector of every lattice element.
  std::vector<Eigen::MatrixXcd> projectors;
};

/// Closes `rays` under orthocomplement (and, in dimension 3, under the
/// cross product of orthogonal pairs) and builds the inclusion lattice over
/// {0, rays, planes, full space} with orthogonality as orthocomplement.
///
/// Throws InputError("DegenerateRay") for near-zero or wrongly sized vectors,
/// InputError("UnsupportedDimension") unless dim ∈ {2, 3}, and
/// CheckError("NotClosed") when the closure exceeds `max_rays`.
ProjectorLattice projector_lattice(int dim, const std::vector<Eigen::VectorXcd>& rays,
                                   const ProjectorOptions& options = {});

}  // namespace qlogic
