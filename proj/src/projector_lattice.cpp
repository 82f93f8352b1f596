#include "qlogic/projector_lattice.hpp"

#include <string>

#include "qlogic/error.hpp"

namespace qlogic {

namespace {

using Vec = Eigen::VectorXcd;

// sin of the principal angle between two unit rays.
double separation(const Vec& u, const Vec& v) { return (v - u.dot(v) * u).norm(); }

bool orthogonal(const Vec& u, const Vec& v, double tol) { return std::abs(u.dot(v)) < tol; }

// Appends `v` unless an equal ray is present; returns whether it was added.
bool add_ray(std::vector<Vec>& rays, const Vec& v, double tol) {
  for (const auto& r : rays)
    if (separation(r, v) < tol) return false;
  rays.push_back(v);
  return true;
}

Vec complement_2d(const Vec& u) {
  Vec w(2);
  w << -std::conj(u(1)), std::conj(u(0));
  return w;
}

// A unit vector orthogonal to both u and v (conjugated cross product).
Vec orthogonal_3d(const Vec& u, const Vec& v) {
  Vec w(3);
  w << std::conj(u(1) * v(2) - u(2) * v(1)), std::conj(u(2) * v(0) - u(0) * v(2)),
      std::conj(u(0) * v(1) - u(1) * v(0));
  return w.normalized();
}

}  // namespace

ProjectorLattice projector_lattice(int dim, const std::vector<Eigen::VectorXcd>& input, const ProjectorOptions& opt) {
  if (dim != 2 && dim != 3)
    throw InputError("UnsupportedDimension", "projector lattices support dimension 2 or 3", {{"dim", dim}});
  std::vector<Vec> rays;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const auto& v = input[i];
    if (v.size() != dim || v.norm() < 1e-12)
      throw InputError("DegenerateRay", "ray " + std::to_string(i) + " is zero or has the wrong dimension",
                       {{"index", i}});
    add_ray(rays, v.normalized(), opt.tolerance);
  }
  auto check_bound = [&] {
    if (rays.size() > opt.max_rays)
      throw CheckError("NotClosed", "ray closure exceeded " + std::to_string(opt.max_rays) + " rays",
                       {{"bound", opt.max_rays}});
  };

  if (dim == 2) {
    for (std::size_t i = 0; i < rays.size(); ++i) {
      add_ray(rays, complement_2d(rays[i]), opt.tolerance);
      check_bound();
    }
  } else {
    bool grew = true;
    while (grew) {
      grew = false;
      const auto count = rays.size();
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
          if (orthogonal(rays[i], rays[j], opt.tolerance) &&
              add_ray(rays, orthogonal_3d(rays[i], rays[j]), opt.tolerance)) {
            grew = true;
            check_bound();
          }
    }
  }

  const auto k = rays.size();
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);
  PosetSpec spec;
  std::vector<Eigen::MatrixXcd> projectors;
  spec.elements.push_back("0");
  projectors.push_back(Eigen::MatrixXcd::Zero(dim, dim));
  auto ray_id = [](std::size_t i) { return "v" + std::to_string(i); };
  auto plane_id = [&](std::size_t i) { return ray_id(i) + "^"; };
  for (std::size_t i = 0; i < k; ++i) {
    spec.elements.push_back(ray_id(i));
    projectors.push_back(rays[i] * rays[i].adjoint());
  }
  if (dim == 3)
    for (std::size_t i = 0; i < k; ++i) {
      spec.elements.push_back(plane_id(i));
      projectors.push_back(identity - rays[i] * rays[i].adjoint());
    }
  spec.elements.push_back("1");
  projectors.push_back(identity);

  for (std::size_t i = 0; i < k; ++i) {
    spec.covers.emplace_back("0", ray_id(i));
    spec.covers.emplace_back(ray_id(i), "1");
    if (dim == 3) {
      spec.covers.emplace_back("0", plane_id(i));
      spec.covers.emplace_back(plane_id(i), "1");
      for (std::size_t j = 0; j < k; ++j)
        if (i != j && orthogonal(rays[i], rays[j], opt.tolerance)) spec.covers.emplace_back(ray_id(i), plane_id(j));
    }
  }
  if (k == 0) spec.covers.emplace_back("0", "1");

  auto lattice = build_lattice(spec);
  std::vector<Element> image(lattice.size());
  image[lattice.at("0")] = lattice.at("1");
  image[lattice.at("1")] = lattice.at("0");
  for (std::size_t i = 0; i < k; ++i) {
    const auto v = lattice.at(ray_id(i));
    if (dim == 3) {
      const auto p = lattice.at(plane_id(i));
      image[v] = p;
      image[p] = v;
    } else {
      for (std::size_t j = 0; j < k; ++j)
        if (separation(rays[j], complement_2d(rays[i])) < opt.tolerance) image[v] = lattice.at(ray_id(j));
    }
  }
  return {std::move(lattice), OrthoMap(std::move(image)), std::move(rays), std::move(projectors)};
}

}  // namespace qlogic
