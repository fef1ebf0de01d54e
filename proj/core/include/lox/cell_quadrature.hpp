#pragma once

#include "lox/geometry.hpp"

#include <functional>
#include <vector>

namespace lox::cellq {

using geom::Tetra;
using geom::Vec3;

/// Quadrature rule in barycentric coordinates; weights sum to 1, so
/// int_T f ~= V * sum_i w_i f(x_i).
struct TetraRule {
  std::vector<std::array<double, 4>> bary;
  std::vector<double> w;
};

/// 4-point degree-2 rule (points (5 +- 3 sqrt 5)/20).
const TetraRule &keast4();

/// Grundmann-Moller rule of index s (degree 2s+1), positive/negative
/// weights, generated once and cached. s = 2 gives 15 points (degree 5),
/// s = 3 gives 35 points (degree 7).
const TetraRule &grundmann_moller(int s);

template <class F>
double apply(const TetraRule &rule, const Tetra &t, F &&f) {
  const double V = t.volume();
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.w.size(); ++i) {
    const auto &b = rule.bary[i];
    const Vec3 x = b[0] * t.v[0] + b[1] * t.v[1] + b[2] * t.v[2] +
                   b[3] * t.v[3];
    acc += rule.w[i] * f(x);
  }
  return V * acc;
}

} // namespace lox::cellq

namespace lox::jellium {
struct WignerSeitzCell;
}

namespace lox::cellq {

/// Integrals of 1/|x - y| and of smooth functions over a Wigner-Seitz cell.
/// The Coulomb kernel is handled three ways: an exact Duffy fan for interior
/// evaluation points (the radial transform removes the singularity), an
/// adaptive subdivision scheme for near exterior points, and distance-graded
/// fixed rules far away.
class CellIntegrator {
public:
  explicit CellIntegrator(const jellium::WignerSeitzCell &cell);

  /// int_Q dy/|y| (origin interior); exact Duffy transform per face cone.
  double self_potential() const;

  /// int_Q dy/|x - y| for any x, to absolute tolerance tol.
  double potential(const Vec3 &x, double tol = 1e-10) const;

  /// Signed-cone Duffy fan about an arbitrary apex; exact in the radial
  /// direction, adaptive over the face triangles. Valid for any x, used for
  /// interior and near-cell points.
  double interior_potential(const Vec3 &x, double tol = 1e-11) const;

  /// Sum of per-tetrahedron rule applications for smooth integrands.
  double smooth_integral(const std::function<double(const Vec3 &)> &f,
                         int gm_index = 3) const;

  const jellium::WignerSeitzCell &cell() const { return *cell_; }

private:
  struct TetraInfo {
    Tetra t;
    Vec3 centroid;
    double radius = 0.0; ///< max vertex distance from centroid
    double edge = 0.0;
  };

  const jellium::WignerSeitzCell *cell_;
  std::vector<TetraInfo> tetras_;
  double total_volume_ = 0.0;
};

} // namespace lox::cellq
