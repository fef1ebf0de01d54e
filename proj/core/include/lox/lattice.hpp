#pragma once

#include "lox/geometry.hpp"

#include <array>
#include <string>
#include <vector>

namespace lox::jellium {

using geom::Face;
using geom::HalfSpace;
using geom::Tetra;
using geom::Vec3;

enum class LatticeKind { sc, fcc, bcc, custom };

const char *lattice_name(LatticeKind k);
LatticeKind lattice_from_name(const std::string &name);

/// Bravais lattice scaled so the primitive cell has volume exactly 1.
struct BravaisLattice {
  std::array<Vec3, 3> basis{}; ///< primitive vectors (rows)
  LatticeKind kind = LatticeKind::custom;

  static BravaisLattice cubic();
  static BravaisLattice fcc();
  static BravaisLattice bcc();
  /// Arbitrary basis, rescaled to unit cell volume; throws on degeneracy.
  static BravaisLattice custom(const std::array<Vec3, 3> &basis);
  static BravaisLattice of(LatticeKind kind);

  Vec3 point(int i, int j, int k) const {
    return (static_cast<double>(i) * basis[0]) +
           (static_cast<double>(j) * basis[1]) +
           (static_cast<double>(k) * basis[2]);
  }
  double det() const {
    return geom::det3(basis[0], basis[1], basis[2]);
  }
};

/// Wigner-Seitz cell: bisector half-spaces, ordered faces, and a face-fan
/// tetrahedral decomposition from the origin. Unit volume; inversion
/// symmetric; dipole-free with isotropic quadrupole for the cubic-family
/// lattices (verified at construction to 1e-10).
struct WignerSeitzCell {
  std::vector<HalfSpace> half_spaces; ///< active (face-defining) planes
  std::vector<Face> faces;
  std::vector<Tetra> tetrahedra;
  double volume = 0.0;
  Vec3 dipole{0, 0, 0};
  std::array<std::array<double, 3>, 3> quadrupole{};
  double second_moment = 0.0; ///< int_Q |x|^2 dx (exact)
  double inradius = 0.0;
  double circumradius = 0.0;

  bool contains(const Vec3 &x, double tol = 1e-12) const {
    for (const auto &h : half_spaces)
      if (geom::dot(h.normal, x) > h.offset + tol) return false;
    return true;
  }
};

/// Intersects the bisector half-spaces of all lattice points within two
/// shells and tetrahedralizes by fanning each face from its centroid to the
/// origin. Throws on degenerate bases and on cells violating the no-dipole /
/// isotropic-quadrupole conditions.
WignerSeitzCell build_ws_cell(const BravaisLattice &lattice);

/// (2 pi/3) int_Q |x|^2 dx by the degree-2-exact 4-point tetrahedron rule.
double cell_second_moment(const WignerSeitzCell &cell);

/// (3/10)(4 pi/3)^(1/3), the same integral over the unit-volume ball; a
/// lower bound for every lattice shift (about 0.4836).
double ball_moment_lower_bound();

} // namespace lox::jellium
