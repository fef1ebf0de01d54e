#include "lox/lattice.hpp"

#include "lox/cell_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lox::jellium {

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

const char *lattice_name(LatticeKind k) {
  switch (k) {
  case LatticeKind::sc: return "sc";
  case LatticeKind::fcc: return "fcc";
  case LatticeKind::bcc: return "bcc";
  case LatticeKind::custom: return "custom";
  }
  return "unknown";
}

LatticeKind lattice_from_name(const std::string &name) {
  if (name == "sc" || name == "cubic") return LatticeKind::sc;
  if (name == "fcc") return LatticeKind::fcc;
  if (name == "bcc") return LatticeKind::bcc;
  throw std::invalid_argument("unknown lattice '" + name + "'");
}

BravaisLattice BravaisLattice::cubic() {
  BravaisLattice l;
  l.basis = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  l.kind = LatticeKind::sc;
  return l;
}

BravaisLattice BravaisLattice::fcc() {
  const double a = std::cbrt(4.0); // conventional cube edge at unit density
  BravaisLattice l;
  l.basis = {0.5 * a * Vec3{0, 1, 1}, 0.5 * a * Vec3{1, 0, 1},
             0.5 * a * Vec3{1, 1, 0}};
  l.kind = LatticeKind::fcc;
  return l;
}

BravaisLattice BravaisLattice::bcc() {
  const double a = std::cbrt(2.0);
  BravaisLattice l;
  l.basis = {0.5 * a * Vec3{-1, 1, 1}, 0.5 * a * Vec3{1, -1, 1},
             0.5 * a * Vec3{1, 1, -1}};
  l.kind = LatticeKind::bcc;
  return l;
}

BravaisLattice BravaisLattice::custom(const std::array<Vec3, 3> &basis) {
  const double d = geom::det3(basis[0], basis[1], basis[2]);
  if (std::abs(d) < 1e-9)
    throw std::invalid_argument("BravaisLattice: degenerate basis");
  const double s = 1.0 / std::cbrt(std::abs(d));
  BravaisLattice l;
  for (int i = 0; i < 3; ++i) l.basis[i] = s * basis[i];
  l.kind = LatticeKind::custom;
  return l;
}

BravaisLattice BravaisLattice::of(LatticeKind kind) {
  switch (kind) {
  case LatticeKind::sc: return cubic();
  case LatticeKind::fcc: return fcc();
  case LatticeKind::bcc: return bcc();
  case LatticeKind::custom:
    throw std::invalid_argument("custom lattice needs an explicit basis");
  }
  throw std::invalid_argument("bad lattice kind");
}

WignerSeitzCell build_ws_cell(const BravaisLattice &lattice) {
  if (std::abs(std::abs(lattice.det()) - 1.0) > 1e-9)
    throw std::invalid_argument("build_ws_cell: cell volume must be 1");

  // bisector planes p.x = |p|^2/2 for neighbors within two shells
  std::vector<Vec3> neighbors;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      for (int k = -2; k <= 2; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        neighbors.push_back(lattice.point(i, j, k));
      }

  struct Plane {
    Vec3 p;
    double half_p2;
  };
  std::vector<Plane> planes;
  planes.reserve(neighbors.size());
  for (const auto &p : neighbors) planes.push_back({p, 0.5 * geom::norm2(p)});

  auto inside = [&](const Vec3 &x, double tol) {
    for (const auto &pl : planes)
      if (geom::dot(pl.p, x) > pl.half_p2 + tol) return false;
    return true;
  };

  // vertex enumeration over plane triples
  std::vector<Vec3> verts;
  const int np = static_cast<int>(planes.size());
  for (int a = 0; a < np; ++a)
    for (int b = a + 1; b < np; ++b)
      for (int c = b + 1; c < np; ++c) {
        const Vec3 &pa = planes[a].p, &pb = planes[b].p, &pc = planes[c].p;
        const double det = geom::det3(pa, pb, pc);
        if (std::abs(det) < 1e-9) continue;
        // Cramer solve of [pa; pb; pc] x = rhs (rows)
        const Vec3 rhs{planes[a].half_p2, planes[b].half_p2,
                       planes[c].half_p2};
        const Vec3 x = (1.0 / det) *
                       Vec3{geom::det3(rhs, Vec3{pa[1], pb[1], pc[1]},
                                       Vec3{pa[2], pb[2], pc[2]}),
                            geom::det3(Vec3{pa[0], pb[0], pc[0]}, rhs,
                                       Vec3{pa[2], pb[2], pc[2]}),
                            geom::det3(Vec3{pa[0], pb[0], pc[0]},
                                       Vec3{pa[1], pb[1], pc[1]}, rhs)};
        if (!inside(x, 1e-9)) continue;
        bool dup = false;
        for (const auto &v : verts)
          if (geom::norm2(v - x) < 1e-16) {
            dup = true;
            break;
          }
        if (!dup) verts.push_back(x);
      }
  if (verts.size() < 4)
    throw std::runtime_error("build_ws_cell: vertex enumeration failed");

  WignerSeitzCell cell;
  for (const auto &pl : planes) {
    std::vector<Vec3> on_face;
    for (const auto &v : verts)
      if (std::abs(geom::dot(pl.p, v) - pl.half_p2) < 1e-8) on_face.push_back(v);
    if (on_face.size() < 3) continue;
    const double pn = geom::norm(pl.p);
    Face f;
    f.normal = (1.0 / pn) * pl.p;
    f.offset = pl.half_p2 / pn;
    geom::order_face_loop(on_face, f.normal);
    f.vertices = std::move(on_face);
    Vec3 c{0, 0, 0};
    for (const auto &v : f.vertices) c = c + v;
    f.centroid = (1.0 / static_cast<double>(f.vertices.size())) * c;
    cell.half_spaces.push_back({f.normal, f.offset});
    cell.faces.push_back(std::move(f));
  }

  // face-fan tetrahedra (origin, edge, face centroid), oriented positively
  for (const auto &f : cell.faces) {
    const std::size_t m = f.vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
      Tetra t{{Vec3{0, 0, 0}, f.vertices[i], f.vertices[(i + 1) % m],
               f.centroid}};
      if (t.volume() < 0.0) std::swap(t.v[1], t.v[2]);
      if (t.volume() <= 0.0)
        throw std::runtime_error("build_ws_cell: degenerate tetrahedron");
      cell.tetrahedra.push_back(t);
    }
  }

  for (const auto &t : cell.tetrahedra) {
    cell.volume += t.volume();
    cell.dipole = cell.dipole + geom::tetra_first_moment(t);
    const auto q = geom::tetra_second_moment(t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) cell.quadrupole[i][j] += q[i][j];
  }
  cell.second_moment = cell.quadrupole[0][0] + cell.quadrupole[1][1] +
                       cell.quadrupole[2][2];
  cell.inradius = cell.half_spaces.front().offset;
  for (const auto &h : cell.half_spaces)
    cell.inradius = std::min(cell.inradius, h.offset);
  for (const auto &v : verts)
    cell.circumradius = std::max(cell.circumradius, geom::norm(v));

  if (std::abs(cell.volume - 1.0) > 1e-9)
    throw std::runtime_error("build_ws_cell: volume != 1");
  if (geom::norm(cell.dipole) > 1e-10)
    throw std::runtime_error("build_ws_cell: cell has a dipole moment");
  const double iso = cell.second_moment / 3.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double want = i == j ? iso : 0.0;
      if (std::abs(cell.quadrupole[i][j] - want) > 1e-10)
        throw std::runtime_error(
            "build_ws_cell: quadrupole is not isotropic; the screened "
            "potential would not decay like |x|^-4");
    }
  return cell;
}

double cell_second_moment(const WignerSeitzCell &cell) {
  const auto &rule = cellq::keast4();
  double acc = 0.0;
  for (const auto &t : cell.tetrahedra)
    acc += cellq::apply(rule, t,
                        [](const Vec3 &x) { return geom::norm2(x); });
  return 2.0 * kPi / 3.0 * acc;
}

double ball_moment_lower_bound() {
  return 0.3 * std::cbrt(4.0 * kPi / 3.0);
}

} // namespace lox::jellium
