#include "lox/cell_quadrature.hpp"

#include "lox/lattice.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace lox::cellq {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

TetraRule make_gm(int s) {
  // Grundmann-Moller simplex rule: degree d = 2s+1 on the unit 3-simplex,
  //   I = sum_{i=0..s} (-1)^i 2^{-2s} (d+n-2i)^d / (i! (d+n-i)!)
  //       sum_{|beta|=s-i} f((2 beta + 1)/(d+n-2i))
  // normalized here so the weights sum to 1.
  const int n = 3;
  const int d = 2 * s + 1;
  TetraRule rule;
  for (int i = 0; i <= s; ++i) {
    const double coef = ((i % 2) ? -1.0 : 1.0) * std::pow(2.0, -2.0 * s) *
                        std::pow(static_cast<double>(d + n - 2 * i), d) /
                        (factorial(i) * factorial(d + n - i));
    const int rem = s - i;
    const double denom = d + n - 2 * i;
    for (int b0 = 0; b0 <= rem; ++b0)
      for (int b1 = 0; b1 + b0 <= rem; ++b1)
        for (int b2 = 0; b2 + b1 + b0 <= rem; ++b2) {
          const int b3 = rem - b0 - b1 - b2;
          rule.bary.push_back({(2.0 * b0 + 1.0) / denom,
                               (2.0 * b1 + 1.0) / denom,
                               (2.0 * b2 + 1.0) / denom,
                               (2.0 * b3 + 1.0) / denom});
          rule.w.push_back(coef);
        }
  }
  // coef values integrate over the unit simplex (volume 1/6); rescale
  for (auto &w : rule.w) w *= 6.0;
  return rule;
}

struct TriRule {
  std::vector<std::array<double, 3>> bary;
  std::vector<double> w; // sum to 1
};

/// Classic 7-point degree-5 triangle rule.
const TriRule &tri7() {
  static const TriRule rule = [] {
    TriRule r;
    const double a = 0.470142064105115, b = 0.101286507323456;
    const double wa = 0.132394152788506, wb = 0.125939180544827;
    r.bary = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
              {a, a, 1 - 2 * a}, {a, 1 - 2 * a, a}, {1 - 2 * a, a, a},
              {b, b, 1 - 2 * b}, {b, 1 - 2 * b, b}, {1 - 2 * b, b, b}};
    r.w = {0.225, wa, wa, wa, wb, wb, wb};
    return r;
  }();
  return rule;
}

/// 2D integral of 1/|q - x| over the physical triangle (t1, t2, t3),
/// adaptive 4-way subdivision.
double triangle_inv_dist(const Vec3 &x, const Vec3 &t1, const Vec3 &t2,
                         const Vec3 &t3, double tol, int depth) {
  const auto &rule = tri7();
  const double area = 0.5 * geom::norm(geom::cross(t2 - t1, t3 - t1));
  auto eval = [&](const Vec3 &a, const Vec3 &b, const Vec3 &c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.w.size(); ++i) {
      const auto &l = rule.bary[i];
      const Vec3 q = l[0] * a + l[1] * b + l[2] * c;
      acc += rule.w[i] / geom::norm(q - x);
    }
    return acc;
  };
  const double coarse = area * eval(t1, t2, t3);
  const Vec3 m12 = 0.5 * (t1 + t2), m13 = 0.5 * (t1 + t3),
             m23 = 0.5 * (t2 + t3);
  const double fine = 0.25 * area *
                      (eval(t1, m12, m13) + eval(m12, t2, m23) +
                       eval(m13, m23, t3) + eval(m12, m23, m13));
  if (std::abs(fine - coarse) <= tol || depth >= 10) return fine;
  return triangle_inv_dist(x, t1, m12, m13, tol / 4, depth + 1) +
         triangle_inv_dist(x, m12, t2, m23, tol / 4, depth + 1) +
         triangle_inv_dist(x, m13, m23, t3, tol / 4, depth + 1) +
         triangle_inv_dist(x, m12, m23, m13, tol / 4, depth + 1);
}

} // namespace

const TetraRule &keast4() {
  static const TetraRule rule = [] {
    TetraRule r;
    const double a = 0.585410196624969, b = 0.138196601125011;
    r.bary = {{a, b, b, b}, {b, a, b, b}, {b, b, a, b}, {b, b, b, a}};
    r.w = {0.25, 0.25, 0.25, 0.25};
    return r;
  }();
  return rule;
}

const TetraRule &grundmann_moller(int s) {
  static std::map<int, TetraRule> cache;
  auto it = cache.find(s);
  if (it == cache.end()) it = cache.emplace(s, make_gm(s)).first;
  return it->second;
}

CellIntegrator::CellIntegrator(const jellium::WignerSeitzCell &cell)
    : cell_(&cell) {
  for (const auto &t : cell.tetrahedra) {
    TetraInfo info;
    info.t = t;
    info.centroid = t.centroid();
    for (const auto &v : t.v)
      info.radius = std::max(info.radius, geom::norm(v - info.centroid));
    info.edge = t.max_edge();
    tetras_.push_back(info);
    total_volume_ += t.volume();
  }
}

double CellIntegrator::interior_potential(const Vec3 &x, double tol) const {
  // Signed cone decomposition about x over the face triangulation; the
  // Duffy radial integral is exact, leaving 2D triangle integrals:
  //   int_{cone(x;T)} dy/|y - x| = 3 V_signed / (2 A) * int_T dA/|q - x|.
  // Valid for any apex x; cones pointing the wrong way carry negative
  // signed volume and cancellation reproduces the cell exactly.
  const std::size_t ntris = cell_->tetrahedra.size();
  const double tri_tol = tol / static_cast<double>(ntris);
  double acc = 0.0;
  for (const auto &f : cell_->faces) {
    const std::size_t m = f.vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec3 &t1 = f.vertices[i];
      const Vec3 &t2 = f.vertices[(i + 1) % m];
      const Vec3 &t3 = f.centroid;
      const double vs = geom::det3(t1 - x, t2 - x, t3 - x) / 6.0;
      if (std::abs(vs) < 1e-15) continue;
      const double area = 0.5 * geom::norm(geom::cross(t2 - t1, t3 - t1));
      const double tri = triangle_inv_dist(
          x, t1, t2, t3, tri_tol * area / std::abs(3.0 * vs), 0);
      acc += 1.5 * vs * tri / area;
    }
  }
  return acc;
}

double CellIntegrator::self_potential() const {
  return interior_potential({0, 0, 0});
}

double CellIntegrator::potential(const Vec3 &x, double tol) const {
  auto inv = [&](const Vec3 &y) { return 1.0 / geom::norm(y - x); };
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const auto &info : tetras_) {
    const double dist =
        std::max(0.0, geom::norm(x - info.centroid) - info.radius);
    min_ratio = std::min(min_ratio, dist / info.edge);
  }
  if (min_ratio < 1.2) return interior_potential(x, tol);
  double acc = 0.0;
  for (const auto &info : tetras_) {
    const double dist =
        std::max(0.0, geom::norm(x - info.centroid) - info.radius);
    const double ratio = dist / info.edge;
    if (ratio >= 4.0)
      acc += apply(grundmann_moller(2), info.t, inv);
    else
      acc += apply(grundmann_moller(3), info.t, inv);
  }
  return acc;
}

double CellIntegrator::smooth_integral(
    const std::function<double(const Vec3 &)> &f, int gm_index) const {
  const auto &rule = grundmann_moller(gm_index);
  double acc = 0.0;
  for (const auto &info : tetras_) acc += apply(rule, info.t, f);
  return acc;
}

} // namespace lox::cellq
