#include "lox/geometry.hpp"

#include <algorithm>

namespace lox::geom {

std::array<Tetra, 8> split8(const Tetra &t) {
  const Vec3 &v0 = t.v[0], &v1 = t.v[1], &v2 = t.v[2], &v3 = t.v[3];
  const Vec3 m01 = 0.5 * (v0 + v1), m02 = 0.5 * (v0 + v2),
             m03 = 0.5 * (v0 + v3), m12 = 0.5 * (v1 + v2),
             m13 = 0.5 * (v1 + v3), m23 = 0.5 * (v2 + v3);
  // 4 corner tetrahedra plus the central octahedron cut along m02-m13;
  // children are re-oriented to the parent's sign
  std::array<Tetra, 8> kids = {
      Tetra{{v0, m01, m02, m03}}, Tetra{{m01, v1, m12, m13}},
      Tetra{{m02, m12, v2, m23}}, Tetra{{m03, m13, m23, v3}},
      Tetra{{m02, m13, m01, m03}}, Tetra{{m02, m13, m03, m23}},
      Tetra{{m02, m13, m23, m12}}, Tetra{{m02, m13, m12, m01}}};
  const double parent_sign = t.volume() >= 0.0 ? 1.0 : -1.0;
  for (auto &k : kids)
    if (k.volume() * parent_sign < 0.0) std::swap(k.v[2], k.v[3]);
  return kids;
}

void order_face_loop(std::vector<Vec3> &pts, const Vec3 &normal) {
  Vec3 c{0, 0, 0};
  for (const auto &p : pts) c = c + p;
  c = (1.0 / static_cast<double>(pts.size())) * c;
  Vec3 e1 = pts.front() - c;
  e1 = (1.0 / norm(e1)) * e1;
  const Vec3 e2 = cross(normal, e1);
  std::sort(pts.begin(), pts.end(), [&](const Vec3 &a, const Vec3 &b) {
    const Vec3 da = a - c, db = b - c;
    return std::atan2(dot(da, e2), dot(da, e1)) <
           std::atan2(dot(db, e2), dot(db, e1));
  });
}

} // namespace lox::geom
