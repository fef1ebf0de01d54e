#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace lox::geom {

struct Vec3 {
  double c[3]{0.0, 0.0, 0.0};
  double &operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }
};

inline Vec3 operator+(const Vec3 &a, const Vec3 &b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3 &a, const Vec3 &b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3 &a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline double dot(const Vec3 &a, const Vec3 &b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm2(const Vec3 &a) { return dot(a, a); }
inline double norm(const Vec3 &a) { return std::sqrt(norm2(a)); }

/// det of the 3x3 matrix with columns a, b, c
inline double det3(const Vec3 &a, const Vec3 &b, const Vec3 &c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) -
         b[0] * (a[1] * c[2] - a[2] * c[1]) +
         c[0] * (a[1] * b[2] - a[2] * b[1]);
}

/// Half-space n . x <= offset with |n| = 1.
struct HalfSpace {
  Vec3 normal{0, 0, 0};
  double offset = 0.0;
};

/// Planar convex face, vertices ordered counterclockwise around the
/// outward normal.
struct Face {
  Vec3 normal{0, 0, 0};
  double offset = 0.0;
  std::vector<Vec3> vertices;
  Vec3 centroid{0, 0, 0};
};

struct Tetra {
  std::array<Vec3, 4> v;

  double volume() const {
    return det3(v[1] - v[0], v[2] - v[0], v[3] - v[0]) / 6.0;
  }
  Vec3 centroid() const { return 0.25 * (v[0] + v[1] + v[2] + v[3]); }
  double max_edge() const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) m = std::max(m, norm(v[i] - v[j]));
    return m;
  }
};

/// Exact first moment: int_T x dV = V/4 * sum of vertices.
inline Vec3 tetra_first_moment(const Tetra &t) {
  return (t.volume() / 4.0) * (t.v[0] + t.v[1] + t.v[2] + t.v[3]);
}

/// Exact second moment: int_T x_i x_j dV = V/20 (s_i s_j + sum_k v_ki v_kj)
/// with s the vertex sum.
inline std::array<std::array<double, 3>, 3>
tetra_second_moment(const Tetra &t) {
  const double V = t.volume();
  const Vec3 s = t.v[0] + t.v[1] + t.v[2] + t.v[3];
  std::array<std::array<double, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = s[i] * s[j];
      for (int k = 0; k < 4; ++k) acc += t.v[k][i] * t.v[k][j];
      m[i][j] = V / 20.0 * acc;
    }
  return m;
}

/// Regular 8-way subdivision (4 corner tetrahedra, octahedron split along
/// the m02-m13 diagonal).
std::array<Tetra, 8> split8(const Tetra &t);

/// Orders coplanar points counterclockwise around the given normal.
void order_face_loop(std::vector<Vec3> &pts, const Vec3 &normal);

} // namespace lox::geom
