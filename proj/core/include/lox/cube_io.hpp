#pragma once

#include "lox/density.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace lox::cube {

struct CubeAtom {
  int number = 0;
  double charge = 0.0;
  std::array<double, 3> position{0, 0, 0};
};

/// Gaussian cube volume: two comment lines, atom count + origin, three axis
/// records (count + step vector), atom records, then the value stream in
/// z-fastest order. Lengths are Bohr-like units. Axis step vectors must be
/// axis-aligned (diagonal); per-axis anisotropy is accepted.
struct CubeVolume {
  std::array<std::string, 2> comments;
  std::array<double, 3> origin{0, 0, 0};
  std::array<int, 3> n{0, 0, 0};
  std::array<double, 3> step{0, 0, 0};
  std::vector<CubeAtom> atoms;
  std::vector<double> values;
};

/// Strict parse; throws std::runtime_error naming the offending line.
/// Negative atom counts (molecular-orbital cube convention) are rejected.
CubeVolume read_cube(std::istream &in);
CubeVolume read_cube_file(const std::string &path);

void write_cube(std::ostream &out, const CubeVolume &vol);
void write_cube_file(const std::string &path, const CubeVolume &vol);

/// Density field from a cube volume; negative values are clamped to zero
/// and counted.
DensityField to_density(const CubeVolume &vol, int *clamped_voxels = nullptr);

} // namespace lox::cube
