#include "lox/cube_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lox::cube {

namespace {

/// Whitespace tokenizer that remembers the current line for diagnostics.
class LineTokenizer {
public:
  explicit LineTokenizer(std::istream &in) : in_(in) {}

  bool next(std::string &tok) {
    while (true) {
      if (line_stream_ >> tok) return true;
      if (!std::getline(in_, line_)) return false;
      ++line_no_;
      line_stream_ = std::istringstream(line_);
    }
  }

  std::string next_or_fail(const char *what) {
    std::string tok;
    if (!next(tok)) fail(std::string("unexpected end of file, expected ") + what);
    return tok;
  }

  double next_double(const char *what) {
    const std::string tok = next_or_fail(what);
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception &) {
      fail(std::string("expected a number for ") + what + ", got '" + tok + "'");
    }
    return 0.0;
  }

  int next_int(const char *what) {
    const double v = next_double(what);
    if (v != std::floor(v))
      fail(std::string("expected an integer for ") + what);
    return static_cast<int>(v);
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw std::runtime_error("cube parse error at line " +
                             std::to_string(line_no_) + ": " + msg);
  }

  bool at_end() {
    std::string tok;
    return !next(tok);
  }

  int line() const { return line_no_; }

private:
  std::istream &in_;
  std::string line_;
  std::istringstream line_stream_;
  int line_no_ = 0;
};

} // namespace

CubeVolume read_cube(std::istream &in) {
  CubeVolume vol;
  for (auto &comment : vol.comments)
    if (!std::getline(in, comment))
      throw std::runtime_error("cube parse error at line 1: missing comment lines");

  LineTokenizer tok(in);
  const int natoms = tok.next_int("atom count");
  if (natoms < 0)
    tok.fail("negative atom count: molecular-orbital cube files are not "
             "densities and are rejected");
  for (int i = 0; i < 3; ++i) vol.origin[i] = tok.next_double("origin");

  for (int axis = 0; axis < 3; ++axis) {
    const int count = tok.next_int("axis voxel count");
    if (count <= 0) tok.fail("axis voxel count must be positive (Bohr units)");
    vol.n[axis] = count;
    double step[3];
    for (double &s : step) s = tok.next_double("axis step");
    for (int i = 0; i < 3; ++i)
      if (i != axis && std::abs(step[i]) > 1e-12)
        tok.fail("axis step vectors must be axis-aligned");
    if (!(step[axis] > 0.0)) tok.fail("axis step must be positive");
    vol.step[axis] = step[axis];
  }

  for (int a = 0; a < natoms; ++a) {
    CubeAtom atom;
    atom.number = tok.next_int("atomic number");
    atom.charge = tok.next_double("atomic charge");
    for (double &c : atom.position) c = tok.next_double("atom position");
    vol.atoms.push_back(atom);
  }

  const std::size_t expected = static_cast<std::size_t>(vol.n[0]) *
                               static_cast<std::size_t>(vol.n[1]) *
                               static_cast<std::size_t>(vol.n[2]);
  vol.values.reserve(expected);
  std::string t;
  while (vol.values.size() < expected) {
    if (!tok.next(t))
      tok.fail("value stream ended after " +
               std::to_string(vol.values.size()) + " of " +
               std::to_string(expected) + " values");
    try {
      vol.values.push_back(std::stod(t));
    } catch (const std::exception &) {
      tok.fail("bad value '" + t + "' in value stream");
    }
  }
  if (!tok.at_end())
    tok.fail("trailing data after " + std::to_string(expected) + " values");
  return vol;
}

CubeVolume read_cube_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cube file '" + path + "'");
  return read_cube(in);
}

void write_cube(std::ostream &out, const CubeVolume &vol) {
  out << vol.comments[0] << '\n' << vol.comments[1] << '\n';
  char buf[128];
  std::snprintf(buf, sizeof buf, "%5zu %11.6f %11.6f %11.6f\n",
                vol.atoms.size(), vol.origin[0], vol.origin[1], vol.origin[2]);
  out << buf;
  for (int axis = 0; axis < 3; ++axis) {
    double step[3] = {0, 0, 0};
    step[axis] = vol.step[axis];
    std::snprintf(buf, sizeof buf, "%5d %11.6f %11.6f %11.6f\n", vol.n[axis],
                  step[0], step[1], step[2]);
    out << buf;
  }
  for (const auto &a : vol.atoms) {
    std::snprintf(buf, sizeof buf, "%5d %11.6f %11.6f %11.6f %11.6f\n",
                  a.number, a.charge, a.position[0], a.position[1],
                  a.position[2]);
    out << buf;
  }
  int per_line = 0;
  for (std::size_t i = 0; i < vol.values.size(); ++i) {
    std::snprintf(buf, sizeof buf, " %12.5E", vol.values[i]);
    out << buf;
    if (++per_line == 6 || i + 1 == vol.values.size()) {
      out << '\n';
      per_line = 0;
    }
  }
}

void write_cube_file(const std::string &path, const CubeVolume &vol) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cube file '" + path + "'");
  write_cube(out, vol);
}

DensityField to_density(const CubeVolume &vol, int *clamped_voxels) {
  GridDensity g;
  g.n = vol.n;
  g.h = vol.step;
  g.origin = vol.origin;
  g.values = vol.values;
  int clamped = 0;
  for (auto &v : g.values)
    if (v < 0.0) {
      v = 0.0;
      ++clamped;
    }
  g.clamped_voxels = clamped;
  if (clamped_voxels) *clamped_voxels = clamped;
  return DensityField::grid(std::move(g), "cube");
}

} // namespace lox::cube
