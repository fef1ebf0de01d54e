#pragma once

#include "lox/radial.hpp"

#include <array>
#include <string>
#include <vector>

namespace lox {

enum class DensityKind { analytic_radial, cartesian_grid };

/// Edge regularity of an analytic radial density; a discontinuous edge makes
/// the |grad rho^(1/3)|^2 functional divergent under refinement.
enum class EdgeRegularity { smooth, discontinuous };

struct AnalyticRadialDensity {
  RadialProfile rho;
  RadialProfile drho; ///< radial derivative of rho
  EdgeRegularity regularity = EdgeRegularity::smooth;
};

/// Uniform Cartesian sampling; values in z-fastest order, voxel centers at
/// origin + (i*hx, j*hy, k*hz).
struct GridDensity {
  std::array<int, 3> n{0, 0, 0};
  std::array<double, 3> h{0, 0, 0};
  std::array<double, 3> origin{0, 0, 0};
  std::vector<double> values;
  int clamped_voxels = 0;

  double at(int i, int j, int k) const {
    return values[static_cast<std::size_t>((i * n[1] + j)) *
                      static_cast<std::size_t>(n[2]) +
                  static_cast<std::size_t>(k)];
  }
};

/// Non-negative density on 3-space, analytic-radial or grid-sampled.
/// particle_number is the declared integral; construction verifies it
/// against the field's own quadrature to 1e-6 relative (densities with
/// infinite mass, e.g. a constant background, skip the check).
class DensityField {
public:
  static DensityField analytic(AnalyticRadialDensity density,
                               double particle_number, std::string label);
  static DensityField grid(GridDensity density, std::string label);

  DensityKind kind() const { return kind_; }
  double particle_number() const { return particle_number_; }
  const std::string &label() const { return label_; }

  const AnalyticRadialDensity &radial() const;
  const GridDensity &grid_data() const;

  /// Outer radius beyond which the density is negligible (analytic fields).
  double effective_radius() const;

  /// Integral of the density by the field's own quadrature.
  double integral() const;

private:
  DensityKind kind_ = DensityKind::analytic_radial;
  AnalyticRadialDensity radial_;
  GridDensity grid_;
  double particle_number_ = 0.0;
  std::string label_;
};

/// rho(r) = (N / w^3) exp(-pi r^2 / w^2); width 1 gives exp(-pi r^2).
DensityField gaussian_density(double width = 1.0, double particles = 1.0);

/// rho(r) = N / (8 pi w^3) exp(-r / w).
DensityField exponential_density(double width = 1.0, double particles = 1.0);

/// Constant density 3N/(4 pi R^3) on a ball of radius R (hard edge).
DensityField uniform_ball_density(double radius, double particles = 1.0);

/// Radius (3/(4 pi))^(1/3): the unit-volume ball, so rho = N inside.
DensityField unit_volume_ball_density(double particles = 1.0);

/// Tanh-mollified ball edge of width w at radius R.
DensityField smoothed_ball_density(double radius, double edge_width,
                                   double particles = 1.0);

/// rho(r) = N (1 + r^2)^-4 * normalization; slowly decaying test profile.
DensityField cauchy_density(double particles = 1.0);

/// Constant density everywhere (infinite mass); usable only with operations
/// that tolerate it, e.g. the correction-term quadrature.
DensityField constant_density(double value);

/// Thomas-Fermi ansatz Z^2 rho(Z^(1/3) x); multiplies particle number by Z.
DensityField tf_scaled(const DensityField &base, double Z);

/// Mass-preserving dilation lambda^3 rho(lambda x).
DensityField dilated(const DensityField &base, double lambda);

/// Amplitude scaling c * rho.
DensityField amplitude_scaled(const DensityField &base, double factor);

/// Samples an analytic field onto a cube-shaped grid of extent
/// [-half, half]^3 with n points per axis.
GridDensity sample_on_grid(const DensityField &field, double half, int n);

/// Parses the analytic density spec text format: a JSON object
/// {"type": "gaussian"|"exponential"|"uniform_ball"|"smoothed_ball",
///  "N": number, parameters...}.
DensityField parse_density_spec(const std::string &json_text);

} // namespace lox
