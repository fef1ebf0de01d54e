#include "lox/density.hpp"

#include "lox/quadrature.hpp"
#include "lox/summation.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lox {

namespace {

constexpr double kPi = std::numbers::pi;

double radial_extent(const RadialProfile &rho) {
  if (std::isfinite(rho.support_hi)) return rho.support_hi;
  double fmax = std::abs(rho(0.0));
  for (double u = 1e-3; u <= 1e6; u *= 1.25)
    fmax = std::max(fmax, std::abs(rho(u)));
  if (fmax == 0.0) return 1.0;
  double ext = 0.0;
  for (double u = 1e-3; u <= 1e6; u *= 1.25)
    if (std::abs(rho(u)) > 1e-14 * fmax) ext = u;
  return 1.05 * ext + 0.5;
}

} // namespace

DensityField DensityField::analytic(AnalyticRadialDensity density,
                                    double particle_number,
                                    std::string label) {
  DensityField f;
  f.kind_ = DensityKind::analytic_radial;
  f.radial_ = std::move(density);
  f.particle_number_ = particle_number;
  f.label_ = std::move(label);
  if (std::isfinite(particle_number)) {
    const double integral = f.integral();
    if (std::abs(integral - particle_number) >
        1e-6 * std::max(1.0, std::abs(particle_number)))
      throw std::invalid_argument(
          "DensityField: declared particle number " +
          std::to_string(particle_number) + " differs from quadrature " +
          std::to_string(integral));
  }
  return f;
}

DensityField DensityField::grid(GridDensity density, std::string label) {
  DensityField f;
  f.kind_ = DensityKind::cartesian_grid;
  const auto expected = static_cast<std::size_t>(density.n[0]) *
                        static_cast<std::size_t>(density.n[1]) *
                        static_cast<std::size_t>(density.n[2]);
  if (density.values.size() != expected)
    throw std::invalid_argument("DensityField: grid size mismatch");
  for (double v : density.values)
    if (v < 0.0)
      throw std::invalid_argument("DensityField: negative grid density");
  f.grid_ = std::move(density);
  f.label_ = std::move(label);
  f.particle_number_ = f.integral();
  return f;
}

const AnalyticRadialDensity &DensityField::radial() const {
  if (kind_ != DensityKind::analytic_radial)
    throw std::logic_error("DensityField: not an analytic radial field");
  return radial_;
}

const GridDensity &DensityField::grid_data() const {
  if (kind_ != DensityKind::cartesian_grid)
    throw std::logic_error("DensityField: not a grid field");
  return grid_;
}

double DensityField::effective_radius() const {
  return radial_extent(radial().rho);
}

double DensityField::integral() const {
  if (kind_ == DensityKind::analytic_radial) {
    const double hi = radial_extent(radial_.rho);
    return 4.0 * kPi *
           quad::integrate(
               [&](double r) { return r * r * radial_.rho(r); }, 0.0, hi,
               1e-10);
  }
  std::vector<double> terms;
  terms.reserve(grid_.values.size());
  const double cell = grid_.h[0] * grid_.h[1] * grid_.h[2];
  for (double v : grid_.values) terms.push_back(v * cell);
  return pairwise_sum(terms);
}

DensityField gaussian_density(double width, double particles) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be > 0");
  const double a = particles / (width * width * width);
  const double w2 = width * width;
  AnalyticRadialDensity d;
  d.rho = make_profile([a, w2](double r) { return a * std::exp(-kPi * r * r / w2); },
                       0.0, std::numeric_limits<double>::infinity(), "gaussian");
  d.drho = make_profile(
      [a, w2](double r) {
        return -2.0 * kPi * r / w2 * a * std::exp(-kPi * r * r / w2);
      },
      0.0, std::numeric_limits<double>::infinity(), "gaussian_d");
  return DensityField::analytic(std::move(d), particles,
                                "gaussian(w=" + std::to_string(width) + ")");
}

DensityField exponential_density(double width, double particles) {
  if (!(width > 0.0)) throw std::invalid_argument("exponential width must be > 0");
  const double a = particles / (8.0 * kPi * width * width * width);
  AnalyticRadialDensity d;
  d.rho = make_profile([a, width](double r) { return a * std::exp(-r / width); },
                       0.0, std::numeric_limits<double>::infinity(), "exp");
  d.drho = make_profile(
      [a, width](double r) { return -a / width * std::exp(-r / width); }, 0.0,
      std::numeric_limits<double>::infinity(), "exp_d");
  return DensityField::analytic(std::move(d), particles,
                                "exponential(w=" + std::to_string(width) + ")");
}

DensityField uniform_ball_density(double radius, double particles) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be > 0");
  const double rho0 = 3.0 * particles / (4.0 * kPi * radius * radius * radius);
  AnalyticRadialDensity d;
  d.rho = make_profile([rho0](double) { return rho0; }, 0.0, radius, "ball");
  d.drho = make_profile([](double) { return 0.0; }, 0.0, radius, "ball_d");
  d.regularity = EdgeRegularity::discontinuous;
  return DensityField::analytic(std::move(d), particles,
                                "uniform_ball(R=" + std::to_string(radius) + ")");
}

DensityField unit_volume_ball_density(double particles) {
  return uniform_ball_density(std::cbrt(3.0 / (4.0 * kPi)), particles);
}

DensityField smoothed_ball_density(double radius, double edge_width,
                                   double particles) {
  if (!(radius > 0.0) || !(edge_width > 0.0))
    throw std::invalid_argument("smoothed ball needs positive radius and width");
  auto shape = [radius, edge_width](double r) {
    return 0.5 * (1.0 - std::tanh((r - radius) / edge_width));
  };
  const double hi = radius + 14.0 * edge_width;
  const double mass =
      4.0 * kPi *
      quad::integrate([&](double r) { return r * r * shape(r); }, 0.0, hi,
                      1e-12);
  const double a = particles / mass;
  AnalyticRadialDensity d;
  d.rho = make_profile([a, shape](double r) { return a * shape(r); }, 0.0, hi,
                       "smoothed_ball");
  d.drho = make_profile(
      [a, radius, edge_width](double r) {
        const double t = std::cosh((r - radius) / edge_width);
        return -a / (2.0 * edge_width * t * t);
      },
      0.0, hi, "smoothed_ball_d");
  return DensityField::analytic(std::move(d), particles,
                                "smoothed_ball(R=" + std::to_string(radius) +
                                    ",w=" + std::to_string(edge_width) + ")");
}

DensityField cauchy_density(double particles) {
  // int (1+r^2)^-4 d^3x = 4 pi int r^2 (1+r^2)^-4 dr = pi^2 / 8
  const double a = particles / (kPi * kPi / 8.0);
  AnalyticRadialDensity d;
  d.rho = make_profile(
      [a](double r) {
        const double u = 1.0 + r * r;
        return a / (u * u * u * u);
      },
      0.0, std::numeric_limits<double>::infinity(), "cauchy");
  d.drho = make_profile(
      [a](double r) {
        const double u = 1.0 + r * r;
        return -8.0 * a * r / (u * u * u * u * u);
      },
      0.0, std::numeric_limits<double>::infinity(), "cauchy_d");
  return DensityField::analytic(std::move(d), particles, "cauchy");
}

DensityField constant_density(double value) {
  if (!(value >= 0.0)) throw std::invalid_argument("density must be >= 0");
  AnalyticRadialDensity d;
  d.rho = make_profile([value](double) { return value; }, 0.0,
                       std::numeric_limits<double>::infinity(), "constant");
  d.drho = make_profile([](double) { return 0.0; }, 0.0,
                        std::numeric_limits<double>::infinity(), "constant_d");
  return DensityField::analytic(std::move(d),
                                std::numeric_limits<double>::infinity(),
                                "constant(" + std::to_string(value) + ")");
}

DensityField tf_scaled(const DensityField &base, double Z) {
  if (!(Z > 0.0)) throw std::invalid_argument("Z must be > 0");
  if (base.kind() == DensityKind::analytic_radial) {
    const auto &b = base.radial();
    const double s = std::cbrt(Z);
    AnalyticRadialDensity d;
    d.regularity = b.regularity;
    d.rho = make_profile([rho = b.rho, Z, s](double r) { return Z * Z * rho(s * r); },
                         b.rho.support_lo / s, b.rho.support_hi / s,
                         b.rho.label + "_tf");
    d.drho = make_profile(
        [drho = b.drho, Z, s](double r) { return Z * Z * s * drho(s * r); },
        b.drho.support_lo / s, b.drho.support_hi / s, b.drho.label + "_tf");
    return DensityField::analytic(std::move(d), Z * base.particle_number(),
                                  base.label() + "*Z" + std::to_string(Z));
  }
  // Grid fields scale exactly: same samples, rescaled spacing and amplitude.
  GridDensity g = base.grid_data();
  const double s = std::cbrt(Z);
  for (auto &h : g.h) h /= s;
  for (auto &o : g.origin) o /= s;
  for (auto &v : g.values) v *= Z * Z;
  return DensityField::grid(std::move(g),
                            base.label() + "*Z" + std::to_string(Z));
}

DensityField dilated(const DensityField &base, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  const auto &b = base.radial();
  const double l3 = lambda * lambda * lambda;
  AnalyticRadialDensity d;
  d.regularity = b.regularity;
  d.rho = make_profile(
      [rho = b.rho, l3, lambda](double r) { return l3 * rho(lambda * r); },
      b.rho.support_lo / lambda, b.rho.support_hi / lambda,
      b.rho.label + "_dil");
  d.drho = make_profile(
      [drho = b.drho, l3, lambda](double r) {
        return l3 * lambda * drho(lambda * r);
      },
      b.drho.support_lo / lambda, b.drho.support_hi / lambda,
      b.drho.label + "_dild");
  return DensityField::analytic(std::move(d), base.particle_number(),
                                base.label() + "@" + std::to_string(lambda));
}

DensityField amplitude_scaled(const DensityField &base, double factor) {
  if (!(factor >= 0.0)) throw std::invalid_argument("factor must be >= 0");
  const auto &b = base.radial();
  AnalyticRadialDensity d;
  d.regularity = b.regularity;
  d.rho = make_profile([rho = b.rho, factor](double r) { return factor * rho(r); },
                       b.rho.support_lo, b.rho.support_hi, b.rho.label + "_c");
  d.drho = make_profile(
      [drho = b.drho, factor](double r) { return factor * drho(r); },
      b.drho.support_lo, b.drho.support_hi, b.drho.label + "_cd");
  return DensityField::analytic(std::move(d), factor * base.particle_number(),
                                base.label() + "x" + std::to_string(factor));
}

GridDensity sample_on_grid(const DensityField &field, double half, int n) {
  const auto &rho = field.radial().rho;
  GridDensity g;
  g.n = {n, n, n};
  const double h = 2.0 * half / n;
  g.h = {h, h, h};
  // voxel centers
  const double o = -half + 0.5 * h;
  g.origin = {o, o, o};
  g.values.resize(static_cast<std::size_t>(n) * n * n);
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double x = o + i * h, y = o + j * h, z = o + k * h;
        g.values[idx++] = rho(std::sqrt(x * x + y * y + z * z));
      }
  return g;
}

DensityField parse_density_spec(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw std::invalid_argument(std::string("density spec: ") + e.what());
  }
  const std::string type = j.at("type").get<std::string>();
  const double N = j.value("N", 1.0);
  if (!(N > 0.0)) throw std::invalid_argument("density spec: N must be > 0");
  if (type == "gaussian") return gaussian_density(j.value("width", 1.0), N);
  if (type == "exponential")
    return exponential_density(j.value("width", 1.0), N);
  if (type == "uniform_ball") {
    if (j.contains("radius")) return uniform_ball_density(j["radius"], N);
    return unit_volume_ball_density(N);
  }
  if (type == "smoothed_ball")
    return smoothed_ball_density(j.value("radius", 1.0),
                                 j.value("edge_width", 0.1), N);
  throw std::invalid_argument("density spec: unknown type '" + type + "'");
}

} // namespace lox
