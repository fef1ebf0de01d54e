#include "lox/functionals.hpp"

#include "lox/errors.hpp"
#include "lox/maximal.hpp"
#include "lox/quadrature.hpp"
#include "lox/screened_kernel.hpp"
#include "lox/summation.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lox::functionals {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClassicLO = 1.68;   // Lieb-Oxford 1980
constexpr double kChanHandy = 1.64;   // Chan-Handy 1999
constexpr double kDensityFloor = 1e-14;

double radial_peak(const RadialProfile &rho) {
  double m = std::abs(rho(0.0));
  for (double u = 1e-3; u <= 1e6; u *= 1.25) m = std::max(m, std::abs(rho(u)));
  return m;
}

double integrate_radial(const DensityField &field,
                        const std::function<double(double)> &f,
                        double rel_tol = 1e-10) {
  const double hi = field.effective_radius();
  return 4.0 * kPi *
         quad::integrate([&](double r) { return r * r * f(r); }, 0.0, hi,
                         rel_tol);
}

struct GridGradients {
  std::vector<double> norm; ///< |grad| per voxel
};

/// Second-order gradient magnitude of a scalar grid field; central
/// differences inside, one-sided at boundaries.
GridGradients grid_gradient_norm(const GridDensity &g,
                                 const std::vector<double> &field) {
  const int nx = g.n[0], ny = g.n[1], nz = g.n[2];
  auto at = [&](int i, int j, int k) {
    return field[static_cast<std::size_t>((i * ny + j)) *
                     static_cast<std::size_t>(nz) +
                 static_cast<std::size_t>(k)];
  };
  auto diff = [](double m1, double p1, double h) { return (p1 - m1) / (2 * h); };
  auto one_sided = [](double f0, double f1, double f2, double h) {
    return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h);
  };
  GridGradients out;
  out.norm.resize(field.size());
  std::size_t idx = 0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k, ++idx) {
        double gx, gy, gz;
        if (i == 0)
          gx = nx > 2 ? one_sided(at(0, j, k), at(1, j, k), at(2, j, k), g.h[0]) : 0.0;
        else if (i == nx - 1)
          gx = nx > 2 ? -one_sided(at(nx - 1, j, k), at(nx - 2, j, k), at(nx - 3, j, k), g.h[0]) : 0.0;
        else
          gx = diff(at(i - 1, j, k), at(i + 1, j, k), g.h[0]);
        if (j == 0)
          gy = ny > 2 ? one_sided(at(i, 0, k), at(i, 1, k), at(i, 2, k), g.h[1]) : 0.0;
        else if (j == ny - 1)
          gy = ny > 2 ? -one_sided(at(i, ny - 1, k), at(i, ny - 2, k), at(i, ny - 3, k), g.h[1]) : 0.0;
        else
          gy = diff(at(i, j - 1, k), at(i, j + 1, k), g.h[1]);
        if (k == 0)
          gz = nz > 2 ? one_sided(at(i, j, 0), at(i, j, 1), at(i, j, 2), g.h[2]) : 0.0;
        else if (k == nz - 1)
          gz = nz > 2 ? -one_sided(at(i, j, nz - 1), at(i, j, nz - 2), at(i, j, nz - 3), g.h[2]) : 0.0;
        else
          gz = diff(at(i, j, k - 1), at(i, j, k + 1), g.h[2]);
        out.norm[idx] = std::sqrt(gx * gx + gy * gy + gz * gz);
      }
  return out;
}

} // namespace

double f_rho43(const DensityField &rho) {
  if (rho.kind() == DensityKind::analytic_radial) {
    const auto &p = rho.radial().rho;
    return integrate_radial(rho, [&](double r) {
      const double v = p(r);
      return v <= 0.0 ? 0.0 : std::pow(v, 4.0 / 3.0);
    });
  }
  const auto &g = rho.grid_data();
  const double cell = g.h[0] * g.h[1] * g.h[2];
  std::vector<double> terms;
  terms.reserve(g.values.size());
  for (double v : g.values)
    terms.push_back(v <= 0.0 ? 0.0 : std::pow(v, 4.0 / 3.0) * cell);
  return pairwise_sum(terms);
}

double f_grad_l1(const DensityField &rho) {
  if (rho.kind() == DensityKind::analytic_radial) {
    const auto &d = rho.radial();
    double value = integrate_radial(
        rho, [&](double r) { return std::abs(d.drho(r)); });
    if (d.regularity == EdgeRegularity::discontinuous &&
        std::isfinite(d.rho.support_hi)) {
      // total-variation contribution of the density jump at the edge
      const double R = d.rho.support_hi;
      const double jump = std::abs(d.rho(R * (1.0 - 1e-12)));
      value += 4.0 * kPi * R * R * jump;
    }
    return value;
  }
  const auto &g = rho.grid_data();
  const auto grad = grid_gradient_norm(g, g.values);
  const double cell = g.h[0] * g.h[1] * g.h[2];
  std::vector<double> terms;
  terms.reserve(grad.norm.size());
  for (double v : grad.norm) terms.push_back(v * cell);
  return pairwise_sum(terms);
}

Grad13Result f_grad13_l2(const DensityField &rho) {
  if (rho.kind() == DensityKind::analytic_radial) {
    const auto &d = rho.radial();
    if (d.regularity == EdgeRegularity::discontinuous) {
      // Probe the integral under 1D mesh refinement; a hard edge makes it
      // grow without bound (roughly doubling per refinement).
      const double hi = rho.effective_radius() + 1.0;
      auto refine = [&](int n) {
        const double h = hi / n;
        std::vector<double> terms;
        for (int i = 1; i + 1 < n; ++i) {
          const double r = i * h;
          const double cm = std::cbrt(std::max(0.0, d.rho(r - h)));
          const double cp = std::cbrt(std::max(0.0, d.rho(r + h)));
          const double gr = (cp - cm) / (2.0 * h);
          terms.push_back(4.0 * kPi * r * r * gr * gr * h);
        }
        return pairwise_sum(terms);
      };
      const double f1 = refine(4096), f2 = refine(8192);
      const double ratio = f1 > 0.0 ? f2 / f1 : 1.0;
      return {f2, ratio > 1.4, ratio};
    }
    const double peak = radial_peak(d.rho);
    const double floor = kDensityFloor * peak;
    const double value = integrate_radial(rho, [&](double r) {
      const double v = d.rho(r);
      if (v < floor) return 0.0;
      const double dv = d.drho(r);
      // |grad rho^(1/3)|^2 = rho^(-4/3) rho'^2 / 9
      return dv * dv / (9.0 * std::pow(v, 4.0 / 3.0));
    });
    return {value, false, 1.0};
  }
  const auto &g = rho.grid_data();
  double peak = 0.0;
  for (double v : g.values) peak = std::max(peak, v);
  const double floor = kDensityFloor * peak;
  std::vector<double> croot(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i)
    croot[i] = std::cbrt(std::max(0.0, g.values[i]));
  const auto grad = grid_gradient_norm(g, croot);
  const double cell = g.h[0] * g.h[1] * g.h[2];
  std::vector<double> terms(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i)
    terms[i] = g.values[i] < floor ? 0.0 : grad.norm[i] * grad.norm[i] * cell;
  return {pairwise_sum(terms), false, 1.0};
}

double direct_coulomb(const DensityField &rho) {
  if (rho.kind() != DensityKind::analytic_radial)
    throw std::invalid_argument(
        "direct_coulomb: only radial densities are supported");
  const auto &p = rho.radial().rho;
  const double hi = rho.effective_radius();
  // D = (4 pi)^2 int_0^inf r rho(r) [int_0^r s^2 rho(s) ds] dr
  const double outer = quad::integrate(
      [&](double r) {
        const double q = quad::integrate(
            [&](double s) { return s * s * p(s); }, 0.0, r, 1e-11);
        return r * p(r) * q;
      },
      0.0, hi, 1e-10);
  return 16.0 * kPi * kPi * outer;
}

const char *variant_name(BoundVariant v) {
  switch (v) {
  case BoundVariant::classic_168: return "classic_168";
  case BoundVariant::classic_164: return "classic_164";
  case BoundVariant::grad_l1: return "grad_l1";
  case BoundVariant::grad13_l2: return "grad13_l2";
  case BoundVariant::chain_l18: return "chain_l18";
  case BoundVariant::chain_l14: return "chain_l14";
  }
  return "unknown";
}

BoundVariant variant_from_name(const std::string &name) {
  for (auto v : {BoundVariant::classic_168, BoundVariant::classic_164,
                 BoundVariant::grad_l1, BoundVariant::grad13_l2,
                 BoundVariant::chain_l18, BoundVariant::chain_l14})
    if (name == variant_name(v)) return v;
  throw std::invalid_argument("unknown bound variant '" + name + "'");
}

BoundReport evaluate_bound(const DensityField &rho, BoundVariant variant,
                           std::optional<double> alpha) {
  BoundReport rep;
  rep.density_label = rho.label();
  rep.variant = variant;
  rep.f_rho43 = f_rho43(rho);
  rep.lda_constant = kernel::derive_lda_constant().value;

  const bool needs_g1 = variant == BoundVariant::grad_l1;
  const bool needs_g13 = variant == BoundVariant::grad13_l2 ||
                         variant == BoundVariant::chain_l18 ||
                         variant == BoundVariant::chain_l14;
  if (needs_g1 || rho.kind() == DensityKind::analytic_radial)
    rep.f_grad_l1 = f_grad_l1(rho);
  if (needs_g13 || rho.kind() == DensityKind::analytic_radial) {
    const auto g13 = f_grad13_l2(rho);
    rep.f_grad13_l2 = g13.value;
    rep.grad13_divergent = g13.divergent;
    if (needs_g13 && g13.divergent)
      throw std::invalid_argument(
          "evaluate_bound: |grad rho^(1/3)|^2 diverges for this density; "
          "the " + std::string(variant_name(variant)) + " variant is undefined");
  }

  const double f43 = rep.f_rho43;
  const double classic = -kClassicLO * f43;

  switch (variant) {
  case BoundVariant::classic_168:
    rep.constant_used = kClassicLO;
    rep.assembled_value = rep.bound_value = classic;
    return rep;
  case BoundVariant::classic_164:
    rep.constant_used = kChanHandy;
    rep.assembled_value = rep.bound_value = -kChanHandy * f43;
    return rep;
  case BoundVariant::chain_l18: {
    const double c2 =
        kernel::derive_grad13_l2_coefficient(maximal::hl_constant_heat());
    const double c6 = kernel::derive_chain_constants(c2).c6;
    rep.constant_used = c6;
    rep.assembled_value = rep.bound_value =
        -rep.lda_constant * f43 -
        c6 * std::pow(rep.f_grad13_l2, 0.125) * std::pow(f43, 0.875);
    return rep;
  }
  case BoundVariant::chain_l14: {
    const double c2 =
        kernel::derive_grad13_l2_coefficient(maximal::hl_constant_heat());
    const double c7 = kernel::derive_chain_constants(c2).c7;
    rep.constant_used = c7;
    rep.assembled_value = rep.bound_value =
        -rep.lda_constant * f43 -
        c7 * std::pow(rep.f_grad13_l2, 0.25) * std::pow(f43, 0.75);
    return rep;
  }
  case BoundVariant::grad_l1:
  case BoundVariant::grad13_l2:
    break;
  }

  const bool is_l1 = variant == BoundVariant::grad_l1;
  const double coeff =
      is_l1 ? kernel::derive_grad_l1_coefficient()
            : kernel::derive_grad13_l2_coefficient(maximal::hl_constant_heat());
  const int power = is_l1 ? 3 : 2;
  const double fgrad = is_l1 ? rep.f_grad_l1 : rep.f_grad13_l2;
  rep.constant_used = coeff;

  if (alpha) {
    if (!(*alpha > 0.0))
      throw std::invalid_argument("evaluate_bound: alpha must be > 0");
    rep.alpha = *alpha;
    rep.assembled_value = -(rep.lda_constant + *alpha) * f43 -
                          coeff * std::pow(*alpha, -power) * fgrad;
  } else {
    const auto opt = kernel::optimize_alpha(coeff, power, f43, fgrad);
    if (fgrad == 0.0) {
      // no gradient term: the alpha -> 0 limit, plain LDA-constant bound
      rep.assembled_value = rep.bound_value = -rep.lda_constant * f43;
      return rep;
    }
    rep.alpha = opt.alpha_opt;
    rep.assembled_value = -rep.lda_constant * f43 - opt.bound_correction;
  }

  rep.clamped = rep.alpha && *rep.alpha > kernel::alpha_validity_cap();
  rep.bound_value = rep.clamped ? classic : rep.assembled_value;
  return rep;
}

std::string bound_report_json(const BoundReport &rep) {
  nlohmann::json j;
  j["schema"] = "lox.bound_report/1";
  j["density"] = rep.density_label;
  j["variant"] = variant_name(rep.variant);
  j["f_rho43"] = rep.f_rho43;
  j["f_grad_l1"] = rep.f_grad_l1;
  j["f_grad13_l2"] = rep.f_grad13_l2;
  j["grad13_divergent"] = rep.grad13_divergent;
  if (rep.alpha) j["alpha"] = *rep.alpha;
  j["lda_constant"] = rep.lda_constant;
  j["constant_used"] = rep.constant_used;
  j["assembled_value"] = rep.assembled_value;
  j["bound_value"] = rep.bound_value;
  j["clamped"] = rep.clamped;
  return j.dump(2);
}

ChainReport verify_chain(const DensityField &rho,
                         const std::vector<double> &alphas,
                         const CorrOptions &opt) {
  const double cap = kernel::alpha_validity_cap();
  for (double a : alphas)
    if (!(a > 0.0) || a > cap + 1e-12)
      throw std::invalid_argument(
          "verify_chain: alpha must lie in (0, " + std::to_string(cap) + "]");

  ChainReport rep;
  rep.density_label = rho.label();
  const auto corr = corr_exact(rho, opt);
  rep.corr = corr.value;
  rep.corr_error = corr.error_estimate;
  rep.f_rho43 = f_rho43(rho);
  rep.f_grad_l1 = f_grad_l1(rho);
  const auto g13 = f_grad13_l2(rho);
  rep.f_grad13_l2 = g13.value;
  rep.grad13_divergent = g13.divergent;

  const double c1 = kernel::derive_grad_l1_coefficient();
  const double c2 =
      kernel::derive_grad13_l2_coefficient(maximal::hl_constant_heat());

  rep.all_hold = true;
  for (double a : alphas) {
    ChainRow row;
    row.alpha = a;
    row.rhs_grad_l1 = -a * rep.f_rho43 - c1 * std::pow(a, -3) * rep.f_grad_l1;
    row.rhs_grad13_l2 =
        -a * rep.f_rho43 - c2 * std::pow(a, -2) * rep.f_grad13_l2;
    const double slack =
        rep.corr_error + 1e-9 * (std::abs(rep.corr) + std::abs(row.rhs_grad_l1));
    row.margin_grad_l1 = rep.corr - row.rhs_grad_l1;
    row.margin_grad13_l2 = rep.corr - row.rhs_grad13_l2;
    row.holds_grad_l1 = row.margin_grad_l1 >= -slack;
    row.holds_grad13_l2 =
        rep.grad13_divergent ? true : row.margin_grad13_l2 >= -slack;
    if (!row.holds_grad_l1 || !row.holds_grad13_l2) rep.all_hold = false;
    rep.rows.push_back(row);
  }
  return rep;
}

ScalingReport tf_scaling_check(const DensityField &rho_tilde,
                               const std::vector<double> &z_values) {
  if (z_values.empty())
    throw std::invalid_argument("tf_scaling_check: need at least one Z");
  ScalingReport rep;
  rep.z_values = z_values;
  for (double z : z_values) {
    const auto scaled = tf_scaled(rho_tilde, z);
    rep.f43.push_back(f_rho43(scaled));
    rep.g1.push_back(f_grad_l1(scaled));
    rep.g13.push_back(f_grad13_l2(scaled).value);
  }
  auto slope = [&](const std::vector<double> &f) {
    const std::size_t n = z_values.size();
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = std::log(z_values[i]);
      const double y = std::log(f[i]);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  };
  rep.slope_f43 = slope(rep.f43);
  rep.slope_g1 = slope(rep.g1);
  rep.slope_g13 = slope(rep.g13);
  rep.max_slope_error = std::max({std::abs(rep.slope_f43 - 5.0 / 3.0),
                                  std::abs(rep.slope_g1 - 4.0 / 3.0),
                                  std::abs(rep.slope_g13 - 1.0)});
  return rep;
}

} // namespace lox::functionals
