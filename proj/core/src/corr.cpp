#include "lox/functionals.hpp"

#include "lox/quadrature.hpp"
#include "lox/screened_kernel.hpp"
#include "lox/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lox::functionals {

namespace {

constexpr double kPi = std::numbers::pi;

struct OuterNodes {
  std::vector<double> r, w;    // composite Gauss nodes over [0, r_max]
  std::vector<double> rho;     // density at nodes
  std::vector<double> rho13;   // rho^(1/3)
  std::vector<double> ball;    // screening radius R = c / rho^(1/3), inf at 0
};

/// Outer nodes: uniform panels over the density core [0, r_core], then
/// geometrically growing panels out to r_max. The far region matters even
/// where rho is negligible because the screening radius R(x) grows like
/// rho(x)^(-1/3); truncation error decays like r_max^-4.
OuterNodes make_outer(const RadialProfile &rho, double r_core, double r_max,
                      int core_panels) {
  OuterNodes out;
  const double cc = kernel::coulomb_unit_radius();
  auto add_panel = [&](double a, double b) {
    const auto gl = quad::gauss_legendre(16, a, b);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double v = std::max(0.0, rho(gl.x[i]));
      out.r.push_back(gl.x[i]);
      out.w.push_back(gl.w[i]);
      out.rho.push_back(v);
      out.rho13.push_back(std::cbrt(v));
      out.ball.push_back(v > 0.0 ? cc / std::cbrt(v)
                                 : std::numeric_limits<double>::infinity());
    }
  };
  for (int p = 0; p < core_panels; ++p)
    add_panel(r_core * p / core_panels, r_core * (p + 1) / core_panels);
  double a = r_core;
  double step = 2.0 * r_core / core_panels;
  while (a < r_max) {
    const double b = std::min(r_max, a + step);
    add_panel(a, b);
    a = b;
    step *= 1.35;
  }
  return out;
}

/// Corr = 3 pi * iint r s (rho(r)-rho(s)) K(r,s) dr ds with
/// K = int_{|r-s|}^{min(r+s, wcap)} [psi(w u_r) - psi(w u_s)] w^-3 dw,
/// u = rho^(1/3)/c. The diagonal is regular: psi(x) ~ x^3 cancels w^-3.
double corr_value(const OuterNodes &n, const quad::GaussRule &inner_ref) {
  const double inv_c = 1.0 / kernel::coulomb_unit_radius();
  std::vector<double> terms;
  terms.reserve(n.r.size() * (n.r.size() - 1) / 2);
  for (std::size_t i = 0; i < n.r.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double drho = n.rho[i] - n.rho[j];
      if (drho == 0.0) continue;
      const double wlo = std::abs(n.r[i] - n.r[j]);
      const double wcap = std::max(n.ball[i], n.ball[j]);
      const double whi = std::min(n.r[i] + n.r[j], wcap);
      if (!(whi > wlo)) continue;

      // split at the two psi support edges falling inside (wlo, whi)
      double bps[4] = {wlo, whi, whi, whi};
      int nb = 2;
      for (double edge : {n.ball[i], n.ball[j]})
        if (edge > wlo && edge < whi) bps[nb++] = edge;
      std::sort(bps, bps + nb);

      const double ui = n.rho13[i] * inv_c;
      const double uj = n.rho13[j] * inv_c;
      double K = 0.0;
      for (int seg = 0; seg + 1 < nb; ++seg) {
        const double a = bps[seg], b = bps[seg + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t q = 0; q < inner_ref.x.size(); ++q) {
          const double w = mid + half * inner_ref.x[q];
          const double f =
              (kernel::psi(w * ui) - kernel::psi(w * uj)) / (w * w * w);
          K += inner_ref.w[q] * half * f;
        }
      }
      terms.push_back(2.0 * n.w[i] * n.w[j] * n.r[i] * n.r[j] * drho * K);
    }
  }
  return 3.0 * kPi * pairwise_sum(terms);
}

} // namespace

CorrResult corr_exact(const DensityField &rho, const CorrOptions &opt) {
  if (rho.kind() != DensityKind::analytic_radial)
    throw std::invalid_argument("corr_exact: only radial densities supported");
  const auto &profile = rho.radial().rho;

  double r_core;
  if (!std::isfinite(rho.particle_number())) {
    // constant background: any window works, the integrand vanishes
    r_core = 10.0;
  } else {
    r_core = rho.effective_radius();
  }
  const double r_max =
      opt.r_max > 0.0 ? opt.r_max : 1.5 * r_core + 45.0;
  r_core = std::min(r_core, r_max);

  // reference inner rule on [-1, 1]
  auto inner = quad::gauss_legendre(opt.inner_gauss, -1.0, 1.0);

  const auto coarse = make_outer(profile, r_core, r_max, opt.outer_panels);
  const auto fine = make_outer(profile, r_core, r_max, 2 * opt.outer_panels);
  const double v1 = corr_value(coarse, inner);
  const double v2 = corr_value(fine, inner);

  CorrResult res;
  res.value = v2;
  res.error_estimate = std::abs(v2 - v1);
  res.r_max = r_max;
  return res;
}

} // namespace lox::functionals
