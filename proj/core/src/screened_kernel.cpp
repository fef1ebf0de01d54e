#include "lox/screened_kernel.hpp"
#include "lox/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lox::kernel {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonnegative(double r, const char *who) {
  if (!(r >= 0.0))
    throw std::domain_error(std::string(who) + ": radius must be >= 0");
}

} // namespace

double coulomb_unit_radius() { return std::cbrt(3.0 / (4.0 * kPi)); }

double r_star() { return 0.5 * (std::sqrt(5.0) - 1.0); }

double phi(double r) {
  require_nonnegative(r, "phi");
  if (r <= 0.0 || r > 1.0) return 0.0;
  return -(0.5 * r * r + 1.0 / r - 1.5);
}

double psi(double r) {
  require_nonnegative(r, "psi");
  // r^4 * (r^2/2 + 1/r - 3/2); the 1/r pole is absorbed by r^4, and the
  // value extends continuously to 0 at r = 0.
  if (r <= 0.0 || r > 1.0) return 0.0;
  const double r3 = r * r * r;
  const double r4 = r3 * r;
  return 0.5 * r4 * r * r + r3 - 1.5 * r4;
}

PsiSplit psi_split(double r) {
  require_nonnegative(r, "psi_split");
  const double rs = r_star();
  const double peak = psi(rs);
  if (r <= rs) return {psi(r), 0.0};
  if (r <= 1.0) return {peak, peak - psi(r)};
  return {peak, peak};
}

double chi(double r) {
  require_nonnegative(r, "chi");
  if (r < r_star() || r > 1.0) return 0.0;
  return 3.0 * r * (1.0 - r) * (r * r + r - 1.0);
}

double chi_prime(double r) {
  require_nonnegative(r, "chi_prime");
  if (r < r_star() || r > 1.0) return 0.0;
  return -3.0 * (4.0 * r * r * r - 4.0 * r + 1.0);
}

CriticalPoints critical_points() {
  const double rs = r_star();
  const double ss = quad::find_root(
      [](double r) { return chi_prime(r); }, rs + 1e-6, 1.0 - 1e-6, 1e-10);
  return {rs, ss, psi(rs)};
}

double derive_corr1_coefficient() {
  return 3.0 * psi(r_star()) / coulomb_unit_radius();
}

double alpha_validity_cap() {
  return derive_corr1_coefficient() / r_star();
}

double grad_l1_coefficient_from_integral(double inner_integral) {
  const double rs = r_star();
  const double p = psi(rs);
  return 18.0 * kPi * p * p * p / (rs * rs * rs) * inner_integral;
}

double derive_grad_l1_coefficient() {
  // psi2'(t)/t = chi(t) on [r_star, 1]
  const double inner =
      quad::integrate([](double t) { return chi(t); }, r_star(), 1.0, 1e-8);
  return grad_l1_coefficient_from_integral(inner);
}

double derive_grad13_l2_coefficient(double maximal_constant) {
  if (!(maximal_constant > 0.0))
    throw std::domain_error(
        "derive_grad13_l2_coefficient: maximal constant must be > 0");
  const double rs = r_star();
  const double p = psi(rs);
  const double c = coulomb_unit_radius();
  return 27.0 * p * p * c * c / (2.0 * rs * rs) * maximal_constant;
}

AlphaOptimum optimize_alpha(double coefficient, int power, double f_rho43,
                            double f_grad) {
  if (!(coefficient > 0.0))
    throw std::domain_error("optimize_alpha: coefficient must be > 0");
  if (power != 2 && power != 3)
    throw std::domain_error("optimize_alpha: power must be 2 or 3");
  if (!(f_rho43 >= 0.0) || !(f_grad >= 0.0) || !std::isfinite(f_rho43) ||
      !std::isfinite(f_grad))
    throw std::domain_error("optimize_alpha: functionals must be finite, >= 0");

  const double prefactor =
      power == 3 ? (4.0 / 3.0) * std::pow(3.0 * coefficient, 0.25)
                 : 3.0 * std::pow(2.0, -2.0 / 3.0) *
                       std::cbrt(coefficient);

  if (f_grad == 0.0) return {0.0, 0.0, prefactor};
  if (f_rho43 == 0.0)
    throw std::invalid_argument(
        "optimize_alpha: f_rho43 = 0 with a nonzero gradient term is not a "
        "valid density");

  const double p = static_cast<double>(power);
  const double alpha =
      std::pow(p * coefficient * f_grad / f_rho43, 1.0 / (p + 1.0));
  const double g =
      alpha * f_rho43 + coefficient * std::pow(alpha, -p) * f_grad;
  return {alpha, g, prefactor};
}

ChainConstants derive_chain_constants(double grad13_l2_coefficient) {
  const double p3 =
      optimize_alpha(derive_grad_l1_coefficient(), 3, 1.0, 0.0).prefactor;
  const double p2 =
      optimize_alpha(grad13_l2_coefficient, 2, 1.0, 0.0).prefactor;
  const double c6 = p3 * std::pow(3.0, 0.25);
  const double c7 = std::pow(p2, 0.6) * std::pow(c6, 0.4);
  return {c6, c7};
}

LdaDerivation derive_lda_constant() {
  // |−2 pi c^2/5 − 3/(5c)| = 2 pi c^2/5 + 3/(5c) for c > 0
  auto h = [](double c) { return 2.0 * kPi * c * c / 5.0 + 3.0 / (5.0 * c); };
  auto res = quad::minimize(h, 0.05, 5.0, 50);
  // Newton polish on h' so the optimizer matches (3/(4 pi))^(1/3) to 1e-8.
  double c = res.x;
  for (int i = 0; i < 4; ++i) {
    const double g1 = 4.0 * kPi * c / 5.0 - 3.0 / (5.0 * c * c);
    const double g2 = 4.0 * kPi / 5.0 + 6.0 / (5.0 * c * c * c);
    c -= g1 / g2;
  }

  // D(mu, mu) = |B|^-2 (4 pi)^2 int_0^1 r (int_0^r s^2 ds) dr, |B| = 4 pi/3
  const double ball_volume = 4.0 * kPi / 3.0;
  const double nested = quad::integrate(
      [](double r) {
        const double inner = quad::integrate(
            [](double s) { return s * s; }, 0.0, r, 1e-10);
        return r * inner;
      },
      0.0, 1.0, 1e-10);
  const double d_mu_mu =
      (4.0 * kPi) * (4.0 * kPi) / (ball_volume * ball_volume) * nested;

  return {h(c), c, d_mu_mu};
}

} // namespace lox::kernel
