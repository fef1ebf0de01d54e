#pragma once

namespace lox::kernel {

/// Radius of the unit-density screening ball, c = (3/(4*pi))^(1/3).
double coulomb_unit_radius();

/// First zero of r^2 + r - 1, i.e. (sqrt(5)-1)/2. The screened kernel
/// switches from increasing to decreasing here.
double r_star();

/// Potential of a point charge screened by the uniform unit ball, with the
/// sign convention phi(r) = -(r^2/2 + 1/r - 3/2) on (0, 1], 0 outside.
double phi(double r);

/// psi(r) = -r^4 phi(r) = r^4 (r^2/2 + 1/r - 3/2) on (0, 1], 0 at r = 0 and
/// for r > 1. Non-negative; maximum at r_star.
double psi(double r);

struct PsiSplit {
  double psi1; ///< increasing part, constant psi(r_star) for r >= r_star
  double psi2; ///< increasing part, zero for r <= r_star
};

/// Decomposition psi = psi1 - psi2 into non-decreasing components.
PsiSplit psi_split(double r);

/// chi(r) = psi2'(r)/r = 3 r (1-r) (r^2+r-1) on [r_star, 1], 0 elsewhere.
double chi(double r);

/// Derivative of chi on (r_star, 1): -3 (4r^3 - 4r + 1); 0 elsewhere.
double chi_prime(double r);

struct CriticalPoints {
  double r_star;        ///< (sqrt(5)-1)/2
  double s_star;        ///< argmax of chi on [r_star, 1]
  double psi_at_r_star; ///< psi(r_star), about 0.04509
};

/// s_star located by root finding on chi' with bracket [r_star, 1].
CriticalPoints critical_points();

/// 3 psi(r_star) / c, the alpha*theta product (about 0.2180).
double derive_corr1_coefficient();

/// Largest alpha for which the split parameter satisfies theta > r_star,
/// i.e. 3 psi(r_star)/(c r_star) (about 0.3528).
double alpha_validity_cap();

/// 18 pi psi(r_star)^3 r_star^-3 * integral_{r_star}^1 psi2'(t)/t dt,
/// the |grad rho| correction coefficient (about 0.001206). The integral is
/// evaluated adaptively to relative tolerance 1e-8.
double derive_grad_l1_coefficient();

/// Same closed form with the inner integral supplied explicitly.
double grad_l1_coefficient_from_integral(double inner_integral);

/// 27 psi(r_star)^2 c^2 / (2 r_star^2) * maximal_constant, the
/// |grad rho^(1/3)|^2 correction coefficient (0.2097 with the heat-kernel
/// lemma constant 7.5831).
double derive_grad13_l2_coefficient(double maximal_constant);

struct AlphaOptimum {
  double alpha_opt;        ///< minimizer of g; 0 in the degenerate case
  double bound_correction; ///< g(alpha_opt)
  double prefactor;        ///< density-independent optimized constant
};

/// Minimizes g(alpha) = alpha*f_rho43 + coefficient*alpha^-power*f_grad in
/// closed form. power must be 2 or 3. f_grad = 0 degenerates to alpha = 0
/// with zero correction; f_rho43 = 0 with f_grad > 0 is rejected.
AlphaOptimum optimize_alpha(double coefficient, int power, double f_rho43,
                            double f_grad);

struct ChainConstants {
  double c6; ///< Schwarz-inserted constant (about 0.4304)
  double c7; ///< geometric interpolation constant (about 0.7651)
};

/// c6 = p3 * 3^(1/4) with p3 the optimized |grad rho| prefactor;
/// c7 = p2^(3/5) * c6^(2/5) with p2 the optimized prefactor belonging to
/// the supplied |grad rho^(1/3)|^2 coefficient.
ChainConstants derive_chain_constants(double grad13_l2_coefficient);

struct LdaDerivation {
  double value;   ///< (3/5)(9 pi/2)^(1/3), about 1.45079
  double c_opt;   ///< optimizer, equals (3/(4 pi))^(1/3)
  double d_mu_mu; ///< D(mu, mu) for the unit ball, 3/5
};

/// Minimizes the magnitude of -2 pi c^2/5 - 3/(5c) over c > 0 and recomputes
/// D(mu, mu) by the nested radial integral.
LdaDerivation derive_lda_constant();

} // namespace lox::kernel
