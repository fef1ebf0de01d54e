#pragma once

#include <functional>
#include <vector>

namespace lox::quad {

/// Adaptive Gauss-Kronrod integration on [a, b]; endpoints may be infinite.
/// Throws NumericError if the estimated error exceeds the requested relative
/// tolerance by a wide margin. Default tolerance follows the library-wide
/// 1e-8 quadrature policy for scalar constants.
double integrate(const std::function<double(double)> &f, double a, double b,
                 double rel_tol = 1e-8, double *err_estimate = nullptr);

struct MinResult {
  double x = 0.0;
  double value = 0.0;
};

/// Brent minimization on [lo, hi].
MinResult minimize(const std::function<double(double)> &f, double lo,
                   double hi, int bits = 45);

/// Bracketed root finding (TOMS 748), |interval| shrunk below tol.
double find_root(const std::function<double(double)> &f, double lo, double hi,
                 double tol = 1e-12);

/// Fixed Gauss-Legendre rule mapped to [a, b]. Supported sizes:
/// 4, 8, 16, 24, 32, 64.
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

GaussRule gauss_legendre(int n, double a, double b);

} // namespace lox::quad
