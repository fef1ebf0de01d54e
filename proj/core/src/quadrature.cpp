#include "lox/quadrature.hpp"
#include "lox/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

namespace lox::quad {

double integrate(const std::function<double(double)> &f, double a, double b,
                 double rel_tol, double *err_estimate) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0, l1 = 0.0;
  const double value = GK::integrate(f, a, b, 15, rel_tol, &error, &l1);
  if (err_estimate) *err_estimate = error;
  // GK reports the error relative to the L1 norm of the integrand.
  const double scale = std::max(l1, std::abs(value));
  if (scale > 0.0 && error > 1e3 * rel_tol * scale)
    throw NumericError("adaptive quadrature did not converge",
                       error / scale);
  return value;
}

MinResult minimize(const std::function<double(double)> &f, double lo,
                   double hi, int bits) {
  std::uintmax_t max_iter = 200;
  auto [x, fx] = boost::math::tools::brent_find_minima(f, lo, hi, bits,
                                                       max_iter);
  if (max_iter >= 200)
    throw NumericError("brent minimization did not converge", hi - lo);
  return {x, fx};
}

double find_root(const std::function<double(double)> &f, double lo, double hi,
                 double tol) {
  std::uintmax_t max_iter = 200;
  auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  auto [a, b] =
      boost::math::tools::toms748_solve(f, lo, hi, stop, max_iter);
  if (max_iter >= 200)
    throw NumericError("root bracketing did not converge", std::abs(b - a));
  return 0.5 * (a + b);
}

namespace {

template <unsigned N>
GaussRule make_rule(double a, double b) {
  using G = boost::math::quadrature::gauss<double, N>;
  GaussRule r;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto &xs = G::abscissa(); // non-negative half
  const auto &ws = G::weights();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == 0.0) {
      r.x.push_back(mid);
      r.w.push_back(ws[i] * half);
    } else {
      r.x.push_back(mid - half * xs[i]);
      r.w.push_back(ws[i] * half);
      r.x.push_back(mid + half * xs[i]);
      r.w.push_back(ws[i] * half);
    }
  }
  return r;
}

} // namespace

GaussRule gauss_legendre(int n, double a, double b) {
  switch (n) {
  case 4: return make_rule<4>(a, b);
  case 8: return make_rule<8>(a, b);
  case 16: return make_rule<16>(a, b);
  case 24: return make_rule<24>(a, b);
  case 32: return make_rule<32>(a, b);
  case 64: return make_rule<64>(a, b);
  default:
    throw std::invalid_argument("unsupported Gauss-Legendre size");
  }
}

} // namespace lox::quad
