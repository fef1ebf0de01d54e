#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>

namespace lox {

/// One-dimensional real function of radius with declared support.
/// Evaluation outside the support interval returns 0.
struct RadialProfile {
  std::function<double(double)> eval;
  double support_lo = 0.0;
  double support_hi = std::numeric_limits<double>::infinity();
  std::string label;

  double operator()(double r) const {
    if (r < support_lo || r > support_hi) return 0.0;
    return eval(r);
  }
};

inline RadialProfile make_profile(std::function<double(double)> f,
                                  double lo, double hi, std::string label) {
  return RadialProfile{std::move(f), lo, hi, std::move(label)};
}

} // namespace lox
