#pragma once

#include <stdexcept>
#include <string>

namespace lox {

/// Thrown when an iterative numeric procedure (quadrature, optimization)
/// fails to reach its requested tolerance. Carries the tolerance that was
/// actually achieved so callers can report it.
class NumericError : public std::runtime_error {
public:
  NumericError(const std::string &what, double achieved)
      : std::runtime_error(what + " (achieved tolerance " +
                           std::to_string(achieved) + ")"),
        achieved_tolerance(achieved) {}

  double achieved_tolerance;
};

} // namespace lox
