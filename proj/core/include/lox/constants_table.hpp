#pragma once

#include <string>
#include <vector>

namespace lox {

enum class DerivationMethod { closed_form, quadrature, optimization };

const char *derivation_name(DerivationMethod m);

struct ConstantEntry {
  std::string name;
  double value = 0.0;          ///< re-derived at build time, never a literal
  std::string paper_location;  ///< where the constant appears in the result
  DerivationMethod method = DerivationMethod::closed_form;
  double reference = 0.0;      ///< published value (test literal)
  double tolerance = 0.0;
};

/// The scalar constants of the bound, each re-derived from scratch when the
/// table is built. The default table carries the twelve theorem-facing
/// constants; extended mode adds the derivation internals (r_star, psi peak,
/// the ball Coulomb integral, inner integrals, optimizer locations).
struct ConstantTable {
  std::vector<ConstantEntry> entries;

  static ConstantTable build(bool extended = false);

  const ConstantEntry *find(const std::string &name) const;

  /// True iff every entry matches its reference within tolerance_scale *
  /// tolerance. Mismatches are appended to log when given.
  bool check(double tolerance_scale = 1.0, std::string *log = nullptr) const;

  std::string to_csv() const;
  std::string to_json() const;
};

} // namespace lox
