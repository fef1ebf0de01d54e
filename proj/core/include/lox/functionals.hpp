#pragma once

#include "lox/density.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lox::functionals {

/// int rho^(4/3). Radial fields use adaptive quadrature with the 4 pi r^2
/// weight; grid fields use the midpoint sum.
double f_rho43(const DensityField &rho);

/// int |grad rho|. Analytic fields use the declared radial derivative; grid
/// fields use second-order central differences (one-sided at boundaries).
double f_grad_l1(const DensityField &rho);

struct Grad13Result {
  double value = 0.0;
  bool divergent = false;
  /// growth of the integral under one mesh refinement (about 2 for a hard
  /// edge, about 1 for a convergent integrand)
  double refinement_ratio = 1.0;
};

/// int |grad rho^(1/3)|^2 with the near-zero-density floor applied
/// cell-wise. Densities with a discontinuous edge are probed under mesh
/// refinement and flagged divergent instead of returning a mesh artifact.
Grad13Result f_grad13_l2(const DensityField &rho);

/// D(rho, rho) = 1/2 double integral of rho(x) rho(y)/|x-y| via the
/// max(|x|,|y|) radial reduction. Grid fields are unsupported.
double direct_coulomb(const DensityField &rho);

enum class BoundVariant {
  classic_168,
  classic_164,
  grad_l1,
  grad13_l2,
  chain_l18,
  chain_l14,
};

const char *variant_name(BoundVariant v);
BoundVariant variant_from_name(const std::string &name);

struct BoundReport {
  std::string density_label;
  BoundVariant variant = BoundVariant::classic_168;
  double f_rho43 = 0.0;
  double f_grad_l1 = 0.0;
  double f_grad13_l2 = 0.0;
  bool grad13_divergent = false;
  std::optional<double> alpha; ///< absent for classic/chain/degenerate cases
  double lda_constant = 0.0;
  double constant_used = 0.0;  ///< gradient-term constant of the variant
  double assembled_value = 0.0; ///< the variant's own formula
  double bound_value = 0.0;     ///< final bound; classic value when clamped
  bool clamped = false; ///< alpha validity condition violated
};

/// Assembles the lower bound for the requested variant. If alpha is absent
/// for the gradient variants it is optimized in closed form. When the
/// optimized or supplied alpha exceeds the validity cap the report is
/// clamped to the classic constant-1.68 bound.
BoundReport evaluate_bound(const DensityField &rho, BoundVariant variant,
                           std::optional<double> alpha = std::nullopt);

std::string bound_report_json(const BoundReport &report);

struct CorrOptions {
  int outer_panels = 12;  ///< GL16 panels over [0, r_max]
  int inner_gauss = 16;   ///< Gauss points per w-segment
  double r_max = 0.0;     ///< 0: derive from the density's decay
};

struct CorrResult {
  double value = 0.0;
  double error_estimate = 0.0; ///< change under panel refinement
  double r_max = 0.0;
};

/// Exact quadrature of the correction term
///   Corr = 3/(8 pi) iint (rho(x)-rho(y)) / |x-y|^4
///          * [psi(|x-y|/R(x)) - psi(|x-y|/R(y))] dx dy
/// for radial densities, reduced to (r, s, |x-y|) with the symmetrized
/// integrand (regular on the diagonal). R(x) = (3/(4 pi rho(x)))^(1/3).
CorrResult corr_exact(const DensityField &rho, const CorrOptions &opt = {});

struct ChainRow {
  double alpha = 0.0;
  double rhs_grad_l1 = 0.0;
  double rhs_grad13_l2 = 0.0;
  double margin_grad_l1 = 0.0;   ///< corr - rhs (>= -tolerance when holding)
  double margin_grad13_l2 = 0.0;
  bool holds_grad_l1 = false;
  bool holds_grad13_l2 = false;
};

struct ChainReport {
  std::string density_label;
  double corr = 0.0;
  double corr_error = 0.0;
  double f_rho43 = 0.0;
  double f_grad_l1 = 0.0;
  double f_grad13_l2 = 0.0;
  bool grad13_divergent = false; ///< grad13 inequality skipped when set
  std::vector<ChainRow> rows;
  bool all_hold = false;
};

/// Certifies corr >= -alpha f_rho43 - C1 alpha^-3 f_grad_l1 and
/// corr >= -alpha f_rho43 - C2 alpha^-2 f_grad13_l2 for each alpha,
/// within the reported quadrature error budget.
ChainReport verify_chain(const DensityField &rho,
                         const std::vector<double> &alphas,
                         const CorrOptions &opt = {});

struct ScalingReport {
  std::vector<double> z_values;
  std::vector<double> f43, g1, g13;
  double slope_f43 = 0.0;  ///< exact value 5/3
  double slope_g1 = 0.0;   ///< exact value 4/3
  double slope_g13 = 0.0;  ///< exact value 1
  double max_slope_error = 0.0;
};

/// Verifies the Thomas-Fermi scaling exponents by log-log regression of the
/// three functionals over rho_Z(x) = Z^2 rho(Z^(1/3) x).
ScalingReport tf_scaling_check(const DensityField &rho_tilde,
                               const std::vector<double> &z_values);

} // namespace lox::functionals
