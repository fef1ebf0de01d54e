#pragma once

#include "lox/cell_quadrature.hpp"
#include "lox/lattice.hpp"

#include <string>
#include <vector>

namespace lox::jellium {

struct LatticeSumResult {
  double value = 0.0;       ///< energy per particle
  int shell_cutoff = 0;
  double tail_estimate = 0.0;
  bool converged = false;
};

enum class CarveDomain { cube, ball };

struct FiniteNResult {
  int n_points = 0;
  CarveDomain domain = CarveDomain::cube;
  double coulomb = 0.0;     ///< U = sum_{i != j} 1/|x_i - x_j|
  double interaction = 0.0; ///< I = sum_i int_Omega dy/|x_i - y|
  double direct = 0.0;      ///< D = iint_{Omega x Omega}
  double e_ind_per_particle = 0.0;    ///< (U - D)/(2N)
  double e_ind_w_route = 0.0;         ///< same value assembled from W sums
  double i_minus_d_per_2n = 0.0;
  double u_minus_i_per_2n = 0.0;
};

struct DecompositionRow {
  int n_points = 0;
  double i_minus_d_per_2n = 0.0;  ///< tends to shift/2
  double u_minus_i_per_2n = 0.0;  ///< tends to e_jel + shift/2
  double e_ind_per_particle = 0.0;
  double identity_residual = 0.0; ///< |(U-I)/2N + (I-D)/2N - (U-D)/2N|
  double route_residual = 0.0;    ///< |pair-sum route - U,D route|
};

struct DecompositionReport {
  std::vector<DecompositionRow> rows;
  double shift = 0.0;
  double e_jel = 0.0;
};

/// Per-lattice screened-Coulomb machinery: shares the Wigner-Seitz cell and
/// its integrator across all jellium operations.
class JelliumEngine {
public:
  explicit JelliumEngine(const BravaisLattice &lattice);

  const BravaisLattice &lattice() const { return lattice_; }
  const WignerSeitzCell &cell() const { return cell_; }
  const cellq::CellIntegrator &integrator() const { return integ_; }

  /// W(x) = 1/|x| - int_Q dy/|x - y|; decays at least like |x|^-4.
  double screened_potential(const Vec3 &x) const;
  double screened_potential(const Vec3 &x, double tol) const;

  /// int_Q dy/|y| (cached).
  double cell_self_potential() const { return self_potential_; }

  /// (2 pi/3) int_Q |x|^2 dx, equal to int_R3 W (cached).
  double shift() const { return shift_; }

  /// e_Jel = 1/2 sum_{x != 0} W(x) - 1/2 int_Q dy/|y| - 1/2 shift,
  /// direct shell summation with an |x|^-4 tail fit.
  LatticeSumResult jellium_energy(int shell_cutoff = 15) const;

  /// e_Jel + shift.
  double indirect_energy(int shell_cutoff = 15) const;

  /// Extrapolates 4 pi |k|^-2 int_Q (1 - cos(k.x)) dx to k -> 0 along the
  /// given directions (defaults: axis, face diagonal, body diagonal).
  double shift_fourier_limit(const std::vector<double> &k_magnitudes) const;
  double fourier_shift_at(double k_magnitude, const Vec3 &direction) const;

  /// Fourier-side Yukawa residual 4 pi/(nu^2) (1 - int_Q 1) = 0: the shift
  /// vanishes for every nu > 0.
  double yukawa_shift(double nu) const;

  /// Indirect energy of m^3 lattice points carved from a block (or ball),
  /// by the cell-pair decomposition U/2 - D/2.
  FiniteNResult finite_n_indirect(int m, CarveDomain domain = CarveDomain::cube) const;

  DecompositionReport decomposition_check(const std::vector<int> &m_values,
                                          CarveDomain domain = CarveDomain::cube,
                                          int shell_cutoff = 15) const;

private:
  struct PairTables; // memoized I_Q / W / W*1_Q per difference vector

  double cell_pair_self() const; ///< J(0) = int_Q I_Q(u) du
  double w_convolved(const Vec3 &d) const; ///< (W * 1_Q)(d)

  BravaisLattice lattice_;
  WignerSeitzCell cell_;
  cellq::CellIntegrator integ_;
  double self_potential_ = 0.0;
  double shift_ = 0.0;
  double far_threshold_ = 0.0;
  mutable double pair_self_ = 0.0;
  mutable bool pair_self_valid_ = false;
};

/// JSON report {lattice, e_jel, shift, indirect, shell_cutoff, tail_estimate}.
std::string lattice_report_json(LatticeKind kind, const LatticeSumResult &sum,
                                double shift, double indirect);

/// CSV with one row per lattice reproducing the shift and indirect tables.
std::string lattice_table_csv(
    const std::vector<std::tuple<LatticeKind, LatticeSumResult, double>> &rows);

} // namespace lox::jellium
