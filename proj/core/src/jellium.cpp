#include "lox/jellium.hpp"

#include "lox/summation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lox::jellium {

namespace {

constexpr double kPi = std::numbers::pi;

double point_tolerance(double r) {
  // absolute W tolerance per lattice point; the sum of these over all
  // lattice points stays below ~1e-4
  const double r4 = r * r * r * r;
  return std::max(1e-13, 1e-6 / std::max(1.0, r4));
}

} // namespace

JelliumEngine::JelliumEngine(const BravaisLattice &lattice)
    : lattice_(lattice), cell_(build_ws_cell(lattice)), integ_(cell_) {
  self_potential_ = integ_.self_potential();
  shift_ = cell_second_moment(cell_);
  far_threshold_ = 2.2 * cell_.circumradius;
}

double JelliumEngine::screened_potential(const Vec3 &x) const {
  return screened_potential(x, point_tolerance(geom::norm(x)));
}

double JelliumEngine::screened_potential(const Vec3 &x, double tol) const {
  const double r = geom::norm(x);
  if (r == 0.0)
    throw std::domain_error(
        "screened_potential: singular at the lattice point; use "
        "cell_self_potential");
  return 1.0 / r - integ_.potential(x, tol);
}

LatticeSumResult JelliumEngine::jellium_energy(int shell_cutoff) const {
  if (shell_cutoff < 5)
    throw std::invalid_argument("jellium_energy: shell_cutoff must be >= 5");

  // sum over half the lattice (inversion symmetry) shell by shell
  std::vector<double> shell_sums(shell_cutoff + 1, 0.0);
  for (int s = 1; s <= shell_cutoff; ++s) {
    PairwiseAccumulator acc;
    for (int i = -s; i <= s; ++i)
      for (int j = -s; j <= s; ++j)
        for (int k = -s; k <= s; ++k) {
          if (std::max({std::abs(i), std::abs(j), std::abs(k)}) != s) continue;
          // keep one representative of {n, -n}
          if (i < 0 || (i == 0 && j < 0) || (i == 0 && j == 0 && k < 0))
            continue;
          const Vec3 x = lattice_.point(i, j, k);
          acc.add(2.0 * screened_potential(x));
        }
    shell_sums[s] = acc.total();
  }

  double total = pairwise_sum(
      std::span<const double>(shell_sums.data() + 1, shell_cutoff));

  // tail: fit |sigma_s| ~ A s^-p over the outer shells
  double tail = 0.0;
  bool fit_ok = false;
  {
    std::vector<double> xs, ys;
    for (int s = std::max(5, shell_cutoff - 5); s <= shell_cutoff; ++s)
      if (std::abs(shell_sums[s]) > 1e-15) {
        xs.push_back(std::log(static_cast<double>(s)));
        ys.push_back(std::log(std::abs(shell_sums[s])));
      }
    if (xs.size() >= 3) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
      }
      const double n = static_cast<double>(xs.size());
      const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      const double inter = (sy - slope * sx) / n;
      const double p = -slope;
      if (p > 1.2) {
        // sum_{s > S} A s^-p ~= A S^(1-p) / (p - 1)
        tail = std::exp(inter) *
               std::pow(static_cast<double>(shell_cutoff), 1.0 - p) / (p - 1.0);
        fit_ok = true;
      }
    } else if (xs.empty()) {
      fit_ok = true; // shells vanished outright
    }
  }

  LatticeSumResult res;
  res.shell_cutoff = shell_cutoff;
  res.tail_estimate = tail;
  res.converged = fit_ok && tail < 5e-4;
  res.value = 0.5 * total - 0.5 * self_potential_ - 0.5 * shift_;
  return res;
}

double JelliumEngine::indirect_energy(int shell_cutoff) const {
  return jellium_energy(shell_cutoff).value + shift_;
}

double JelliumEngine::fourier_shift_at(double k_magnitude,
                                       const Vec3 &direction) const {
  if (!(k_magnitude > 0.0))
    throw std::invalid_argument("fourier_shift_at: k must be > 0");
  const Vec3 k = (k_magnitude / geom::norm(direction)) * direction;
  // integrate 1 - cos(k.x) directly: no cancellation against the volume
  const double val = integ_.smooth_integral(
      [&](const Vec3 &x) { return 1.0 - std::cos(geom::dot(k, x)); }, 3);
  return 4.0 * kPi / (k_magnitude * k_magnitude) * val;
}

double JelliumEngine::shift_fourier_limit(
    const std::vector<double> &k_magnitudes) const {
  if (k_magnitudes.size() < 2)
    throw std::invalid_argument("shift_fourier_limit: need >= 2 k values");
  const std::vector<Vec3> dirs = {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
  double acc = 0.0;
  for (const auto &dir : dirs) {
    // linear fit g(k) = a + b k^2; the intercept is the shift
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double km : k_magnitudes) {
      const double x = km * km;
      const double y = fourier_shift_at(km, dir);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double n = static_cast<double>(k_magnitudes.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    acc += (sy - slope * sx) / n;
  }
  return acc / 3.0;
}

double JelliumEngine::yukawa_shift(double nu) const {
  if (!(nu > 0.0)) throw std::domain_error("yukawa_shift: nu must be > 0");
  // Fourier side at k = 0: 4 pi (nu^2 + |k|^2)^-1 (1 - int_Q 1).
  const double vol =
      integ_.smooth_integral([](const Vec3 &) { return 1.0; }, 2);
  return 4.0 * kPi / (nu * nu) * (1.0 - vol);
}

double JelliumEngine::cell_pair_self() const {
  if (pair_self_valid_) return pair_self_;
  // J(0) = int_Q I_Q(u) du; I_Q is C^1 inside, outer rule GM2 suffices
  const auto &rule = cellq::grundmann_moller(2);
  double acc = 0.0;
  for (const auto &t : cell_.tetrahedra)
    acc += cellq::apply(rule, t, [&](const Vec3 &u) {
      return integ_.interior_potential(u, 1e-9);
    });
  pair_self_ = acc;
  pair_self_valid_ = true;
  return acc;
}

double JelliumEngine::w_convolved(const Vec3 &d) const {
  // (W * 1_Q)(d) = int_Q W(d + u) du. Beyond the far threshold the cell
  // average equals W(d) up to O(<u^4> grad^4 W): the Laplacian term vanishes
  // because W is harmonic outside Q and the quadrupole is isotropic.
  const double r = geom::norm(d);
  if (r >= far_threshold_) return screened_potential(d, 1e-11);
  const auto &rule = cellq::keast4();
  double acc = 0.0;
  for (const auto &t : cell_.tetrahedra)
    acc += cellq::apply(rule, t, [&](const Vec3 &u) {
      return screened_potential(d + u, 1e-8);
    });
  return acc;
}

FiniteNResult JelliumEngine::finite_n_indirect(int m, CarveDomain domain) const {
  if (m < 1) throw std::invalid_argument("finite_n_indirect: m must be >= 1");
  const int N = m * m * m;
  if (N > 1000)
    throw std::invalid_argument("finite_n_indirect: limited to N <= 1000");

  // difference vectors with multiplicities (half set; inversion symmetry)
  std::map<std::array<int, 3>, double> diffs;
  if (domain == CarveDomain::cube) {
    for (int i = -(m - 1); i <= m - 1; ++i)
      for (int j = -(m - 1); j <= m - 1; ++j)
        for (int k = -(m - 1); k <= m - 1; ++k) {
          const double cnt = static_cast<double>((m - std::abs(i))) *
                             (m - std::abs(j)) * (m - std::abs(k));
          diffs[{i, j, k}] += cnt;
        }
  } else {
    // carve the N lattice points closest to the origin
    std::vector<std::array<int, 3>> pts;
    const int R = 2 + static_cast<int>(std::ceil(
                          std::cbrt(3.0 * N / (4.0 * kPi)) /
                          std::max(1e-9, cell_.inradius)));
    for (int i = -R; i <= R; ++i)
      for (int j = -R; j <= R; ++j)
        for (int k = -R; k <= R; ++k) pts.push_back({i, j, k});
    std::sort(pts.begin(), pts.end(),
              [&](const auto &a, const auto &b) {
                const double ra = geom::norm2(lattice_.point(a[0], a[1], a[2]));
                const double rb = geom::norm2(lattice_.point(b[0], b[1], b[2]));
                if (ra != rb) return ra < rb;
                return a < b;
              });
    pts.resize(N);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        diffs[{pts[a][0] - pts[b][0], pts[a][1] - pts[b][1],
               pts[a][2] - pts[b][2]}] += 1.0;
  }

  const double iq0 = self_potential_;
  const double j0 = cell_pair_self();
  const double wconv0 = iq0 - j0;

  PairwiseAccumulator coulomb, inter, direct, w_route;
  inter.add(static_cast<double>(N) * iq0);
  direct.add(static_cast<double>(N) * j0);
  for (const auto &[key, cnt] : diffs) {
    if (key == std::array<int, 3>{0, 0, 0}) continue;
    // half-set representative check
    if (key[0] < 0 || (key[0] == 0 && key[1] < 0) ||
        (key[0] == 0 && key[1] == 0 && key[2] < 0))
      continue;
    const Vec3 x = lattice_.point(key[0], key[1], key[2]);
    const double r = geom::norm(x);
    const double iq = integ_.potential(x, 1e-9);
    const double w = 1.0 / r - iq;
    const double wc = w_convolved(x);
    const auto it_neg = diffs.find({-key[0], -key[1], -key[2]});
    const double total_cnt = cnt + (it_neg != diffs.end() ? it_neg->second : 0.0);
    coulomb.add(total_cnt / r);
    inter.add(total_cnt * iq);
    direct.add(total_cnt * (iq - wc));
    w_route.add(total_cnt * (w + wc));
  }

  FiniteNResult res;
  res.n_points = N;
  res.domain = domain;
  res.coulomb = coulomb.total();
  res.interaction = inter.total();
  res.direct = direct.total();
  res.e_ind_per_particle = (res.coulomb - res.direct) / (2.0 * N);
  res.e_ind_w_route =
      (0.5 * w_route.total() - 0.5 * N * (iq0 - wconv0)) / N;
  res.i_minus_d_per_2n = (res.interaction - res.direct) / (2.0 * N);
  res.u_minus_i_per_2n = (res.coulomb - res.interaction) / (2.0 * N);
  return res;
}

DecompositionReport JelliumEngine::decomposition_check(
    const std::vector<int> &m_values, CarveDomain domain,
    int shell_cutoff) const {
  DecompositionReport rep;
  rep.shift = shift_;
  rep.e_jel = jellium_energy(shell_cutoff).value;
  for (int m : m_values) {
    const auto fin = finite_n_indirect(m, domain);
    DecompositionRow row;
    row.n_points = fin.n_points;
    row.i_minus_d_per_2n = fin.i_minus_d_per_2n;
    row.u_minus_i_per_2n = fin.u_minus_i_per_2n;
    row.e_ind_per_particle = fin.e_ind_per_particle;
    row.identity_residual = std::abs(fin.i_minus_d_per_2n +
                                     fin.u_minus_i_per_2n -
                                     fin.e_ind_per_particle);
    row.route_residual = std::abs(fin.e_ind_per_particle - fin.e_ind_w_route);
    rep.rows.push_back(row);
  }
  return rep;
}

std::string lattice_report_json(LatticeKind kind, const LatticeSumResult &sum,
                                double shift, double indirect) {
  nlohmann::json j;
  j["schema"] = "lox.lattice_report/1";
  j["lattice"] = lattice_name(kind);
  j["e_jel"] = sum.value;
  j["shift"] = shift;
  j["indirect"] = indirect;
  j["shell_cutoff"] = sum.shell_cutoff;
  j["tail_estimate"] = sum.tail_estimate;
  j["converged"] = sum.converged;
  return j.dump(2);
}

std::string lattice_table_csv(
    const std::vector<std::tuple<LatticeKind, LatticeSumResult, double>> &rows) {
  std::ostringstream os;
  os.precision(10);
  os << "lattice,e_jel,shift,indirect,shell_cutoff,tail_estimate\n";
  for (const auto &[kind, sum, shift] : rows)
    os << lattice_name(kind) << ',' << sum.value << ',' << shift << ','
       << sum.value + shift << ',' << sum.shell_cutoff << ','
       << sum.tail_estimate << '\n';
  return os.str();
}

} // namespace lox::jellium
