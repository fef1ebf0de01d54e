#include "lox/maximal.hpp"

#include "lox/errors.hpp"
#include "lox/parallel.hpp"
#include "lox/quadrature.hpp"
#include "lox/screened_kernel.hpp"
#include "lox/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lox::maximal {

namespace {

constexpr double kPi = std::numbers::pi;

/// Effective outer radius of a profile: declared support if finite, else the
/// radius beyond which |f| is negligible relative to its peak.
double profile_extent(const RadialProfile &f) {
  if (std::isfinite(f.support_hi)) return f.support_hi;
  double fmax = std::abs(f(0.0));
  std::vector<double> probe;
  for (double u = 1e-3; u <= 1e7; u *= 1.25) probe.push_back(u);
  for (double u : probe) fmax = std::max(fmax, std::abs(f(u)));
  if (fmax == 0.0) return 1.0;
  double ext = 1.0;
  for (double u : probe)
    if (std::abs(f(u)) > 1e-15 * fmax) ext = u;
  return 1.05 * ext + 1e-3;
}

/// Cumulative table H(u) = int_0^u t |f(t)| dt enabling O(1) spherical
/// means of a radial function: the mean of |f| over the sphere of radius s
/// centered at distance a is (H(a+s) - H(|a-s|)) / (2 a s).
class SphericalMeans {
public:
  SphericalMeans(const RadialProfile &f, double umax, int n)
      : f_(&f), umax_(umax), h_(umax / n), table_(n + 1, 0.0) {
    double acc = 0.0;
    double prev = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double t = i * h_;
      const double g = t * std::abs((*f_)(t));
      acc += 0.5 * h_ * (prev + g);
      prev = g;
      table_[i] = acc;
    }
  }

  double cumulative(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= umax_) return table_.back();
    const double x = u / h_;
    const auto i = static_cast<std::size_t>(x);
    const double frac = x - static_cast<double>(i);
    return table_[i] + frac * (table_[i + 1] - table_[i]);
  }

  double mean(double s, double a) const {
    if (s <= 0.0) return std::abs((*f_)(a));
    if (a < 1e-14) return std::abs((*f_)(s));
    const double lo = std::abs(a - s), hi = a + s;
    // Narrow shells lose precision in the cumulative difference; integrate
    // them directly.
    if (hi - lo < 50.0 * h_) {
      static const quad::GaussRule ref = quad::gauss_legendre(8, 0.0, 1.0);
      double acc = 0.0;
      for (std::size_t k = 0; k < ref.x.size(); ++k) {
        const double t = lo + (hi - lo) * ref.x[k];
        acc += ref.w[k] * t * std::abs((*f_)(t));
      }
      return acc * (hi - lo) / (2.0 * a * s);
    }
    return (cumulative(hi) - cumulative(lo)) / (2.0 * a * s);
  }

private:
  const RadialProfile *f_;
  double umax_;
  double h_;
  std::vector<double> table_;
};

struct ShellRule {
  std::vector<double> v;       // Gauss nodes on [r_star, 1]
  std::vector<double> wchiv2;  // weight * chi(v) * v^2
};

ShellRule make_shell_rule(int n) {
  const auto gl = quad::gauss_legendre(n, kernel::r_star(), 1.0);
  ShellRule r;
  r.v = gl.x;
  r.wchiv2.resize(gl.x.size());
  for (std::size_t i = 0; i < gl.x.size(); ++i)
    r.wchiv2[i] = gl.w[i] * kernel::chi(gl.x[i]) * gl.x[i] * gl.x[i];
  return r;
}

/// 4 pi int chi(v) v^2 mean(r v, a) dv  ==  r^-3 (chi_{1/r} * |f|)(a)
double dilation_value(const SphericalMeans &means, const ShellRule &rule,
                      double r, double a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.v.size(); ++i)
    acc += rule.wchiv2[i] * means.mean(r * rule.v[i], a);
  return 4.0 * kPi * acc;
}

double golden_refine(const std::function<double(double)> &g, double lo,
                     double hi, int iters) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = g(c), fd = g(d);
  for (int i = 0; i < iters; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = g(d);
    }
  }
  return std::max(fc, fd);
}

} // namespace

double maximal_chi_at_dilation(const RadialProfile &f, double center_distance,
                               double r, const MaximalEvaluationGrid &grid) {
  if (!(r > 0.0)) throw std::domain_error("maximal_chi: dilation must be > 0");
  const double ext = profile_extent(f);
  const double umax = ext + grid.support_pad;
  SphericalMeans means(f, umax, grid.cumulative_n);
  const ShellRule rule = make_shell_rule(grid.shell_gauss);
  return dilation_value(means, rule, r, center_distance);
}

double maximal_chi(const RadialProfile &f, double center_distance,
                   const MaximalEvaluationGrid &grid) {
  if (!(center_distance >= 0.0))
    throw std::domain_error("maximal_chi: center distance must be >= 0");
  if (!f.eval) throw std::domain_error("maximal_chi: empty profile");

  const double ext = profile_extent(f);
  const double umax = std::max(ext, center_distance) + grid.support_pad;
  SphericalMeans means(f, umax, grid.cumulative_n);
  const ShellRule rule = make_shell_rule(grid.shell_gauss);

  const double lr_lo = std::log(grid.r_lo), lr_hi = std::log(grid.r_hi);
  const int n = grid.n_radii;
  double best = 0.0;
  int best_i = 0;
  std::vector<double> radii(n);
  for (int i = 0; i < n; ++i) {
    radii[i] = std::exp(lr_lo + (lr_hi - lr_lo) * i / (n - 1));
    const double v = dilation_value(means, rule, radii[i], center_distance);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best == 0.0) return 0.0;

  const double lo = radii[std::max(0, best_i - 1)];
  const double hi = radii[std::min(n - 1, best_i + 1)];
  const double refined = golden_refine(
      [&](double r) { return dilation_value(means, rule, r, center_distance); },
      lo, hi, 80);
  return std::max(best, refined);
}

double chi_mass_constant() {
  return 4.0 * kPi *
         quad::integrate([](double s) { return s * s * kernel::chi(s); },
                         kernel::r_star(), 1.0, 1e-10);
}

double hl_constant_simple_inner() {
  const double s_star = kernel::critical_points().s_star;
  return quad::integrate(
      [](double s) { return s * s * s * std::abs(kernel::chi_prime(s)); },
      s_star, 1.0, 1e-8);
}

double hl_constant_simple_from_integral(double inner_integral) {
  return 8.0 * kPi * std::sqrt(3.0) * inner_integral;
}

double hl_constant_simple() {
  return hl_constant_simple_from_integral(hl_constant_simple_inner());
}

double gaussian_tail(double x) {
  return 0.5 * std::sqrt(kPi) * std::erfc(x);
}

double k_of_t(double T) {
  if (!(T > 0.0)) throw std::domain_error("k_of_t: T must be > 0");
  const double rs = kernel::r_star();
  const double inv = 1.0 / (2.0 * std::sqrt(T));
  auto ratio = [&](double r) {
    const double num = r * kernel::chi(r);
    if (num <= 0.0) return 0.0;
    const double den = gaussian_tail(r * inv);
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return num / den;
  };
  const int n = 10000;
  double best = 0.0;
  int best_i = 0;
  for (int i = 0; i <= n; ++i) {
    const double r = rs + (1.0 - rs) * i / n;
    const double v = ratio(r);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (std::isfinite(best) && best > 0.0) {
    const double lo = rs + (1.0 - rs) * std::max(0, best_i - 1) / n;
    const double hi = rs + (1.0 - rs) * std::min(n, best_i + 1) / n;
    best = std::max(best, golden_refine(ratio, lo, hi, 60));
  }
  return 2.0 * std::pow(kPi, 1.5) * T * best;
}

KMin minimize_k() {
  const auto res = quad::minimize([](double t) { return k_of_t(t); },
                                  1e-3, 10.0, 42);
  return {res.x, res.value};
}

double hl_constant_heat() {
  return 2.0 * std::sqrt(2.0) * minimize_k().k_min;
}

LemmaReport verify_lemma(const std::vector<RadialProfile> &corpus,
                         const MaximalEvaluationGrid &grid, int threads) {
  if (corpus.empty())
    throw std::domain_error("verify_lemma: corpus must be non-empty");

  const double bound = hl_constant_heat();

  auto process = [&](const RadialProfile &f) -> LemmaRow {
    LemmaRow row;
    row.function_id = f.label.empty() ? "unnamed" : f.label;

    const double ext = profile_extent(f);
    const double hi = std::isfinite(f.support_hi) ? f.support_hi : 1.2 * ext;
    const double l2sq = 4.0 * kPi *
                        quad::integrate(
                            [&](double u) {
                              const double v = f(u);
                              return u * u * v * v;
                            },
                            0.0, hi, 1e-9);
    row.l2_norm = std::sqrt(std::max(0.0, l2sq));
    if (row.l2_norm == 0.0) {
      row.ratio = 0.0;
      return row;
    }

    const double a_max = 4.0 * ext + 1.0;
    const int na = 160; // even, for Simpson
    std::vector<double> m(na + 1);
    for (int i = 0; i <= na; ++i)
      m[i] = maximal_chi(f, a_max * i / na, grid);
    const double ha = a_max / na;
    std::vector<double> terms;
    for (int i = 0; i <= na; ++i) {
      const double a = a_max * i / na;
      double w = (i == 0 || i == na) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      terms.push_back(w * ha / 3.0 * a * a * m[i] * m[i]);
    }
    row.maximal_l2_norm = std::sqrt(4.0 * kPi * pairwise_sum(terms));
    row.ratio = row.maximal_l2_norm / row.l2_norm;
    return row;
  };

  LemmaReport report;
  report.bound = bound;
  report.rows = parallel_map(corpus, process, threads);
  for (const auto &row : report.rows) {
    if (row.ratio > report.max_ratio) {
      report.max_ratio = row.ratio;
      report.witness = row.function_id;
    }
  }
  report.passed = report.max_ratio <= bound * (1.0 + report.grid_slack);
  return report;
}

std::string lemma_report_csv(const LemmaReport &report) {
  std::ostringstream os;
  os.precision(12);
  os << "function_id,l2_norm,maximal_l2_norm,ratio\n";
  for (const auto &row : report.rows)
    os << row.function_id << ',' << row.l2_norm << ','
       << row.maximal_l2_norm << ',' << row.ratio << '\n';
  return os.str();
}

} // namespace lox::maximal
