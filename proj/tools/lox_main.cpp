// lox: derive the gradient-corrected exchange bound constants, evaluate the
// bound functionals on densities, certify the inequality chain numerically,
// verify the maximal-function lemma, and reproduce the Jellium tables.

#include "lox/constants_table.hpp"
#include "lox/cube_io.hpp"
#include "lox/density.hpp"
#include "lox/errors.hpp"
#include "lox/functionals.hpp"
#include "lox/jellium.hpp"
#include "lox/maximal.hpp"
#include "lox/parallel.hpp"
#include "lox/screened_kernel.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

std::vector<lox::RadialProfile> maxfn_corpus() {
  using lox::make_profile;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<lox::RadialProfile> corpus;
  for (double w : {0.5, 1.0, 2.0})
    corpus.push_back(make_profile(
        [w](double r) { return std::exp(-M_PI * r * r / (w * w)); }, 0.0, inf,
        "gaussian_w" + std::to_string(w).substr(0, 3)));
  for (double R : {1.0, 2.0})
    corpus.push_back(
        make_profile([](double) { return 1.0; }, 0.0, R,
                     "ball_R" + std::to_string(R).substr(0, 3)));
  corpus.push_back(
      make_profile([](double r) { return std::exp(-r); }, 0.0, inf, "exp"));
  corpus.push_back(make_profile(
      [](double r) { return 0.5 * (1.0 - std::tanh((r - 1.0) / 0.2)); }, 0.0,
      4.0, "smoothed_ball"));
  return corpus;
}

std::vector<lox::DensityField> certify_corpus(bool with_hard_ball) {
  std::vector<lox::DensityField> corpus;
  corpus.push_back(lox::gaussian_density(1.0));
  corpus.push_back(lox::gaussian_density(0.6));
  corpus.push_back(lox::exponential_density(1.0));
  corpus.push_back(lox::exponential_density(0.5));
  corpus.push_back(lox::smoothed_ball_density(1.0, 0.15));
  corpus.push_back(lox::cauchy_density());
  if (with_hard_ball) corpus.push_back(lox::unit_volume_ball_density());
  return corpus;
}

struct Defaults {
  double quad_rel_tol = 1e-8;
  int jellium_shell_cutoff = 15;
  std::vector<double> alphas{0.05, 0.1, 0.2, 0.3};
  double lemma_grid_slack = 0.01;
  double density_floor = 1e-14;
  int corr_outer_panels = 12;
  int corr_inner_gauss = 16;
  std::vector<double> fourier_k{0.4, 0.3, 0.2, 0.1};
};

void print_defaults() {
  const Defaults d;
  std::cout << "quadrature relative tolerance   " << d.quad_rel_tol << "\n"
            << "jellium shell cutoff            " << d.jellium_shell_cutoff
            << "\n"
            << "certify alphas                  0.05,0.1,0.2,0.3\n"
            << "lemma grid slack                " << d.lemma_grid_slack << "\n"
            << "grad13 density floor            " << d.density_floor
            << " * max(rho)\n"
            << "corr outer panels / inner gauss " << d.corr_outer_panels
            << " / " << d.corr_inner_gauss << "\n"
            << "fourier-limit k values          0.4,0.3,0.2,0.1\n"
            << "threads                         LOX_THREADS (default 1)\n";
}

int cmd_constants(const std::string &format, const std::string &output,
                  bool check_only, double tolerance_scale, bool extended) {
  const auto table = lox::ConstantTable::build(extended);
  std::string log;
  const bool ok = table.check(tolerance_scale, &log);

  if (check_only) {
    std::cout << (ok ? "constants: all entries match within tolerances\n"
                     : "constants: MISMATCH\n" + log);
    return ok ? kExitSuccess : kExitNumeric;
  }

  std::string content;
  if (format == "csv") {
    content = table.to_csv();
  } else if (format == "json") {
    content = table.to_json() + "\n";
  } else {
    std::ostringstream os;
    os.precision(8);
    os << "constant                   value          reference   method\n";
    for (const auto &e : table.entries) {
      os.width(26);
      os << std::left << e.name << " ";
      os.width(14);
      os << e.value << " ";
      os.width(11);
      os << e.reference << " " << lox::derivation_name(e.method) << "\n";
    }
    content = os.str();
  }
  write_output(output, content);
  if (!ok) std::cerr << "warning: derived values drifted:\n" << log;
  return ok ? kExitSuccess : kExitNumeric;
}

int cmd_bound(const std::string &density_spec, const std::string &cube_path,
              const std::string &variant_name, std::optional<double> alpha,
              const std::string &format, const std::string &output,
              bool allow_clamped) {
  namespace F = lox::functionals;
  std::optional<lox::DensityField> field;
  if (!density_spec.empty()) {
    std::ifstream in(density_spec);
    if (!in) {
      std::cerr << "cannot open density spec '" << density_spec << "'\n";
      return kExitUsage;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    field = lox::parse_density_spec(ss.str());
  } else {
    int clamped = 0;
    const auto vol = lox::cube::read_cube_file(cube_path);
    auto f = lox::cube::to_density(vol, &clamped);
    if (clamped > 0 && !allow_clamped) {
      std::cerr << "ingestion error: " << clamped
                << " negative voxel(s); densities must be non-negative "
                   "(use --allow-clamped to zero them)\n";
      return kExitUsage;
    }
    if (clamped > 0)
      std::cerr << "note: clamped " << clamped << " negative voxel(s)\n";
    field = std::move(f);
  }

  const std::vector<F::BoundVariant> all = {
      F::BoundVariant::classic_168, F::BoundVariant::classic_164,
      F::BoundVariant::grad_l1,     F::BoundVariant::grad13_l2,
      F::BoundVariant::chain_l18,   F::BoundVariant::chain_l14};

  if (!variant_name.empty()) {
    const auto rep = F::evaluate_bound(
        *field, F::variant_from_name(variant_name), alpha);
    write_output(output, F::bound_report_json(rep) + "\n");
    return kExitSuccess;
  }

  std::ostringstream os;
  os.precision(8);
  const double f43 = F::f_rho43(*field);
  const double g1 = F::f_grad_l1(*field);
  const auto g13 = F::f_grad13_l2(*field);
  os << "density " << field->label() << "  (N = " << field->particle_number()
     << ")\n";
  os << "  int rho^(4/3)          = " << f43 << "\n";
  os << "  int |grad rho|         = " << g1 << "\n";
  os << "  int |grad rho^(1/3)|^2 = " << g13.value
     << (g13.divergent ? "  [divergent under refinement]" : "") << "\n";
  if (field->kind() == lox::DensityKind::analytic_radial)
    os << "  D(rho, rho)            = " << F::direct_coulomb(*field) << "\n";
  os << "\nvariant        bound        (alpha, clamped)\n";
  std::string json_rows = "[\n";
  bool first = true;
  for (auto v : all) {
    try {
      const auto rep = F::evaluate_bound(*field, v, alpha);
      os.width(14);
      os << std::left << F::variant_name(v) << " " << rep.bound_value;
      if (rep.alpha) os << "   alpha=" << *rep.alpha;
      if (rep.clamped) os << "  [clamped to classic bound]";
      os << "\n";
      json_rows += (first ? "" : ",\n") + F::bound_report_json(rep);
      first = false;
    } catch (const std::invalid_argument &e) {
      os.width(14);
      os << std::left << F::variant_name(v) << " skipped: " << e.what()
         << "\n";
    }
  }
  json_rows += "\n]\n";
  if (format == "json")
    write_output(output, json_rows);
  else
    write_output(output, os.str());
  return kExitSuccess;
}

int cmd_certify(const std::vector<double> &alphas, const std::string &output,
                int threads) {
  namespace F = lox::functionals;
  std::ostringstream csv;
  csv.precision(10);
  csv << "check,subject,alpha,lhs,rhs,margin,status\n";
  bool all_ok = true;
  int checks = 0, skips = 0;

  const auto corpus = certify_corpus(true);
  const auto reports = lox::parallel_map(
      corpus,
      [&](const lox::DensityField &rho) { return F::verify_chain(rho, alphas); },
      threads);
  for (const auto &rep : reports) {
    for (const auto &row : rep.rows) {
      csv << "corr_vs_grad_l1," << rep.density_label << ',' << row.alpha
          << ',' << rep.corr << ',' << row.rhs_grad_l1 << ','
          << row.margin_grad_l1 << ','
          << (row.holds_grad_l1 ? "pass" : "FAIL") << '\n';
      all_ok = all_ok && row.holds_grad_l1;
      ++checks;
      if (rep.grad13_divergent) {
        csv << "corr_vs_grad13_l2," << rep.density_label << ',' << row.alpha
            << ",,,," << "skipped: |grad rho^(1/3)|^2 divergent (hard edge)"
            << '\n';
        ++skips;
      } else {
        csv << "corr_vs_grad13_l2," << rep.density_label << ',' << row.alpha
            << ',' << rep.corr << ',' << row.rhs_grad13_l2 << ','
            << row.margin_grad13_l2 << ','
            << (row.holds_grad13_l2 ? "pass" : "FAIL") << '\n';
        all_ok = all_ok && row.holds_grad13_l2;
        ++checks;
      }
    }
  }

  // constant background: the correction term must vanish identically
  {
    const auto corr = F::corr_exact(lox::constant_density(1.0));
    const bool ok = std::abs(corr.value) <= 1e-10;
    csv << "corr_constant_density,constant,," << corr.value << ",0,"
        << -std::abs(corr.value) << ',' << (ok ? "pass" : "FAIL") << '\n';
    all_ok = all_ok && ok;
    ++checks;
  }

  // maximal-function lemma on the built-in corpus
  {
    const auto lemma = lox::maximal::verify_lemma(maxfn_corpus(), {}, threads);
    for (const auto &row : lemma.rows) {
      const bool ok =
          row.ratio <= lemma.bound * (1.0 + lemma.grid_slack);
      csv << "maximal_lemma," << row.function_id << ",," << row.ratio << ','
          << lemma.bound * (1.0 + lemma.grid_slack) << ','
          << lemma.bound * (1.0 + lemma.grid_slack) - row.ratio << ','
          << (ok ? "pass" : "FAIL") << '\n';
      all_ok = all_ok && ok;
      ++checks;
    }
  }

  // Thomas-Fermi scaling slopes
  {
    const auto rep =
        F::tf_scaling_check(lox::gaussian_density(), {1.0, 2.0, 4.0, 8.0});
    const bool ok = rep.max_slope_error <= 1e-3;
    csv << "tf_scaling,gaussian,," << rep.max_slope_error << ",1e-3,"
        << 1e-3 - rep.max_slope_error << ',' << (ok ? "pass" : "FAIL")
        << '\n';
    all_ok = all_ok && ok;
    ++checks;
  }

  write_output(output, csv.str());
  std::cout << (all_ok ? "certificate: PASS" : "certificate: FAIL") << " ("
            << checks << " checks, " << skips << " documented skips)\n";
  return all_ok ? kExitSuccess : kExitNumeric;
}

int cmd_maxfn(const std::string &output, bool curves, int threads) {
  const auto report = lox::maximal::verify_lemma(maxfn_corpus(), {}, threads);
  write_output(output, lox::maximal::lemma_report_csv(report));
  if (curves) {
    std::ostringstream kcsv;
    kcsv.precision(10);
    kcsv << "T,K\n";
    for (double t = 0.02; t <= 2.0; t += 0.02)
      kcsv << t << ',' << lox::maximal::k_of_t(t) << '\n';
    write_output("k_curve.csv", kcsv.str());
    std::ostringstream ccsv;
    ccsv.precision(10);
    ccsv << "r,chi\n";
    for (int i = 0; i <= 400; ++i) {
      const double r = i / 400.0 * 1.2;
      ccsv << r << ',' << lox::kernel::chi(r) << '\n';
    }
    write_output("chi_curve.csv", ccsv.str());
  }
  std::cout << "max ratio " << report.max_ratio << " (witness "
            << report.witness << "), bound " << report.bound << " * "
            << 1.0 + report.grid_slack << "\n";
  return report.passed ? kExitSuccess : kExitNumeric;
}

int cmd_jellium(const std::string &lattice, bool table, double yukawa_nu,
                int cutoff, const std::string &format,
                const std::string &output, int threads) {
  using namespace lox::jellium;
  if (table) {
    const std::vector<LatticeKind> kinds = {LatticeKind::sc, LatticeKind::fcc,
                                            LatticeKind::bcc};
    auto rows = lox::parallel_map(
        kinds,
        [&](LatticeKind k) {
          JelliumEngine eng(BravaisLattice::of(k));
          return std::make_tuple(k, eng.jellium_energy(cutoff), eng.shift());
        },
        threads);
    if (format == "csv") {
      write_output(output, lattice_table_csv(rows));
    } else {
      std::ostringstream os;
      os.precision(6);
      os << "lattice   shift     e_jel      indirect\n";
      for (const auto &[k, sum, shift] : rows)
        os << std::left << std::setw(9) << lattice_name(k) << " " << shift
           << "  " << sum.value << "  " << sum.value + shift << "\n";
      write_output(output, os.str());
    }
    return kExitSuccess;
  }

  const LatticeKind kind = lattice_from_name(lattice);
  JelliumEngine eng(BravaisLattice::of(kind));
  if (yukawa_nu > 0.0) {
    const double ys = eng.yukawa_shift(yukawa_nu);
    std::ostringstream os;
    os.precision(6);
    os << "yukawa shift (nu = " << yukawa_nu << "): " << ys
       << "  [coulomb shift " << eng.shift() << "]\n";
    write_output(output, os.str());
    return std::abs(ys) <= 1e-6 ? kExitSuccess : kExitNumeric;
  }
  const auto sum = eng.jellium_energy(cutoff);
  write_output(output, lattice_report_json(kind, sum, eng.shift(),
                                           sum.value + eng.shift()) +
                           "\n");
  return sum.converged ? kExitSuccess : kExitNumeric;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"gradient-corrected exchange-energy bounds: constants, "
               "density functionals, proof-chain certificates, "
               "maximal-function checks, and Jellium lattice tables"};
  app.require_subcommand(0, 1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (overrides LOX_THREADS; default 1)");
  bool show_defaults = false;
  app.add_flag("--show-defaults", show_defaults,
               "print all numeric defaults and exit");

  // constants
  auto *c = app.add_subcommand("constants",
                               "derive and print the constant table");
  std::string c_format = "table", c_output;
  bool c_check = false, c_extended = false;
  double c_tol_scale = 1.0;
  c->add_option("--format", c_format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  c->add_option("--output,-o", c_output, "output path (default stdout)");
  c->add_flag("--check", c_check, "only verify against published values");
  c->add_option("--tolerance-scale", c_tol_scale,
                "scale factor on the stored tolerances");
  c->add_flag("--extended", c_extended, "include derivation internals");

  // bound
  auto *b = app.add_subcommand("bound", "evaluate lower bounds on a density");
  std::string b_density, b_cube, b_variant, b_format = "table", b_output;
  double b_alpha = -1.0;
  bool b_allow_clamped = false;
  b->add_option("--density", b_density, "analytic density spec (JSON file)");
  b->add_option("--cube", b_cube, "Gaussian cube density file");
  b->add_option("--variant", b_variant,
                "classic_168|classic_164|grad_l1|grad13_l2|chain_l18|chain_l14");
  b->add_option("--alpha", b_alpha, "fixed alpha instead of optimizing");
  b->add_option("--format", b_format, "table|json")
      ->check(CLI::IsMember({"table", "json"}));
  b->add_option("--output,-o", b_output, "output path");
  b->add_flag("--allow-clamped", b_allow_clamped,
              "accept cube files with negative voxels, clamping to zero");

  // certify
  auto *ct = app.add_subcommand(
      "certify", "run the numerical certificate of the inequality chain");
  std::vector<double> ct_alphas{0.05, 0.1, 0.2, 0.3};
  std::string ct_output;
  ct->add_option("--alphas", ct_alphas, "alpha values in (0, 0.3528]")
      ->delimiter(',');
  ct->add_option("--output,-o", ct_output, "witness CSV path");

  // maxfn
  auto *mx = app.add_subcommand(
      "maxfn", "verify the maximal-function lemma on the built-in corpus");
  std::string mx_output;
  bool mx_curves = false;
  mx->add_option("--output,-o", mx_output, "report CSV path");
  mx->add_flag("--curves", mx_curves, "emit K(T) and chi(r) curve CSV data");

  // jellium
  auto *j = app.add_subcommand("jellium",
                               "lattice energies and indirect-energy shift");
  std::string j_lattice, j_format = "json", j_output;
  bool j_table = false;
  double j_yukawa = 0.0;
  int j_cutoff = 15;
  j->add_option("--lattice", j_lattice, "sc|fcc|bcc");
  j->add_flag("--table", j_table, "all three lattices, both tables");
  j->add_option("--yukawa", j_yukawa,
                "Yukawa screening nu: report the (vanishing) shift");
  j->add_option("--cutoff", j_cutoff, "lattice shell cutoff")
      ->check(CLI::Range(5, 60));
  j->add_option("--format", j_format, "json|csv|table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  j->add_option("--output,-o", j_output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  if (threads > 0) setenv("LOX_THREADS", std::to_string(threads).c_str(), 1);
  if (show_defaults) {
    print_defaults();
    return kExitSuccess;
  }

  try {
    if (c->parsed())
      return cmd_constants(c_format, c_output, c_check, c_tol_scale,
                           c_extended);
    if (b->parsed()) {
      if (b_density.empty() == b_cube.empty()) {
        std::cerr << "bound: exactly one of --density/--cube is required\n";
        return kExitUsage;
      }
      std::optional<double> alpha;
      if (b_alpha > 0.0) alpha = b_alpha;
      return cmd_bound(b_density, b_cube, b_variant, alpha, b_format,
                       b_output, b_allow_clamped);
    }
    if (ct->parsed()) return cmd_certify(ct_alphas, ct_output, threads);
    if (mx->parsed()) return cmd_maxfn(mx_output, mx_curves, threads);
    if (j->parsed()) {
      if (!j_table && j_lattice.empty()) {
        std::cerr << "jellium: --lattice or --table is required\n";
        return kExitUsage;
      }
      return cmd_jellium(j_lattice, j_table, j_yukawa, j_cutoff, j_format,
                         j_output, threads);
    }
    std::cout << app.help();
    return kExitSuccess;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lox::NumericError &e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
