#include "lox/constants_table.hpp"

#include "lox/maximal.hpp"
#include "lox/screened_kernel.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

namespace lox {

const char *derivation_name(DerivationMethod m) {
  switch (m) {
  case DerivationMethod::closed_form: return "closed_form";
  case DerivationMethod::quadrature: return "quadrature";
  case DerivationMethod::optimization: return "optimization";
  }
  return "unknown";
}

ConstantTable ConstantTable::build(bool extended) {
  using DM = DerivationMethod;
  ConstantTable t;
  auto add = [&](std::string name, double value, std::string where, DM m,
                 double ref, double tol) {
    t.entries.push_back(
        {std::move(name), value, std::move(where), m, ref, tol});
  };

  const auto lda = kernel::derive_lda_constant();
  const double corr1 = kernel::derive_corr1_coefficient();
  const double cap = kernel::alpha_validity_cap();
  const double c_l1 = kernel::derive_grad_l1_coefficient();
  const double hl_simple = maximal::hl_constant_simple();
  const auto kmin = maximal::minimize_k();
  const double hl_heat = 2.0 * std::sqrt(2.0) * kmin.k_min;
  const double c_l2 = kernel::derive_grad13_l2_coefficient(hl_heat);
  const double pf_l1 = kernel::optimize_alpha(c_l1, 3, 1.0, 0.0).prefactor;
  const double pf_l2 = kernel::optimize_alpha(c_l2, 2, 1.0, 0.0).prefactor;
  const auto chain = kernel::derive_chain_constants(c_l2);

  add("lda_constant", lda.value, "main bound, rho^(4/3) coefficient",
      DM::optimization, 1.45079, 1e-5);
  add("corr1_coefficient", corr1, "short-range split, alpha*theta product",
      DM::closed_form, 0.2180, 5e-4);
  add("alpha_validity_cap", cap, "largest alpha with theta > r_star",
      DM::closed_form, 0.3528, 5e-4);
  add("grad_l1_coefficient", c_l1, "|grad rho| correction numerator",
      DM::quadrature, 0.001206, 2e-6);
  add("hl_constant_simple", hl_simple,
      "maximal-function lemma, layer-cake route", DM::quadrature, 8.2163,
      2e-3);
  add("k_min", kmin.k_min,
      "heat-kernel majorant minimum (attained near T = 0.2762)",
      DM::optimization, 2.68102, 1e-3);
  add("hl_constant_heat", hl_heat, "maximal-function lemma, heat route",
      DM::optimization, 7.5831, 2e-3);
  add("grad13_l2_coefficient", c_l2,
      "|grad rho^(1/3)|^2 correction numerator", DM::optimization, 0.2097,
      5e-4);
  add("prefactor_grad_l1", pf_l1, "optimized |grad rho| bound prefactor",
      DM::closed_form, 0.3270, 5e-4);
  add("prefactor_grad13_l2", pf_l2,
      "optimized |grad rho^(1/3)|^2 bound prefactor", DM::closed_form, 1.1227,
      1e-3);
  add("chain_l18_constant", chain.c6, "Schwarz-inserted chain constant",
      DM::closed_form, 0.4304, 5e-4);
  add("chain_l14_constant", chain.c7, "interpolated chain constant",
      DM::closed_form, 0.7651, 5e-4);

  if (extended) {
    const auto cp = kernel::critical_points();
    add("r_star", cp.r_star, "sign change of the screened-kernel derivative",
        DM::closed_form, 0.6180339887, 1e-9);
    add("s_star", cp.s_star, "argmax of chi on [r_star, 1]", DM::optimization,
        0.8376, 5e-4);
    add("psi_at_r_star", cp.psi_at_r_star, "peak of the screened kernel",
        DM::closed_form, 0.04509, 1e-5);
    add("coulomb_unit_radius", kernel::coulomb_unit_radius(),
        "screening-ball radius (3/(4 pi))^(1/3)", DM::closed_form,
        0.6203504909, 1e-9);
    add("lda_optimizer", lda.c_opt, "optimizer of the ball energy",
        DM::optimization, kernel::coulomb_unit_radius(), 1e-8);
    add("ball_self_energy", lda.d_mu_mu, "D(mu, mu) for the unit ball",
        DM::quadrature, 0.6, 1e-8);
    add("k_argmin", kmin.t_star, "argmin of the heat-kernel majorant",
        DM::optimization, 0.2762, 1e-3);
    add("hl_simple_inner", maximal::hl_constant_simple_inner(),
        "int s^3 |chi'| over [s_star, 1]", DM::quadrature, 0.18875, 1e-4);
    add("chi_mass", maximal::chi_mass_constant(),
        "4 pi int s^2 chi, ball-indicator plateau of M^chi", DM::quadrature,
        0.4701, 1e-3);
  }
  return t;
}

const ConstantEntry *ConstantTable::find(const std::string &name) const {
  for (const auto &e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

bool ConstantTable::check(double tolerance_scale, std::string *log) const {
  bool ok = true;
  for (const auto &e : entries) {
    const double err = std::abs(e.value - e.reference);
    if (err > tolerance_scale * e.tolerance) {
      ok = false;
      if (log) {
        std::ostringstream os;
        os.precision(10);
        os << e.name << ": derived " << e.value << " vs reference "
           << e.reference << " (|err| " << err << " > "
           << tolerance_scale * e.tolerance << ")\n";
        *log += os.str();
      }
    }
  }
  return ok;
}

std::string ConstantTable::to_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "name,value,paper_location,derivation_method\n";
  for (const auto &e : entries)
    os << e.name << ',' << e.value << ",\"" << e.paper_location << "\","
       << derivation_name(e.method) << '\n';
  return os.str();
}

std::string ConstantTable::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto &e : entries) {
    nlohmann::json row;
    row["name"] = e.name;
    row["value"] = e.value;
    row["paper_location"] = e.paper_location;
    row["derivation_method"] = derivation_name(e.method);
    row["reference"] = e.reference;
    row["tolerance"] = e.tolerance;
    rows.push_back(row);
  }
  nlohmann::json j;
  j["schema"] = "lox.constants/1";
  j["rows"] = rows;
  return j.dump(2);
}

} // namespace lox
