#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ncdirac/run_config.hpp"
#include "ncdirac/serialize.hpp"

namespace ncdirac {

namespace detail {

inline void write_file(const std::string& dir, const std::string& name,
                       const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
  out << content;
}

inline OperatorExpr raw_commutator(const OperatorExpr& a, const OperatorExpr& b) {
  return a * b - b * a;
}

inline ScalarSum i_over_hbar() {
  return ScalarSum::coeff(Rational(1), 1, SymMonomial::of(SymConst::Hbar, -1));
}

}  // namespace detail

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SymbolicCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Finding {
  std::string relation;
  std::string derived;
  std::string paper;
};

struct VerifyOutcome {
  std::vector<CheckResult> checks;
  std::vector<SymbolicCheck> symbolic;
  std::vector<Finding> findings;
  int skipped = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    for (const auto& s : symbolic)
      if (!s.pass) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json out;
    nlohmann::json cj = nlohmann::json::array();
    for (const auto& c : checks)
      cj.push_back(residual_entry_json(c.name, c.residual, c.tolerance));
    out["checks"] = cj;
    nlohmann::json sj = nlohmann::json::array();
    for (const auto& s : symbolic)
      sj.push_back({{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    out["symbolic"] = sj;
    nlohmann::json fj = nlohmann::json::array();
    for (const auto& f : findings)
      fj.push_back({{"relation", f.relation}, {"derived", f.derived}, {"paper", f.paper}});
    out["findings"] = fj;
    out["skipped"] = skipped;
    out["pass"] = pass();
    return out;
  }
};

/// The full internal-consistency battery: guarded canonical-commutator and
/// Clifford checks, hermiticity, every derivation trace entry replayed as a
/// raw matrix commutator against its symbolic value, the full rate
/// identities, the exact symbolic regressions, and the shift-vs-star cross
/// agreement. Published-coefficient mismatches are collected as findings and
/// never fail the run.
inline VerifyOutcome run_verification(const RunConfig& cfg) {
  VerifyOutcome out;
  AlgebraContext ctx = cfg.context();
  FockRealizer realizer(cfg.basis, cfg.bindings(), ctx);
  HamiltonianBundle bundle = deformed_hamiltonian(cfg.field(), cfg.nc, cfg.conv,
                                                  cfg.star_max_order);
  RateResult pos = position_rate(bundle, ctx);
  RateResult mom = kinetic_momentum_rate(bundle, cfg.field(), ctx);

  auto residual_check = [&](const std::string& name, const OperatorExpr& lhs,
                            const OperatorExpr& rhs, double tol) {
    if (!realizer.realizable(lhs) || !realizer.realizable(rhs)) {
      ++out.skipped;
      return;
    }
    double r = identity_residual(lhs, rhs, realizer);
    out.checks.push_back({name, r, tol, r <= tol});
  };

  const Tolerances& tol = cfg.tolerances;

  // canonical commutators on the guarded subspace
  for (int i = 1; i <= cfg.basis.dimension; ++i) {
    OperatorExpr xi = OperatorExpr::atom(Atom::position(i));
    OperatorExpr pi = OperatorExpr::atom(Atom::momentum(i));
    OperatorExpr ihbar = OperatorExpr::scalar(
        ScalarSum::coeff(Rational(1), 1, SymMonomial::of(SymConst::Hbar)));
    residual_check("ccr [x" + std::to_string(i) + ",p" + std::to_string(i) + "] = i*hbar",
                   detail::raw_commutator(xi, pi), ihbar, tol.zero_commutator);
  }
  // Clifford relations
  for (int i = 1; i <= 3; ++i) {
    OperatorExpr ai = OperatorExpr::atom(Atom::alpha(i));
    residual_check("alpha" + std::to_string(i) + "^2 = 1", ai * ai, OperatorExpr::identity(),
                   tol.zero_commutator);
    residual_check("{alpha" + std::to_string(i) + ",beta} = 0",
                   ai * OperatorExpr::atom(Atom::beta()) + OperatorExpr::atom(Atom::beta()) * ai,
                   OperatorExpr::zero(), tol.zero_commutator);
  }
  {
    OperatorExpr a1 = OperatorExpr::atom(Atom::alpha(1));
    OperatorExpr a2 = OperatorExpr::atom(Atom::alpha(2));
    residual_check("{alpha1,alpha2} = 0", a1 * a2 + a2 * a1, OperatorExpr::zero(),
                   tol.zero_commutator);
  }

  // hermiticity of the deformed Hamiltonian
  {
    double r = hermiticity_residual(realizer.realize(bundle.h_nc));
    out.checks.push_back({"hermiticity of deformed Hamiltonian", r, tol.hermiticity,
                          r <= tol.hermiticity});
  }

  // every intermediate commutator from the derivations, replayed numerically
  for (const RateResult* rate : {&pos, &mom}) {
    for (const TraceEntry& t : rate->trace) {
      double entry_tol = t.value.is_zero() ? tol.zero_commutator : tol.identity;
      residual_check(rate->observable + "-rate trace " + t.label, t.lhs_raw, t.value, entry_tol);
    }
    for (int j = 1; j <= cfg.basis.dimension; ++j) {
      OperatorExpr lhs = detail::i_over_hbar() *
                         detail::raw_commutator(bundle.h_nc, rate->observable_expr[j - 1]);
      residual_check("d" + rate->observable + std::to_string(j) + "/dt full identity", lhs,
                     rate->total(j), tol.identity);
    }
  }

  // exact symbolic regressions
  {
    RateResult pos_lim = commutative_limit(pos);
    RateResult mom_lim = commutative_limit(mom);
    LimitCheck pc = limits_check(pos_lim, classical_position_rate_template(), ctx);
    LimitCheck mc = limits_check(mom_lim, classical_momentum_rate_template(ctx), ctx);
    out.symbolic.push_back({"position rate commutative limit = c*alpha", pc.pass,
                            pc.pass ? "" : render(pc.delta[0] + pc.delta[1] + pc.delta[2])});
    out.symbolic.push_back({"momentum rate commutative limit = e*E + (e/c) v x B", mc.pass,
                            mc.pass ? "" : render(mc.delta[0] + mc.delta[1] + mc.delta[2])});
  }
  {
    bool ok = bundle.h_nc.substituted_zero({SymConst::Theta, SymConst::Eta}) ==
              bundle.h_commutative;
    out.symbolic.push_back({"deformed Hamiltonian reduces to the commutative one", ok, ""});
  }
  {
    bool ok = true;
    std::string bad;
    for (int j = 1; j <= 3; ++j) {
      for (TermGroup g : {TermGroup::Residue, TermGroup::EtaCorrection}) {
        if (g == TermGroup::EtaCorrection && pos.group(j, g).is_zero()) continue;
        if (g == TermGroup::Residue && !pos.group(j, g).is_zero()) {
          ok = false;
          bad = render(pos.group(j, g));
        }
      }
      if (!mom.group(j, TermGroup::Residue).is_zero()) {
        ok = false;
        bad = render(mom.group(j, TermGroup::Residue));
      }
    }
    out.symbolic.push_back({"rate decompositions leave no residue", ok, bad});
  }
  {
    // deformation terms are first order: exactly one power of one parameter
    auto homogeneous = [](const OperatorExpr& e, SymConst s, SymConst other) {
      for (const auto& [f, c] : e.terms())
        for (const ScalarCoeff& sc : c.coeffs())
          if (sc.monomial.degree_of(s) != 1 || sc.monomial.degree_of(other) != 0) return false;
      return true;
    };
    bool ok = homogeneous(bundle.theta_term, SymConst::Theta, SymConst::Eta) &&
              homogeneous(bundle.eta_term, SymConst::Eta, SymConst::Theta);
    if (!cfg.nc.theta_on()) ok = bundle.theta_term.is_zero() || ok;
    if (!cfg.nc.eta_on()) ok = bundle.eta_term.is_zero() && (cfg.nc.theta_on() ? ok : true);
    if (!cfg.nc.theta_on() && !cfg.nc.eta_on())
      ok = bundle.theta_term.is_zero() && bundle.eta_term.is_zero();
    out.symbolic.push_back({"deformation terms are first order in Theta/eta", ok, ""});
  }
  {
    // shift-vs-star cross agreement with the embedding matched to the
    // configured shift denominator
    ConventionConfig matched = cfg.conv;
    matched.kappa_theta = Rational(2, cfg.conv.bopp_denominator_factor);
    matched.kappa_eta = Rational(2, cfg.conv.bopp_denominator_factor);
    AlgebraContext star_ctx = ctx;
    star_ctx.nc = cfg.nc;
    star_ctx.conv = matched;
    bool ok = true;
    std::string detail_str;
    auto moyal_matches_bopp = [&](const Atom& a, const Atom& b) {
      OperatorExpr ea = OperatorExpr::atom(a), eb = OperatorExpr::atom(b);
      OperatorExpr moyal = canonicalize(star_product(ea, eb, 2, StarSector::PhaseSpace, star_ctx) -
                                            star_product(eb, ea, 2, StarSector::PhaseSpace,
                                                         star_ctx),
                                        ctx);
      OperatorExpr bopp = commutator(bopp_shift(ea, cfg.nc, cfg.conv),
                                     bopp_shift(eb, cfg.nc, cfg.conv), ctx);
      return moyal == bopp;
    };
    if (!moyal_matches_bopp(Atom::position(1), Atom::position(2))) ok = false;
    if (!moyal_matches_bopp(Atom::momentum(1), Atom::momentum(2))) ok = false;
    if (!ok) detail_str = "deformed brackets disagree between the two insertion methods";
    out.symbolic.push_back({"star product and linear shift give the same coordinate and "
                            "momentum brackets",
                            ok, detail_str});
    if (cfg.conv.kappa_theta != matched.kappa_theta || cfg.conv.kappa_eta != matched.kappa_eta)
      out.findings.push_back({"embedding", "kappa_theta=" + cfg.conv.kappa_theta.to_string(),
                              "shift-matching value is " + matched.kappa_theta.to_string()});
  }

  // published-coefficient audit: findings, not failures
  ConsistencyReport audit = algebra_consistency_report(cfg.nc, cfg.conv);
  for (const auto& row : audit.rows)
    if (!row.match) out.findings.push_back({row.relation, render(row.derived), render(row.paper)});
  for (const DiscrepancyReport& rep :
       {paper_form_comparison(pos, published_position_rate_template(ctx)),
        paper_form_comparison(mom, published_momentum_rate_template(ctx))}) {
    for (const auto& row : rep.rows)
      if (!row.match)
        out.findings.push_back({rep.name + "/" + row.term, row.derived, row.paper});
  }
  return out;
}

inline int cmd_verify(const RunConfig& cfg) {
  VerifyOutcome out = run_verification(cfg);
  detail::write_file(cfg.output_dir, "verify_report.json", out.to_json().dump(2) + "\n");
  ConsistencyReport audit = algebra_consistency_report(cfg.nc, cfg.conv);
  detail::write_file(cfg.output_dir, "nc_algebra_audit.csv", audit.to_csv());
  detail::write_file(cfg.output_dir, "nc_algebra_audit.txt", audit.to_text());
  for (const auto& c : out.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " (residual " << c.residual
              << ", tol " << c.tolerance << ")\n";
  for (const auto& s : out.symbolic)
    std::cout << (s.pass ? "PASS " : "FAIL ") << s.name
              << (s.detail.empty() ? "" : " [" + s.detail + "]") << "\n";
  for (const auto& f : out.findings)
    std::cout << "FINDING " << f.relation << ": derived " << f.derived << " vs published "
              << f.paper << "\n";
  if (out.skipped > 0)
    std::cout << "skipped " << out.skipped << " identities outside the basis dimension\n";
  std::cout << (out.pass() ? "verification PASSED" : "verification FAILED") << "\n";
  return out.pass() ? 0 : 1;
}

inline int cmd_derive(const std::string& target, const RunConfig& cfg) {
  AlgebraContext ctx = cfg.context();
  HamiltonianBundle bundle = deformed_hamiltonian(cfg.field(), cfg.nc, cfg.conv,
                                                  cfg.star_max_order);
  if (target == "hamiltonian") {
    std::ostringstream txt;
    txt << "commutative Hamiltonian:\n  " << render(bundle.h_commutative) << "\n\n"
        << "coordinate-sector deformation:\n  " << render(bundle.h_space_deformed) << "\n\n"
        << "deformed Hamiltonian:\n  " << render(bundle.h_nc) << "\n\nnotes:\n";
    for (const auto& n : bundle.notes)
      txt << "  - " << n.term << ": " << n.derived << "\n    " << n.note << "\n";
    detail::write_file(cfg.output_dir, "hamiltonian.txt", txt.str());
    detail::write_file(cfg.output_dir, "hamiltonian.tex",
                       render(bundle.h_nc, RenderFormat::Latex) + "\n");
    detail::write_file(cfg.output_dir, "hamiltonian.json", bundle_to_json(bundle).dump(2) + "\n");
    return 0;
  }
  if (target == "position-rate" || target == "momentum-rate") {
    bool is_pos = target == "position-rate";
    RateResult rate = is_pos ? position_rate(bundle, ctx)
                             : kinetic_momentum_rate(bundle, cfg.field(), ctx);
    PublishedTemplate tmpl = is_pos ? published_position_rate_template(ctx)
                                    : published_momentum_rate_template(ctx);
    DiscrepancyReport disc = paper_form_comparison(rate, tmpl);
    std::string base = is_pos ? "position_rate" : "momentum_rate";

    std::ostringstream txt;
    txt << "d" << rate.observable << "/dt, derived:\n";
    for (int j = 1; j <= 3; ++j) {
      txt << "  axis " << j << ": " << render(rate.total(j)) << "\n";
      for (const auto& [g, e] : rate.comp[j - 1].groups)
        if (!e.is_zero()) txt << "    " << term_group_name(g) << ": " << render(e) << "\n";
    }
    txt << "\ncommutator trace:\n";
    for (const auto& t : rate.trace)
      txt << "  " << t.label << " = " << render(t.value) << "\n";
    txt << "\n" << disc.to_text();
    detail::write_file(cfg.output_dir, base + ".txt", txt.str());

    std::ostringstream tex;
    for (int j = 1; j <= 3; ++j)
      tex << "\\frac{d " << (is_pos ? "\\hat{x}" : "\\hat{D}") << "_{" << j
          << "}}{dt} = " << render(rate.total(j), RenderFormat::Latex) << "\\\\\n";
    detail::write_file(cfg.output_dir, base + ".tex", tex.str());
    detail::write_file(cfg.output_dir, base + ".json", rate_to_json(rate).dump(2) + "\n");
    detail::write_file(cfg.output_dir, base + "_discrepancy.json",
                       discrepancy_to_json(disc).dump(2) + "\n");
    detail::write_file(cfg.output_dir, base + "_discrepancy.csv", disc.to_csv());
    return 0;
  }
  throw ConfigError("unknown derive target: " + target +
                    " (expected hamiltonian, position-rate or momentum-rate)");
}

/// Observables recorded along an evolution run: positions, kinetic momenta,
/// the derived rate operators for both, the velocity components and the
/// energy.
inline std::vector<std::pair<std::string, MatrixOperator>> evolution_observables(
    const RunConfig& cfg, const FockRealizer& realizer, const HamiltonianBundle& bundle,
    const RateResult& pos, const RateResult& mom) {
  std::vector<std::pair<std::string, MatrixOperator>> obs;
  for (int i = 1; i <= cfg.basis.dimension; ++i) {
    std::string n = std::to_string(i);
    obs.emplace_back("x" + n, realizer.realize(OperatorExpr::atom(Atom::position(i))));
    obs.emplace_back("D" + n, realizer.realize(mom.observable_expr[i - 1]));
    obs.emplace_back("rate_x" + n, realizer.realize(pos.total(i)));
    obs.emplace_back("rate_D" + n, realizer.realize(mom.total(i)));
    obs.emplace_back("v" + n,
                     realizer.realize(OperatorExpr::term(
                         ScalarSum::symbol(SymConst::LightSpeed), {Atom::alpha(i)})));
  }
  obs.emplace_back("H", realizer.realize(bundle.h_nc));
  return obs;
}

inline int cmd_evolve(const RunConfig& cfg) {
  AlgebraContext ctx = cfg.context();
  ConstBindings bind = cfg.bindings();
  FockRealizer realizer(cfg.basis, bind, ctx);
  HamiltonianBundle bundle = deformed_hamiltonian(cfg.field(), cfg.nc, cfg.conv,
                                                  cfg.star_max_order);
  RateResult pos = position_rate(bundle, ctx);
  RateResult mom = kinetic_momentum_rate(bundle, cfg.field(), ctx);
  auto obs = evolution_observables(cfg, realizer, bundle, pos, mom);
  StateVector psi0 = gaussian_packet(cfg.basis, cfg.evolution.x0, cfg.evolution.p0,
                                     cfg.evolution.spinor, bind);
  const double hbar = bind.at("hbar");
  MatrixOperator h = realizer.realize(bundle.h_nc);
  Trajectory traj = evolve(h, psi0, cfg.evolution.dt, cfg.evolution.steps, obs, hbar);
  Trajectory half = evolve(h, psi0, cfg.evolution.dt / 2.0, cfg.evolution.steps * 2, obs, hbar);
  detail::write_file(cfg.output_dir, "trajectory.csv", traj.to_csv());
  detail::write_file(cfg.output_dir, "trajectory_half.csv", half.to_csv());

  const Tolerances& tol = cfg.tolerances;
  nlohmann::json entries = nlohmann::json::array();
  bool pass = true;
  for (int i = 1; i <= cfg.basis.dimension; ++i) {
    for (std::string base : {std::string("x"), std::string("D")}) {
      std::string b = base + std::to_string(i);
      std::string r = "rate_" + b;
      EhrenfestResidual full = ehrenfest_residual(traj, b, r);
      EhrenfestResidual halfres = ehrenfest_residual(half, b, r);
      double ratio = halfres.max_residual > 0.0 ? full.max_residual / halfres.max_residual : 0.0;
      bool entry_pass = full.max_residual <= tol.ehrenfest && ratio >= tol.convergence_low &&
                        ratio <= tol.convergence_high;
      nlohmann::json e = residual_entry_json("d<" + b + ">/dt = <" + r + ">",
                                             full.max_residual, tol.ehrenfest);
      e["residual_half_dt"] = halfres.max_residual;
      e["convergence_ratio"] = ratio;
      e["convergence_window"] = {tol.convergence_low, tol.convergence_high};
      e["pass"] = entry_pass;
      entries.push_back(e);
      pass = pass && entry_pass;
    }
  }

  double norm_drift = 0.0, energy_drift = 0.0, vmax = 0.0;
  const auto& hcol = traj.values[traj.column("H")];
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    norm_drift = std::max(norm_drift, std::abs(traj.norms[k] - 1.0));
    energy_drift = std::max(energy_drift, std::abs(hcol[k] - hcol[0]));
  }
  for (int i = 1; i <= cfg.basis.dimension; ++i) {
    const auto& vcol = traj.values[traj.column("v" + std::to_string(i))];
    for (double v : vcol) vmax = std::max(vmax, std::abs(v));
  }
  const double c_value = bind.at("c");
  nlohmann::json structural = {
      residual_entry_json("norm drift", norm_drift, tol.unitarity),
      residual_entry_json("energy drift", energy_drift, tol.energy),
      residual_entry_json("velocity bound |<c alpha>| <= c", vmax, c_value),
  };
  for (const auto& s : structural) pass = pass && s.at("pass").get<bool>();

  nlohmann::json report;
  report["ehrenfest"] = entries;
  report["structural"] = structural;
  report["pass"] = pass;
  detail::write_file(cfg.output_dir, "ehrenfest_residuals.json", report.dump(2) + "\n");
  std::cout << (pass ? "evolution checks PASSED" : "evolution checks FAILED") << "\n";
  return pass ? 0 : 1;
}

inline int cmd_limits(const RunConfig& cfg) {
  AlgebraContext ctx = cfg.context();
  HamiltonianBundle bundle = deformed_hamiltonian(cfg.field(), cfg.nc, cfg.conv,
                                                  cfg.star_max_order);
  RateResult pos = commutative_limit(position_rate(bundle, ctx));
  RateResult mom = commutative_limit(kinetic_momentum_rate(bundle, cfg.field(), ctx));
  LimitCheck pc = limits_check(pos, classical_position_rate_template(), ctx);
  LimitCheck mc = limits_check(mom, classical_momentum_rate_template(ctx), ctx);

  std::ostringstream txt;
  txt << "position-rate limit: " << (pc.pass ? "PASS" : "FAIL") << "\n";
  txt << "momentum-rate limit: " << (mc.pass ? "PASS" : "FAIL") << "\n";
  for (int j = 0; j < 3; ++j) {
    if (!pc.delta[j].is_zero())
      txt << "  position axis " << (j + 1) << " delta: " << render(pc.delta[j]) << "\n";
    if (!mc.delta[j].is_zero())
      txt << "  momentum axis " << (j + 1) << " delta: " << render(mc.delta[j]) << "\n";
  }
  detail::write_file(cfg.output_dir, "limits_report.txt", txt.str());
  std::cout << txt.str();
  return (pc.pass && mc.pass) ? 0 : 1;
}

}  // namespace ncdirac
