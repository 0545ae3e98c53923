#pragma once

#include <array>
#include <complex>
#include <fstream>
#include <json.hpp>
#include <set>
#include <string>
#include <vector>

#include "ncdirac/matrix_rep.hpp"
#include "ncdirac/parse.hpp"

namespace ncdirac {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct EvolutionConfig {
  double dt = 1e-3;
  int steps = 2000;
  std::vector<double> x0 = {0.4, 0.0};
  std::vector<double> p0 = {0.0, 0.2};
  std::array<std::complex<double>, 4> spinor = {1.0, 0.0, 0.0, 0.0};
};

struct Tolerances {
  double identity = 1e-10;
  double hermiticity = 1e-12;
  double unitarity = 1e-12;
  double energy = 1e-10;
  double ehrenfest = 1e-5;
  double zero_commutator = 1e-12;
  double convergence_low = 3.6;
  double convergence_high = 4.4;

  void validate() const {
    for (double v : {identity, hermiticity, unitarity, energy, ehrenfest, zero_commutator,
                     convergence_low, convergence_high})
      if (v <= 0.0) throw ConfigError("tolerances must be positive");
    if (convergence_low >= convergence_high)
      throw ConfigError("convergence window must be ordered");
  }
};

/// Complete description of one run: deformation parameters, conventions,
/// fields, oracle basis, numeric bindings, evolution scenario, outputs.
/// Every key has a default; unknown keys are rejected with their path.
struct RunConfig {
  NCParameters nc{};
  ConventionConfig conv = ConventionConfig::defaults();

  std::string gauge = "symmetric";  // symmetric | free | custom
  bool uniform_e = true;
  std::array<std::string, 3> custom_a = {"0", "0", "0"};
  std::string custom_phi = "0";
  int d_max = 2;

  FockBasisConfig basis{};
  ConstBindings constants = {{"hbar", 1.0}, {"c", 1.0}, {"e", 1.0}, {"m", 1.0},
                             {"B", 1.0},    {"E1", 0.1}, {"E2", 0.0}, {"E3", 0.0}};
  EvolutionConfig evolution{};
  Tolerances tolerances{};
  int star_max_order = 4;
  std::string output_dir = "out";

  FieldSpec field() const {
    if (gauge == "symmetric")
      return uniform_e ? FieldSpec::symmetric_gauge_uniform_e() : FieldSpec::symmetric_gauge_only();
    if (gauge == "free")
      return uniform_e ? FieldSpec::uniform_e_only() : FieldSpec::free_field();
    if (gauge == "custom") {
      AlgebraContext scratch = AlgebraContext::commutative(FieldSpec::free_field());
      std::array<OperatorExpr, 3> a;
      for (int i = 0; i < 3; ++i) a[i] = parse_expr(custom_a[i], scratch);
      OperatorExpr phi = parse_expr(custom_phi, scratch);
      return FieldSpec::custom(a, phi, d_max);
    }
    throw ConfigError("field.gauge must be symmetric, free or custom");
  }

  AlgebraContext context() const { return AlgebraContext::commutative(field()); }

  /// Constant bindings for the matrix oracle, including the deformation
  /// parameters themselves.
  ConstBindings bindings() const {
    ConstBindings b = constants;
    b["Theta"] = nc.theta;
    b["eta"] = nc.eta;
    b["hbar"] = nc.hbar;
    return b;
  }

  void validate() {
    nc.validate();
    conv.validate();
    basis.validate();
    tolerances.validate();
    if (basis.dimension == 1 && (nc.theta != 0.0 || nc.eta != 0.0)) {
      // noncommutativity is trivial in one dimension
      nc.theta = 0.0;
      nc.eta = 0.0;
    }
    if (evolution.dt <= 0.0 || evolution.steps < 4)
      throw ConfigError("evolution.dt must be positive and steps >= 4");
    if (static_cast<int>(evolution.x0.size()) < basis.dimension ||
        static_cast<int>(evolution.p0.size()) < basis.dimension)
      throw ConfigError("evolution.x0/p0 need one entry per basis axis");
    evolution.x0.resize(basis.dimension);
    evolution.p0.resize(basis.dimension);
    if (star_max_order < 1) throw ConfigError("star_max_order must be >= 1");
    (void)field();  // surfaces custom-field parse errors early
  }

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config JSON parse error: " + std::string(e.what()));
    }
    return from_json(j);
  }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                           const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError("unknown config key: " + path + it.key());
}

inline Rational rational_from_string(const std::string& s, const std::string& path) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ConfigError("expected a rational like \"1/2\" at " + path);
  }
}

}  // namespace detail

inline RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig cfg;
  detail::reject_unknown(j,
                         {"nc", "convention", "field", "basis", "constants", "evolution",
                          "tolerances", "star_max_order", "output_dir"},
                         "");
  if (j.contains("nc")) {
    const auto& n = j.at("nc");
    detail::reject_unknown(n, {"theta", "eta", "hbar", "a_scale", "b_scale"}, "nc.");
    cfg.nc.theta = n.value("theta", cfg.nc.theta);
    cfg.nc.eta = n.value("eta", cfg.nc.eta);
    cfg.nc.hbar = n.value("hbar", cfg.nc.hbar);
    if (n.contains("a_scale"))
      cfg.nc.a_scale = detail::rational_from_string(n.at("a_scale").get<std::string>(),
                                                    "nc.a_scale");
    if (n.contains("b_scale"))
      cfg.nc.b_scale = detail::rational_from_string(n.at("b_scale").get<std::string>(),
                                                    "nc.b_scale");
  }
  if (j.contains("convention")) {
    const auto& c = j.at("convention");
    detail::reject_unknown(c, {"kappa_theta", "kappa_eta", "bopp_denominator"}, "convention.");
    if (c.contains("kappa_theta"))
      cfg.conv.kappa_theta = detail::rational_from_string(c.at("kappa_theta").get<std::string>(),
                                                          "convention.kappa_theta");
    if (c.contains("kappa_eta"))
      cfg.conv.kappa_eta = detail::rational_from_string(c.at("kappa_eta").get<std::string>(),
                                                        "convention.kappa_eta");
    cfg.conv.bopp_denominator_factor = c.value("bopp_denominator", 4);
  }
  if (j.contains("field")) {
    const auto& f = j.at("field");
    detail::reject_unknown(f, {"gauge", "uniform_e", "A", "phi", "d_max"}, "field.");
    cfg.gauge = f.value("gauge", cfg.gauge);
    cfg.uniform_e = f.value("uniform_e", cfg.uniform_e);
    if (f.contains("A")) {
      const auto& a = f.at("A");
      if (!a.is_array() || a.size() != 3)
        throw ConfigError("field.A must be an array of three expressions");
      for (int i = 0; i < 3; ++i) cfg.custom_a[i] = a.at(i).get<std::string>();
    }
    cfg.custom_phi = f.value("phi", cfg.custom_phi);
    cfg.d_max = f.value("d_max", cfg.d_max);
  }
  if (j.contains("basis")) {
    const auto& b = j.at("basis");
    detail::reject_unknown(b, {"dimension", "levels", "omega", "guard"}, "basis.");
    cfg.basis.dimension = b.value("dimension", cfg.basis.dimension);
    cfg.basis.levels = b.value("levels", cfg.basis.levels);
    cfg.basis.omega = b.value("omega", cfg.basis.omega);
    cfg.basis.guard = b.value("guard", cfg.basis.guard);
  }
  if (j.contains("constants")) {
    const auto& c = j.at("constants");
    for (auto it = c.begin(); it != c.end(); ++it) {
      if (!is_sym_name(it.key()) || it.key() == "Theta" || it.key() == "eta")
        throw ConfigError("unknown config key: constants." + it.key() +
                          " (Theta/eta belong under nc)");
      cfg.constants[it.key()] = it.value().get<double>();
    }
  }
  if (j.contains("evolution")) {
    const auto& e = j.at("evolution");
    detail::reject_unknown(e, {"dt", "steps", "x0", "p0", "spinor"}, "evolution.");
    cfg.evolution.dt = e.value("dt", cfg.evolution.dt);
    cfg.evolution.steps = e.value("steps", cfg.evolution.steps);
    if (e.contains("x0")) cfg.evolution.x0 = e.at("x0").get<std::vector<double>>();
    if (e.contains("p0")) cfg.evolution.p0 = e.at("p0").get<std::vector<double>>();
    if (e.contains("spinor")) {
      const auto& s = e.at("spinor");
      if (!s.is_array() || s.size() != 4)
        throw ConfigError("evolution.spinor must list four [re, im] pairs");
      for (int k = 0; k < 4; ++k) {
        const auto& pair = s.at(k);
        if (!pair.is_array() || pair.size() != 2)
          throw ConfigError("evolution.spinor must list four [re, im] pairs");
        cfg.evolution.spinor[k] =
            std::complex<double>(pair.at(0).get<double>(), pair.at(1).get<double>());
      }
    }
  }
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    detail::reject_unknown(t,
                           {"identity", "hermiticity", "unitarity", "energy", "ehrenfest",
                            "zero_commutator", "convergence_low", "convergence_high"},
                           "tolerances.");
    cfg.tolerances.identity = t.value("identity", cfg.tolerances.identity);
    cfg.tolerances.hermiticity = t.value("hermiticity", cfg.tolerances.hermiticity);
    cfg.tolerances.unitarity = t.value("unitarity", cfg.tolerances.unitarity);
    cfg.tolerances.energy = t.value("energy", cfg.tolerances.energy);
    cfg.tolerances.ehrenfest = t.value("ehrenfest", cfg.tolerances.ehrenfest);
    cfg.tolerances.zero_commutator = t.value("zero_commutator", cfg.tolerances.zero_commutator);
    cfg.tolerances.convergence_low = t.value("convergence_low", cfg.tolerances.convergence_low);
    cfg.tolerances.convergence_high =
        t.value("convergence_high", cfg.tolerances.convergence_high);
  }
  cfg.star_max_order = j.value("star_max_order", cfg.star_max_order);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.validate();
  return cfg;
}

}  // namespace ncdirac
