#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "ncdirac/commands.hpp"

namespace {

void print_json_artifact(const std::string& dir, const std::string& name) {
  std::ifstream in(dir + "/" + name);
  if (!in) return;
  std::cout << in.rdbuf();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deformed Dirac dynamics: derivation, verification and evolution toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string convention;
  std::string target;
  int order = -1;
  bool json_flag = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--out", out_dir, "output directory (overrides the config)");
    sub->add_option("--convention", convention,
                    "coefficient convention preset: default (kappa=1/2, denominator 4*hbar) "
                    "or kappa1 (kappa=1, denominator 2*hbar)");
    sub->add_option("--order", order, "deformed-product truncation order");
    sub->add_flag("--json", json_flag, "echo the JSON report to stdout");
  };

  CLI::App* derive = app.add_subcommand(
      "derive", "derive the deformed Hamiltonian or a Heisenberg rate and write reports");
  derive->add_option("target", target, "hamiltonian | position-rate | momentum-rate")
      ->required();
  add_common(derive);
  CLI::App* verify =
      app.add_subcommand("verify", "run the full symbolic/numeric consistency battery");
  add_common(verify);
  CLI::App* evolve_cmd =
      app.add_subcommand("evolve", "evolve a wavepacket and check the expectation-value rates");
  add_common(evolve_cmd);
  CLI::App* limits =
      app.add_subcommand("limits", "regress the commutative limits against the textbook forms");
  add_common(limits);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 2;
  }

  try {
    ncdirac::RunConfig cfg;
    if (!config_path.empty()) {
      cfg = ncdirac::RunConfig::from_file(config_path);
    } else {
      cfg.validate();
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!convention.empty()) {
      if (convention == "default")
        cfg.conv = ncdirac::ConventionConfig::defaults();
      else if (convention == "kappa1")
        cfg.conv = ncdirac::ConventionConfig::kappa_one();
      else
        throw ncdirac::ConfigError("unknown convention preset: " + convention);
    }
    if (order > 0) cfg.star_max_order = order;
    cfg.validate();

    int rc = 0;
    std::string artifact;
    if (*derive) {
      rc = ncdirac::cmd_derive(target, cfg);
      artifact = (target == "hamiltonian") ? "hamiltonian.json"
                 : (target == "position-rate") ? "position_rate.json"
                                               : "momentum_rate.json";
    } else if (*verify) {
      rc = ncdirac::cmd_verify(cfg);
      artifact = "verify_report.json";
    } else if (*evolve_cmd) {
      rc = ncdirac::cmd_evolve(cfg);
      artifact = "ehrenfest_residuals.json";
    } else if (*limits) {
      rc = ncdirac::cmd_limits(cfg);
    }
    if (json_flag && !artifact.empty()) print_json_artifact(cfg.output_dir, artifact);
    return rc;
  } catch (const ncdirac::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ncdirac::ParseError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
