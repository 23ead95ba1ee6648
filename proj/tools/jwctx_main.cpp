#include "jwcontext/correlators.hpp"
#include "jwcontext/fock.hpp"
#include "jwcontext/inequalities.hpp"
#include "jwcontext/io.hpp"
#include "jwcontext/modegrid.hpp"
#include "jwcontext/optimize.hpp"
#include "jwcontext/random.hpp"
#include "jwcontext/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace jwcontext;

struct CommonOpts {
  std::string format = "table";
  std::string output;
  std::uint64_t seed = 42;
};

struct OptOpts {
  int restarts = 16;
  int max_sweeps = 200;
  double tolerance = 1e-10;
  int grid_resolution = 12;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  cmd->add_option("--output", opts.output, "Write output to a file instead of stdout");
  cmd->add_option("--seed", opts.seed, "Seed for all pseudorandomness");
}

void add_optimizer(CLI::App* cmd, OptOpts& opts) {
  cmd->add_option("--restarts", opts.restarts, "Optimizer restarts");
  cmd->add_option("--max-sweeps", opts.max_sweeps, "Optimizer sweep limit");
  cmd->add_option("--opt-tolerance", opts.tolerance, "Optimizer convergence tolerance");
  cmd->add_option("--grid-resolution", opts.grid_resolution, "Grid oracle steps per angle");
}

OptimizerConfig optimizer_config(const CommonOpts& common, const OptOpts& opt) {
  OptimizerConfig cfg;
  cfg.restarts = opt.restarts;
  cfg.max_sweeps = opt.max_sweeps;
  cfg.tolerance = opt.tolerance;
  cfg.grid_resolution = opt.grid_resolution;
  cfg.seed = common.seed;
  return cfg;
}

void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.output.empty())
    std::cout << text;
  else
    write_output(opts.output, text);
}

FermionState parse_hardy_state(const std::string& spec, int modes, int excitations) {
  if (spec == "W") return w_state(modes);
  if (spec == "dicke") return dicke_state(modes, excitations);
  if (spec.rfind("file:", 0) == 0) {
    LoadedState loaded = load_state_file(spec.substr(5));
    if (!std::holds_alternative<FermionState>(loaded))
      throw DomainError("the Hardy expression takes a pure state file");
    return std::get<FermionState>(loaded);
  }
  throw DomainError("unknown state spec: " + spec + " (use W, dicke or file:<path>)");
}

int run_verify(const CommonOpts& common, const std::string& scope) {
  const std::vector<CheckResult> results = verify_scope(scope, common.seed);
  emit(common, render_verify(results, parse_output_format(common.format)));
  return all_pass(results) ? 0 : 1;
}

int run_chsh(const CommonOpts& common, const OptOpts& opt, double g1, double g2,
             int scan_points) {
  std::vector<std::pair<double, double>> amplitudes;
  if (scan_points > 0) {
    if (scan_points < 2) throw DomainError("--scan needs at least 2 grid points");
    for (int i = 0; i < scan_points; ++i) {
      const double g1sq = static_cast<double>(i) / (scan_points - 1);
      amplitudes.emplace_back(std::sqrt(g1sq), std::sqrt(1.0 - g1sq));
    }
  } else {
    // CLI amplitudes are renormalized exactly; inputs off by more than 1e-6
    // are rejected.
    const double n2 = g1 * g1 + g2 * g2;
    if (std::abs(n2 - 1.0) > 1e-6)
      throw NormalizationError("g1^2 + g2^2 must equal 1 (within 1e-6)");
    const double inv = 1.0 / std::sqrt(n2);
    amplitudes.emplace_back(g1 * inv, g2 * inv);
  }

  const OptimizerConfig cfg = optimizer_config(common, opt);
  std::vector<ChshScanRow> rows;
  for (const auto& [a1, a2] : amplitudes) {
    const ChshOptimum analytic = chsh_analytic_optimum(a1, a2);
    const FermionState state = FermionState::single_particle(
        std::vector<cplx>{cplx{a1, 0.0}, cplx{a2, 0.0}});
    const AscentResult best = optimize_settings(state, Inequality::Chsh, cfg);
    rows.push_back({a1 * a1, analytic.value, best.value,
                    chsh_settings_from_labels(best.labels)});
  }
  emit(common, render_chsh_scan(rows, parse_output_format(common.format)));
  return 0;
}

int run_hardy(const CommonOpts& common, const OptOpts& opt, const std::string& state_spec,
              int modes, int excitations) {
  const FermionState state = parse_hardy_state(state_spec, modes, excitations);
  const OptimizerConfig cfg = optimizer_config(common, opt);
  const AscentResult best = optimize_settings(state, Inequality::Hardy, cfg);

  InequalityReport report;
  report.name = "hardy";
  report.quantum_value = best.value;
  report.nc_bound = hardy_nchv_bound(std::min(state.mode_count(), 8));
  report.margin = report.quantum_value - report.nc_bound;
  report.settings = hardy_labeled_settings(
      hardy_settings_from_labels(best.labels, state.mode_count()));
  report.state_label = state.label().empty() ? state_spec : state.label();
  emit(common, render_report(report, parse_output_format(common.format)));
  return 0;
}

int run_pm(const CommonOpts& common, const std::string& state_spec, bool classical) {
  InequalityReport report;
  report.name = "pm";
  report.nc_bound = pm_nchv_bound();
  report.settings = pm_labeled_settings();

  if (classical) {
    report.quantum_value = pm_nchv_bound();  // best deterministic assignment
    report.state_label = "deterministic assignment";
  } else if (state_spec == "maxmixed") {
    report.quantum_value = pm_square_value(DensityState::maximally_mixed(2));
    report.state_label = "maximally mixed (M=2)";
  } else if (state_spec == "random") {
    Rng rng(common.seed);
    report.quantum_value = pm_square_value(random_density_state(rng, 2));
    report.state_label = "random mixed (M=2, seed " + std::to_string(common.seed) + ")";
  } else if (state_spec.rfind("file:", 0) == 0) {
    const LoadedState loaded = load_state_file(state_spec.substr(5));
    const DensityState rho = std::holds_alternative<DensityState>(loaded)
                                 ? std::get<DensityState>(loaded)
                                 : DensityState::pure(std::get<FermionState>(loaded));
    report.quantum_value = pm_square_value(rho);
    report.state_label = state_spec.substr(5);
  } else {
    throw DomainError("unknown state spec: " + state_spec +
                      " (use random, maxmixed or file:<path>)");
  }
  report.margin = report.quantum_value - report.nc_bound;
  emit(common, render_report(report, parse_output_format(common.format)));
  return 0;
}

int run_complementarity(const CommonOpts& common, const OptOpts& opt, int k_index,
                        int modes, double length) {
  const ModeGrid grid = ModeGrid::uniform(length, modes);
  if (k_index < 1 || k_index > modes)
    throw DomainError("--k-index must lie in 1..modes");
  std::vector<cplx> g(static_cast<std::size_t>(modes), cplx{0.0, 0.0});
  g[static_cast<std::size_t>(k_index - 1)] = cplx{1.0, 0.0};
  const FermionState state = FermionState::single_particle(
      g, "planewave k" + std::to_string(k_index));
  const InequalityReport report =
      position_basis_report(state, grid, optimizer_config(common, opt));
  emit(common, render_report(report, parse_output_format(common.format)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"jwctx: Jordan-Wigner observables over fermionic modes and "
               "noncontextuality-inequality violations"};
  app.require_subcommand(1);

  // verify
  CommonOpts verify_common;
  std::string scope = "all";
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
  verify_cmd->add_option("--scope", scope, "Suite selection")
      ->check(CLI::IsMember({"all", "fock", "jw", "correlators", "inequalities"}));
  add_common(verify_cmd, verify_common);

  // chsh
  CommonOpts chsh_common;
  OptOpts chsh_opt;
  double g1 = 0.0, g2 = 0.0;
  int scan_points = 0;
  CLI::App* chsh_cmd =
      app.add_subcommand("chsh", "CHSH value: analytic optimum vs optimizer");
  CLI::Option* g1_opt = chsh_cmd->add_option("--g1", g1, "First amplitude");
  CLI::Option* g2_opt = chsh_cmd->add_option("--g2", g2, "Second amplitude");
  CLI::Option* scan_opt =
      chsh_cmd->add_option("--scan", scan_points, "Scan a grid of g1^2 values");
  g1_opt->needs(g2_opt);
  scan_opt->excludes(g1_opt);
  add_common(chsh_cmd, chsh_common);
  add_optimizer(chsh_cmd, chsh_opt);

  // hardy
  CommonOpts hardy_common;
  OptOpts hardy_opt;
  std::string hardy_state = "W";
  int hardy_modes = 3;
  int hardy_excitations = 1;
  CLI::App* hardy_cmd = app.add_subcommand("hardy", "Optimize the Hardy expression");
  hardy_cmd->add_option("--state", hardy_state, "W, dicke or file:<path>");
  hardy_cmd->add_option("--modes", hardy_modes, "Mode count for W/dicke states");
  hardy_cmd->add_option("--excitations", hardy_excitations, "Excitations for dicke");
  add_common(hardy_cmd, hardy_common);
  add_optimizer(hardy_cmd, hardy_opt);

  // pm
  CommonOpts pm_common;
  std::string pm_state = "random";
  bool pm_classical = false;
  CLI::App* pm_cmd = app.add_subcommand("pm", "Peres-Mermin square value");
  pm_cmd->add_option("--state", pm_state, "random, maxmixed or file:<path>");
  pm_cmd->add_flag("--classical", pm_classical,
                   "Report the best deterministic assignment instead");
  add_common(pm_cmd, pm_common);

  // complementarity
  CommonOpts comp_common;
  OptOpts comp_opt;
  int k_index = 1;
  int comp_modes = 2;
  double length = 1.0;
  CLI::App* comp_cmd = app.add_subcommand(
      "complementarity", "Position-basis inequality for a definite-momentum state");
  comp_cmd->add_option("--k-index", k_index, "Occupied momentum mode (1-based)");
  comp_cmd->add_option("--modes", comp_modes, "Number of position modes M'")->required();
  comp_cmd->add_option("--length", length, "Box length L");
  add_common(comp_cmd, comp_common);
  add_optimizer(comp_cmd, comp_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_cmd->parsed()) return run_verify(verify_common, scope);
    if (chsh_cmd->parsed()) {
      if (scan_points == 0 && g1_opt->count() == 0)
        throw DomainError("chsh needs --g1/--g2 or --scan");
      return run_chsh(chsh_common, chsh_opt, g1, g2, scan_points);
    }
    if (hardy_cmd->parsed())
      return run_hardy(hardy_common, hardy_opt, hardy_state, hardy_modes,
                       hardy_excitations);
    if (pm_cmd->parsed()) return run_pm(pm_common, pm_state, pm_classical);
    if (comp_cmd->parsed())
      return run_complementarity(comp_common, comp_opt, k_index, comp_modes, length);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
