#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "rspgame/experiment.hpp"

// Exit codes: 0 success, 1 verification failure, 2 validation/config errors,
// 3 solver failures.

namespace {

using rsp::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct CommonOptions {
  std::string config_path;
  std::string output_dir;
  std::vector<double> q_values;
  double capacity = -1.0;
  double tol = -1.0;
  int seed = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Path to a JSON experiment config");
  cmd->add_option("--out", opts.output_dir, "Output directory");
  cmd->add_option("--q", opts.q_values, "q values (sweep grid or single instance mix)");
  cmd->add_option("--capacity", opts.capacity, "Per-provider fleet capacity");
  cmd->add_option("--tol", opts.tol, "Verification tolerance");
  cmd->add_option("--seed", opts.seed, "Seed for randomized tooling (solves are deterministic)");
}

ExperimentConfig build_config(const CommonOptions& opts, const std::string& mode) {
  ExperimentConfig config;
  if (!opts.config_path.empty()) config = rsp::load_config(opts.config_path);
  config.mode = mode;
  if (!opts.output_dir.empty()) config.output_dir = opts.output_dir;
  if (!opts.q_values.empty()) {
    config.sweep_q = opts.q_values;
    if (config.two_cluster) config.two_cluster->q = opts.q_values.front();
  }
  if (opts.capacity >= 0.0 && config.two_cluster) config.two_cluster->capacity = opts.capacity;
  if (opts.tol > 0.0) config.tol = opts.tol;
  if (opts.seed >= 0) config.seed = static_cast<unsigned>(opts.seed);
  for (double q : config.sweep_q)
    if (!(q > 0.0 && q <= 0.5)) throw std::invalid_argument("q must lie in (0, 0.5]");
  return config;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
}

int run_solve(const ExperimentConfig& config) {
  const rsp::ProblemInstance inst = rsp::make_instance(config);
  const auto violations = rsp::validate_instance(inst);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << v.field << ": " << v.message << "\n";
    return kExitValidation;
  }
  rsp::GneSolution sol = rsp::solve_gne(inst, config.solver, true, config.tol);
  if (sol.status != rsp::QpStatus::optimal) {
    std::cerr << "solver status: " << rsp::qp_status_name(sol.status) << "\n";
    return kExitSolver;
  }
  const std::filesystem::path out_dir(config.output_dir);
  write_json(out_dir / "solution.json", rsp::gne_to_json(inst, sol));
  {
    std::ofstream csv(out_dir / "solution.csv");
    rsp::write_solution_csv(inst, sol, csv);
  }
  std::cout << "profit " << sol.provider[0].profit << " " << sol.provider[1].profit
            << "\npotential " << sol.potential << "\ndeviation_gain " << sol.deviation_gain[0]
            << " " << sol.deviation_gain[1] << "\nwrote " << (out_dir / "solution.json").string()
            << "\n";
  return kExitOk;
}

int run_monopoly(const ExperimentConfig& config) {
  const rsp::ProblemInstance inst = rsp::make_instance(config);
  rsp::MonopolySolution sol = rsp::solve_monopoly(inst, true, config.solver);
  if (sol.status != rsp::QpStatus::optimal) {
    std::cerr << "solver status: " << rsp::qp_status_name(sol.status) << "\n";
    return kExitSolver;
  }
  const std::filesystem::path out_dir(config.output_dir);
  write_json(out_dir / "monopoly.json", rsp::monopoly_to_json(inst, sol));
  {
    std::ofstream csv(out_dir / "monopoly.csv");
    rsp::write_solution_csv(inst, sol, csv);
  }
  std::cout << "profit " << sol.profit << "\nwrote " << (out_dir / "monopoly.json").string()
            << "\n";
  return kExitOk;
}

int run_stochastic(const ExperimentConfig& config) {
  const rsp::ProblemInstance inst = rsp::make_instance(config);
  if (config.scenarios.is_null()) {
    std::cerr << "stochastic mode needs a scenarios block in the config\n";
    return kExitValidation;
  }
  const rsp::ScenarioSet scenarios = rsp::scenarios_from_json(inst, config.scenarios);
  rsp::GneSolution sol = rsp::solve_stochastic_gne(inst, scenarios, config.solver);
  if (sol.status != rsp::QpStatus::optimal) {
    std::cerr << "solver status: " << rsp::qp_status_name(sol.status) << "\n";
    return kExitSolver;
  }
  const std::filesystem::path out_dir(config.output_dir);
  write_json(out_dir / "stochastic.json", rsp::gne_to_json(inst, sol));
  std::cout << "expected profit " << sol.provider[0].profit << " " << sol.provider[1].profit
            << "\nwrote " << (out_dir / "stochastic.json").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-provider ride-service pricing and routing equilibria"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string solution_path;

  CLI::App* solve = app.add_subcommand("solve", "Solve the duopoly equilibrium");
  CLI::App* sweep = app.add_subcommand("sweep", "Equilibrium + monopoly across a q grid");
  CLI::App* monopoly = app.add_subcommand("monopoly", "Merged-fleet monopoly benchmark");
  CLI::App* compare = app.add_subcommand("compare", "Monopoly/duopoly partition check");
  CLI::App* verify = app.add_subcommand("verify", "Re-check a written solution file");
  CLI::App* stochastic = app.add_subcommand("stochastic", "Scenario-based equilibrium");
  for (CLI::App* cmd : {solve, sweep, monopoly, compare, verify, stochastic})
    add_common(cmd, opts);
  verify->add_option("--solution", solution_path, "Solution JSON to verify")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(solve)) return run_solve(build_config(opts, "solve"));
    if (app.got_subcommand(sweep)) {
      const ExperimentConfig config = build_config(opts, "sweep");
      rsp::SweepResult result = rsp::run_sweep(config);
      std::cout << "q points: " << result.points.size() << "\nwrote "
                << (std::filesystem::path(config.output_dir) / "sweep.csv").string() << "\n";
      return kExitOk;
    }
    if (app.got_subcommand(monopoly)) return run_monopoly(build_config(opts, "monopoly"));
    if (app.got_subcommand(compare)) {
      const ExperimentConfig config = build_config(opts, "compare");
      const nlohmann::json doc = rsp::run_compare(config);
      std::cout << "verdict " << (doc.at("verdict").get<bool>() ? "true" : "false") << "\nwrote "
                << (std::filesystem::path(config.output_dir) / "equivalence.json").string()
                << "\n";
      return kExitOk;
    }
    if (app.got_subcommand(verify)) {
      const ExperimentConfig config = build_config(opts, "verify");
      const nlohmann::json report = rsp::run_verify(config, solution_path);
      write_json(std::filesystem::path(config.output_dir) / "verify.json", report);
      for (const auto& check : report.at("checks"))
        std::cout << (check.at("pass").get<bool>() ? "PASS " : "FAIL ")
                  << check.at("name").get<std::string>()
                  << (check.at("gating").get<bool>() ? "" : " (informational)") << "\n";
      return rsp::verify_report_passed(report) ? kExitOk : kExitVerifyFailed;
    }
    if (app.got_subcommand(stochastic)) return run_stochastic(build_config(opts, "stochastic"));
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const std::runtime_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    const std::string what = err.what();
    return what.find("solve") != std::string::npos ? kExitSolver : kExitValidation;
  }
  return kExitValidation;
}
