// vepc: validate scenarios, solve placements, run replica sweeps, and
// verify solutions.
//
// Exit codes: 0 success, 1 invalid input, 2 infeasible, 3 solver failure,
// 4 verification failure, 5 missing input file.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vepc/experiments.hpp"
#include "vepc/solve.hpp"
#include "vepc/verify.hpp"

namespace fs = std::filesystem;
using namespace vepc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitVerifyFailure = 4;
constexpr int kExitMissingFile = 5;

struct CommonOpts {
  std::string engine = "external";
  std::string solver_cmd;
  double time_limit = 600.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int iterations = 10;
  std::string out = "out";
  int jobs = 1;
  bool quick = false;
};

int check_file(const std::string& path) {
  if (!fs::exists(path)) {
    std::cerr << "error: no such file: " << path << "\n";
    return kExitMissingFile;
  }
  return kExitOk;
}

Scenario load_and_prepare(const std::string& path, const CommonOpts& opts) {
  Scenario s = load_scenario_file(path);
  if (opts.seed_set) s.seed = opts.seed;
  if (!opts.solver_cmd.empty()) s.solver.command = opts.solver_cmd;
  s.solver.time_limit_s = opts.time_limit;
  if (opts.quick) {
    // reduced scenario: one fifth of the flow population and traffic
    s.total_traffic_gbps /= 5.0;
    s.nas_table.rows[NasProcedure::Attach].first = 2;
    s.nas_table.rows[NasProcedure::DedicatedBearer].first = 9;
    s.nas_table.rows[NasProcedure::X2Handover].first = 1;
    s.nas_table.rows[NasProcedure::S1Handover].first = 2;
    s.nas_table.no_nas_flows = 10;
    s.flows.clear();
  }
  if (s.flows.empty()) s.flows = generate_flows(s);
  return s;
}

int cmd_validate(const std::string& scenario_path) {
  if (int rc = check_file(scenario_path); rc != kExitOk) return rc;
  try {
    Scenario s = load_scenario_file(scenario_path);
    if (s.flows.empty()) s.flows = generate_flows(s);
    std::vector<ServiceChain> chains = s.compose_chains();
    double demand = 0;
    for (const TrafficFlow& f : s.flows) demand += f.demand_gbps;
    std::cout << "topology: " << s.topology.nodes().size() << " nodes, "
              << s.topology.arcs().size() / 2 << " links\n"
              << "applications: " << s.apps.apps().size() << "\n"
              << "flows: " << s.flows.size() << " (total "
              << demand << " Gbps)\n"
              << "chains: " << chains.size() << "\nvalid\n";
    return kExitOk;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int solution_exit_code(const PlacementSolution& sol) {
  switch (sol.meta.status) {
    case SolveStatus::Optimal:
    case SolveStatus::Feasible:
      return kExitOk;
    case SolveStatus::Infeasible:
      return kExitInfeasible;
    default:
      return kExitSolverFailure;
  }
}

int cmd_solve(const std::string& scenario_path, const CommonOpts& opts) {
  if (int rc = check_file(scenario_path); rc != kExitOk) return rc;
  Scenario s = load_and_prepare(scenario_path, opts);
  std::vector<ServiceChain> chains = s.compose_chains();
  PlacementSolution sol;
  switch (engine_from_string(opts.engine)) {
    case Engine::External: sol = solve_external(s); break;
    case Engine::Exhaustive: sol = solve_exhaustive(s, chains); break;
    case Engine::Greedy: sol = solve_greedy(s, chains); break;
  }
  std::cerr << "status: " << to_string(sol.meta.status) << ", objective "
            << sol.objective << ", wall " << sol.meta.wall_time_s << " s\n";
  if (int rc = solution_exit_code(sol); rc != kExitOk) return rc;

  fs::create_directories(opts.out);
  {
    std::ofstream out(fs::path(opts.out) / "solution.json");
    out << to_json(sol).dump(2) << "\n";
  }
  VerificationReport rep = check_solution(s, chains, sol);
  {
    std::ofstream out(fs::path(opts.out) / "report.json");
    out << rep.to_json().dump(2) << "\n";
  }
  std::cout << rep.to_table();
  return rep.passed() ? kExitOk : kExitVerifyFailure;
}

int cmd_sweep(const std::string& scenario_path, const std::string& sweep_name,
              const std::string& r_values_csv, const CommonOpts& opts) {
  if (int rc = check_file(scenario_path); rc != kExitOk) return rc;
  Scenario base = load_and_prepare(scenario_path, opts);
  Engine engine = engine_from_string(opts.engine);
  SweepResult result;
  if (sweep_name == "fig4b") {
    std::vector<int> r_values;
    std::stringstream ss(r_values_csv);
    for (std::string tok; std::getline(ss, tok, ',');)
      r_values.push_back(std::stoi(tok));
    result = sweep_vepc_replicas(base, r_values, opts.iterations, engine,
                                 opts.jobs);
  } else if (sweep_name == "fig4c") {
    auto limits = [](int mme, int hss, int pcrf, int sgw, int pgw) {
      return std::map<VnfId, int>{{VnfId::MME, mme},
                                  {VnfId::HSS, hss},
                                  {VnfId::PCRF, pcrf},
                                  {VnfId::SGW, sgw},
                                  {VnfId::PGW, pgw}};
    };
    std::vector<std::pair<std::string, std::map<VnfId, int>>> configs = {
        {"MME=1", limits(1, 2, 2, 2, 2)},
        {"HSS=1", limits(2, 1, 2, 2, 2)},
        {"PCRF=1", limits(2, 2, 1, 2, 2)},
        {"SGW,PGW=2", limits(1, 1, 1, 2, 2)},
        {"all=2", limits(2, 2, 2, 2, 2)},
        {"all=1", limits(1, 1, 1, 1, 1)},
    };
    result = sweep_vnf_replicas(base, configs, opts.iterations, engine,
                                opts.jobs);
  } else {
    std::cerr << "error: unknown sweep '" << sweep_name
              << "' (expected fig4b or fig4c)\n";
    return kExitInvalid;
  }
  emit_results(result, opts.out);
  for (const SweepSummary& s : result.summaries)
    std::cout << s.config << ": mean " << s.mean_objective << " +- "
              << s.stddev_objective << " Gbps*link over " << s.solved
              << " iterations (" << s.failed << " unsolved)\n";
  return kExitOk;
}

int cmd_verify(const std::string& scenario_path,
               const std::string& solution_path, const CommonOpts& opts) {
  if (int rc = check_file(scenario_path); rc != kExitOk) return rc;
  if (int rc = check_file(solution_path); rc != kExitOk) return rc;
  Scenario s = load_and_prepare(scenario_path, opts);
  std::ifstream in(solution_path);
  nlohmann::json j;
  in >> j;
  PlacementSolution sol = solution_from_json(j);
  VerificationReport rep = check_solution(s, sol);
  std::cout << rep.to_table();
  return rep.passed() ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vEPC placement toolkit"};
  app.require_subcommand(1);
  CommonOpts opts;
  std::string scenario_path;
  std::string solution_path;
  std::string sweep_name = "fig4b";
  std::string r_values = "1,2,3,4,5";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--engine", opts.engine,
                    "solver engine: external, exhaustive, greedy")
        ->check(CLI::IsMember({"external", "exhaustive", "greedy"}));
    sub->add_option("--solver-cmd", opts.solver_cmd,
                    "external solver command template with {mps} {sol} "
                    "{time_limit} placeholders");
    sub->add_option("--time-limit", opts.time_limit,
                    "solver time limit in seconds (default 600)");
    sub->add_option("--seed", opts.seed, "override scenario seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    sub->add_option("--out", opts.out, "output directory (default ./out)");
    sub->add_flag("--quick", opts.quick,
                  "reduced scenario: 1/5 flows and traffic");
  };

  auto* validate =
      app.add_subcommand("validate", "load and validate a scenario bundle");
  validate->add_option("scenario", scenario_path)->required();

  auto* solve = app.add_subcommand("solve", "solve one scenario and verify");
  solve->add_option("scenario", scenario_path)->required();
  add_common(solve);

  auto* sweep = app.add_subcommand("sweep", "replica sweeps (fig4b/fig4c)");
  sweep->add_option("scenario", scenario_path)->required();
  sweep->add_option("--sweep", sweep_name, "fig4b (uniform vEPC replicas) "
                    "or fig4c (per-VNF replica configs)");
  sweep->add_option("--r-values", r_values,
                    "comma-separated replica counts for fig4b");
  sweep->add_option("--iterations", opts.iterations,
                    "seeded iterations per config (default 10)");
  sweep->add_option("--jobs", opts.jobs, "parallel solver invocations");
  add_common(sweep);

  auto* verify =
      app.add_subcommand("verify", "check a solution file against a scenario");
  verify->add_option("scenario", scenario_path)->required();
  verify->add_option("solution", solution_path)->required();
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(scenario_path);
    if (solve->parsed()) return cmd_solve(scenario_path, opts);
    if (sweep->parsed())
      return cmd_sweep(scenario_path, sweep_name, r_values, opts);
    if (verify->parsed()) return cmd_verify(scenario_path, solution_path, opts);
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
