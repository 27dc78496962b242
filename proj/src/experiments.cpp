#include "vepc/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <thread>

#include "vepc/solve.hpp"
#include "vepc/verify.hpp"

namespace vepc {

namespace fs = std::filesystem;

Engine engine_from_string(const std::string& s) {
  if (s == "external") return Engine::External;
  if (s == "exhaustive") return Engine::Exhaustive;
  if (s == "greedy") return Engine::Greedy;
  throw ValidationError("unknown engine: " + s);
}

std::string to_string(Engine e) {
  switch (e) {
    case Engine::External: return "external";
    case Engine::Exhaustive: return "exhaustive";
    case Engine::Greedy: return "greedy";
  }
  return "external";
}

std::vector<TrafficFlow> generate_flows(const Topology& topology,
                                        const AppCatalog& apps,
                                        const NasFlowTable& nas_table,
                                        double total_traffic_gbps,
                                        double upload_fraction,
                                        std::uint64_t seed) {
  if (total_traffic_gbps <= 0)
    throw ValidationError("total traffic must be positive");
  std::vector<int> taps = topology.nodes_of_kind(NodeKind::Tap);
  if (taps.empty()) throw ValidationError("topology has no TAP nodes");

  int n_flows = nas_table.no_nas_flows;
  for (const auto& [proc, row] : nas_table.rows) n_flows += row.first;
  if (n_flows <= 0) throw ValidationError("flow counts sum to zero");
  const auto& catalog = apps.apps();
  if (static_cast<int>(catalog.size()) > n_flows)
    throw ValidationError("fewer flows than applications; share split "
                          "infeasible");

  // application slots by largest remainder, at least one per app
  std::vector<int> slots(catalog.size(), 0);
  {
    std::vector<std::pair<double, std::size_t>> remainder;
    int assigned = 0;
    for (std::size_t a = 0; a < catalog.size(); ++a) {
      double exact = catalog[a].traffic_share * n_flows;
      slots[a] = static_cast<int>(exact);
      assigned += slots[a];
      remainder.emplace_back(exact - slots[a], a);
    }
    std::stable_sort(remainder.begin(), remainder.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t k = 0; assigned < n_flows; ++k, ++assigned)
      slots[remainder[k % remainder.size()].second] += 1;
    for (std::size_t a = 0; a < catalog.size(); ++a) {
      while (slots[a] == 0) {
        auto big = std::max_element(slots.begin(), slots.end());
        if (*big <= 1)
          throw ValidationError("cannot give every application a flow");
        --*big;
        ++slots[a];
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> app_of_flow;
  for (std::size_t a = 0; a < catalog.size(); ++a)
    for (int k = 0; k < slots[a]; ++k) app_of_flow.push_back(a);
  std::shuffle(app_of_flow.begin(), app_of_flow.end(), rng);

  std::vector<TrafficFlow> flows;
  flows.reserve(static_cast<std::size_t>(n_flows));
  int id = 0;
  auto add_flow = [&](std::optional<NasProcedure> proc, double control_ms) {
    TrafficFlow f;
    f.id = id;
    std::uniform_int_distribution<std::size_t> pick_tap(0, taps.size() - 1);
    f.source_tap = taps[pick_tap(rng)];
    std::size_t a = app_of_flow[static_cast<std::size_t>(id)];
    f.application = catalog[a].name;
    f.demand_gbps = catalog[a].traffic_share * total_traffic_gbps / slots[a];
    f.nas_procedure = proc;
    f.control_latency_budget_ms = control_ms;
    flows.push_back(f);
    ++id;
  };
  static const NasProcedure order[] = {
      NasProcedure::Attach, NasProcedure::DedicatedBearer,
      NasProcedure::X2Handover, NasProcedure::S1Handover};
  for (NasProcedure proc : order) {
    const auto& row = nas_table.rows.at(proc);
    for (int k = 0; k < row.first; ++k) add_flow(proc, row.second);
  }
  for (int k = 0; k < nas_table.no_nas_flows; ++k) add_flow(std::nullopt, 0.0);

  // upload/download split per application, close to upload_fraction
  for (std::size_t a = 0; a < catalog.size(); ++a) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < flows.size(); ++k)
      if (app_of_flow[k] == a) members.push_back(k);
    std::shuffle(members.begin(), members.end(), rng);
    auto n_up = static_cast<std::size_t>(
        std::lround(upload_fraction * static_cast<double>(members.size())));
    for (std::size_t k = 0; k < members.size(); ++k)
      flows[members[k]].direction =
          k < n_up ? Direction::Upload : Direction::Download;
  }
  return flows;
}

std::vector<TrafficFlow> generate_flows(const Scenario& scenario) {
  return generate_flows(scenario.topology, scenario.apps, scenario.nas_table,
                        scenario.total_traffic_gbps, scenario.upload_fraction,
                        scenario.seed);
}

namespace {

PlacementSolution dispatch_solve(const Scenario& s, Engine engine) {
  switch (engine) {
    case Engine::External: return solve_external(s);
    case Engine::Exhaustive: return solve_exhaustive(s);
    case Engine::Greedy: return solve_greedy(s);
  }
  return {};
}

}  // namespace

SweepResult sweep_replica_configs(
    const Scenario& base,
    const std::vector<std::pair<std::string, std::map<VnfId, int>>>& configs,
    int iterations, Engine engine, int jobs) {
  struct Task {
    std::size_t config_idx;
    int iteration;
  };
  std::vector<Task> tasks;
  for (std::size_t ci = 0; ci < configs.size(); ++ci)
    for (int t = 0; t < iterations; ++t) tasks.push_back({ci, t});
  std::vector<SweepRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error;
  std::mutex error_mu;

  auto worker = [&]() {
    for (;;) {
      std::size_t k = next.fetch_add(1);
      if (k >= tasks.size() || failed.load()) return;
      const Task& task = tasks[k];
      Scenario s = base;
      for (const auto& [f, r] : configs[task.config_idx].second)
        s.replica_limits[f] = r;
      s.seed = base.seed + static_cast<std::uint64_t>(task.iteration);
      SweepRow row;
      row.config = configs[task.config_idx].first;
      row.iteration = task.iteration;
      row.seed = s.seed;
      try {
        s.flows = generate_flows(s);
        PlacementSolution sol = dispatch_solve(s, engine);
        row.status = sol.meta.status;
        row.wall_time_s = sol.meta.wall_time_s;
        if (sol.meta.status == SolveStatus::Optimal ||
            sol.meta.status == SolveStatus::Feasible) {
          row.objective = sol.objective;
          row.verified = check_solution(s, sol).passed();
        }
      } catch (const std::exception& e) {
        std::scoped_lock lk(error_mu);
        error = e.what();
        failed.store(true);
        return;
      }
      rows[k] = std::move(row);
    }
  };

  int n_threads = std::max(1, jobs);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failed.load()) throw SolverError("sweep failed: " + error);

  SweepResult result;
  result.rows = std::move(rows);
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    SweepSummary sum;
    sum.config = configs[ci].first;
    std::vector<double> objectives;
    bool verification_failed = false;
    for (const SweepRow& row : result.rows) {
      if (row.config != sum.config) continue;
      bool solved = row.status == SolveStatus::Optimal ||
                    row.status == SolveStatus::Feasible;
      if (solved && !row.verified) verification_failed = true;
      if (solved)
        objectives.push_back(row.objective);
      else
        ++sum.failed;
    }
    if (verification_failed) continue;  // aborts aggregation for this config
    sum.solved = static_cast<int>(objectives.size());
    if (!objectives.empty()) {
      double mean = 0;
      for (double o : objectives) mean += o;
      mean /= static_cast<double>(objectives.size());
      double var = 0;
      for (double o : objectives) var += (o - mean) * (o - mean);
      var /= static_cast<double>(objectives.size());
      sum.mean_objective = mean;
      sum.stddev_objective = std::sqrt(var);
    }
    result.summaries.push_back(sum);
  }
  return result;
}

SweepResult sweep_vepc_replicas(const Scenario& base,
                                const std::vector<int>& r_values,
                                int iterations, Engine engine, int jobs) {
  std::vector<std::pair<std::string, std::map<VnfId, int>>> configs;
  for (int r : r_values) {
    std::map<VnfId, int> limits;
    for (VnfId f : real_vnfs()) limits[f] = r;
    configs.emplace_back("r=" + std::to_string(r), std::move(limits));
  }
  return sweep_replica_configs(base, configs, iterations, engine, jobs);
}

SweepResult sweep_vnf_replicas(
    const Scenario& base,
    const std::vector<std::pair<std::string, std::map<VnfId, int>>>& configs,
    int iterations, Engine engine, int jobs) {
  return sweep_replica_configs(base, configs, iterations, engine, jobs);
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void emit_results(const SweepResult& sweep, const std::string& out_dir,
                  bool include_timing) {
  fs::create_directories(out_dir);
  fs::path dir(out_dir);
  {
    std::ofstream out(dir / "sweep.csv");
    if (!out) throw ValidationError("cannot write to " + out_dir);
    out << "config,iteration,seed,objective,status";
    if (include_timing) out << ",wall_time_s";
    out << "\n";
    for (const SweepRow& r : sweep.rows) {
      out << r.config << "," << r.iteration << "," << r.seed << ","
          << num(r.objective) << "," << to_string(r.status);
      if (include_timing) out << "," << num(r.wall_time_s);
      out << "\n";
    }
  }
  {
    std::ofstream out(dir / "summary.csv");
    out << "config,solved,failed,mean_objective,stddev_objective\n";
    for (const SweepSummary& s : sweep.summaries)
      out << s.config << "," << s.solved << "," << s.failed << ","
          << num(s.mean_objective) << "," << num(s.stddev_objective) << "\n";
  }
  {
    nlohmann::json j;
    j["x"] = nlohmann::json::array();
    j["mean_bandwidth_gbps_link"] = nlohmann::json::array();
    j["stddev"] = nlohmann::json::array();
    for (const SweepSummary& s : sweep.summaries) {
      j["x"].push_back(s.config);
      j["mean_bandwidth_gbps_link"].push_back(s.mean_objective);
      j["stddev"].push_back(s.stddev_objective);
    }
    std::ofstream out(dir / "plotdata.json");
    out << j.dump(2) << "\n";
  }
}

}  // namespace vepc
