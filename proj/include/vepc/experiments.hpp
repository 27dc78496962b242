#ifndef VEPC_EXPERIMENTS_HPP
#define VEPC_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vepc/scenario.hpp"
#include "vepc/solution.hpp"

namespace vepc {

enum class Engine { External, Exhaustive, Greedy };

Engine engine_from_string(const std::string& s);
std::string to_string(Engine e);

// Builds the flow population: the NAS-table flow counts plus the no-NAS
// flows, each with a seeded random source TAP, an application drawn by
// traffic share, an upload/download split close to the configured upload
// fraction, and per-flow demand = app share of total split equally over
// the app's flows.
std::vector<TrafficFlow> generate_flows(const Topology& topology,
                                        const AppCatalog& apps,
                                        const NasFlowTable& nas_table,
                                        double total_traffic_gbps,
                                        double upload_fraction,
                                        std::uint64_t seed);
std::vector<TrafficFlow> generate_flows(const Scenario& scenario);

struct SweepRow {
  std::string config;
  int iteration = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  SolveStatus status = SolveStatus::NotFound;
  double wall_time_s = 0.0;
  bool verified = false;
};

struct SweepSummary {
  std::string config;
  int solved = 0;
  int failed = 0;
  double mean_objective = 0.0;
  double stddev_objective = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<SweepSummary> summaries;  // in config order
};

// Replica sweep machinery shared by the vEPC and per-VNF sweeps: each
// config is a full per-function replica-limit map evaluated over n seeded
// iterations (flows re-sampled per iteration). Solutions are verified
// before aggregation; a failed verification drops the config's summary.
SweepResult sweep_replica_configs(
    const Scenario& base,
    const std::vector<std::pair<std::string, std::map<VnfId, int>>>& configs,
    int iterations, Engine engine, int jobs = 1);

// Uniform R_f = r for every real VNF, r over r_values.
SweepResult sweep_vepc_replicas(const Scenario& base,
                                const std::vector<int>& r_values,
                                int iterations, Engine engine, int jobs = 1);

// Named per-function limit maps (missing functions default to the base
// scenario's limits).
SweepResult sweep_vnf_replicas(
    const Scenario& base,
    const std::vector<std::pair<std::string, std::map<VnfId, int>>>& configs,
    int iterations, Engine engine, int jobs = 1);

// Writes sweep.csv, summary.csv and plotdata.json under out_dir.
// include_timing=false drops the wall_time column for byte-stable replays.
void emit_results(const SweepResult& sweep, const std::string& out_dir,
                  bool include_timing = true);

}  // namespace vepc

#endif  // VEPC_EXPERIMENTS_HPP
