#ifndef VEPC_SCENARIO_HPP
#define VEPC_SCENARIO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vepc/chains.hpp"
#include "vepc/model.hpp"

namespace vepc {

struct SolverSettings {
  std::string command;        // template with {mps} {sol} {time_limit}
  double time_limit_s = 600.0;
  std::string solution_line_regex;  // empty -> default "name value" lines
};

struct NasFlowTable {
  // flow count and control-plane latency budget per procedure
  std::map<NasProcedure, std::pair<int, double>> rows = {
      {NasProcedure::Attach, {10, 500.0}},
      {NasProcedure::DedicatedBearer, {45, 250.0}},
      {NasProcedure::X2Handover, {5, 500.0}},
      {NasProcedure::S1Handover, {10, 500.0}},
  };
  int no_nas_flows = 50;
};

struct Scenario {
  Topology topology;
  AppCatalog apps;
  ChainTemplates templates;
  VnfCatalog vnfs;
  std::map<VnfId, int> replica_limits;  // R_f per real function
  double control_fraction = 0.05;
  double total_traffic_gbps = 224.0;
  double upload_fraction = 0.2;  // upload:download = 1:4
  NasFlowTable nas_table;
  std::uint64_t seed = 1;
  SolverSettings solver;
  bool per_direction_capacity = true;
  std::optional<int> max_nfv_nodes;  // optional node-count cap, off by default
  std::vector<TrafficFlow> flows;

  int replica_limit(VnfId f) const {
    auto it = replica_limits.find(f);
    return it != replica_limits.end() ? it->second : vnfs.spec(f).max_replicas;
  }

  std::vector<ServiceChain> compose_chains() const;
};

// Scenario config file: paths to topology/applications/templates plus the
// scalar knobs; flows may be listed inline or generated later by seed.
Scenario load_scenario_file(const std::string& path);

}  // namespace vepc

#endif  // VEPC_SCENARIO_HPP
