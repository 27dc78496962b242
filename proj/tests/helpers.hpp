#ifndef VEPC_TESTS_HELPERS_HPP
#define VEPC_TESTS_HELPERS_HPP

#include <string>

#include "vepc/scenario.hpp"

namespace vepc::testing {

// Two NFV-capable nodes joined by one 50 km / 60 Gbps link:
// 1 = TAP, 2 = app gateway.
inline Topology two_node_topology(double capacity_gbps = 60.0) {
  nlohmann::json doc = {
      {"nodes",
       {{{"id", 1}, {"kind", "tap"}, {"nfv_capable", true}, {"cores", 2400}},
        {{"id", 2},
         {"kind", "app_gateway"},
         {"nfv_capable", true},
         {"cores", 2400}}}},
      {"links",
       {{{"id", 1},
         {"a", 1},
         {"b", 2},
         {"capacity_gbps", capacity_gbps},
         {"length_km", 50.0}}}}};
  return load_topology(doc);
}

// TAP 1 - switch-like NFV node 2 - gateway 3, plus a direct long 1-3 link.
inline Topology line3_topology(double capacity_gbps = 60.0) {
  nlohmann::json doc = {
      {"nodes",
       {{{"id", 1}, {"kind", "tap"}, {"nfv_capable", true}, {"cores", 2400}},
        {{"id", 2},
         {"kind", "mec_host"},
         {"nfv_capable", true},
         {"cores", 2400}},
        {{"id", 3},
         {"kind", "app_gateway"},
         {"nfv_capable", true},
         {"cores", 2400}}}},
      {"links",
       {{{"id", 1},
         {"a", 1},
         {"b", 2},
         {"capacity_gbps", capacity_gbps},
         {"length_km", 50.0}},
        {{"id", 2},
         {"a", 2},
         {"b", 3},
         {"capacity_gbps", capacity_gbps},
         {"length_km", 50.0}},
        {{"id", 3},
         {"a", 1},
         {"b", 3},
         {"capacity_gbps", capacity_gbps},
         {"length_km", 150.0}}}}};
  return load_topology(doc);
}

inline AppCatalog one_app_catalog(double budget_ms = 1000.0,
                                  std::vector<int> gateways = {2},
                                  std::vector<int> mec = {}) {
  Application app;
  app.name = "bulk";
  app.traffic_share = 1.0;
  app.latency_budget_ms = budget_ms;
  app.gateway_nodes = std::move(gateways);
  app.mec_nodes = std::move(mec);
  return AppCatalog({app});
}

inline TrafficFlow make_flow(int id, int tap, const std::string& app,
                             Direction dir, std::optional<NasProcedure> proc,
                             double demand, double control_ms) {
  TrafficFlow f;
  f.id = id;
  f.source_tap = tap;
  f.application = app;
  f.direction = dir;
  f.nas_procedure = proc;
  f.demand_gbps = demand;
  f.control_latency_budget_ms = control_ms;
  return f;
}

// Single no-NAS upload flow on the two-node topology.
inline Scenario tiny_scenario(double demand = 1.0,
                              double capacity_gbps = 60.0) {
  Scenario s;
  s.topology = two_node_topology(capacity_gbps);
  s.apps = one_app_catalog();
  s.total_traffic_gbps = demand;
  for (VnfId f : real_vnfs()) s.replica_limits[f] = 2;
  s.flows = {make_flow(0, 1, "bulk", Direction::Upload, std::nullopt, demand,
                       0.0)};
  return s;
}

inline std::string data_path(const std::string& name) {
  return std::string(VEPC_DATA_DIR) + "/" + name;
}

}  // namespace vepc::testing

#endif  // VEPC_TESTS_HELPERS_HPP
