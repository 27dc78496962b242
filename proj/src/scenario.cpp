#include "vepc/scenario.hpp"

#include <filesystem>
#include <fstream>

namespace vepc {

std::vector<ServiceChain> Scenario::compose_chains() const {
  std::vector<ServiceChain> chains;
  chains.reserve(flows.size());
  for (const TrafficFlow& flow : flows)
    chains.push_back(compose_chain(flow, apps, topology, templates,
                                   control_fraction, flow.id));
  return chains;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file: " + path);
  nlohmann::json doc;
  in >> doc;

  std::filesystem::path base = std::filesystem::path(path).parent_path();
  auto resolve = [&base](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base / fp).string();
  };

  Scenario s;
  s.topology = load_topology_file(resolve(doc.at("topology").get<std::string>()));
  s.apps = load_app_catalog_file(
      resolve(doc.at("applications").get<std::string>()));
  s.apps.validate(s.topology);
  if (doc.contains("templates"))
    s.templates =
        load_chain_templates_file(resolve(doc.at("templates").get<std::string>()));

  if (doc.contains("vnfs")) {
    for (const auto& jv : doc.at("vnfs")) {
      VnfSpec spec;
      spec.id = vnf_from_string(jv.at("id").get<std::string>());
      spec.cores_per_gbps = jv.value("cores_per_gbps", 2.0);
      spec.proc_latency_ms_per_gbps = jv.value("proc_latency_ms_per_gbps", 0.132);
      spec.max_replicas = jv.value("max_replicas", 2);
      s.vnfs.set(spec);
    }
  }
  if (doc.contains("replica_limits"))
    for (const auto& [fn, r] : doc.at("replica_limits").items())
      s.replica_limits[vnf_from_string(fn)] = r.get<int>();

  s.control_fraction = doc.value("control_fraction", 0.05);
  s.total_traffic_gbps = doc.value("total_traffic_gbps", 224.0);
  s.upload_fraction = doc.value("upload_fraction", 0.2);
  s.seed = doc.value("seed", std::uint64_t{1});
  s.per_direction_capacity = doc.value("per_direction_capacity", true);
  if (doc.contains("max_nfv_nodes"))
    s.max_nfv_nodes = doc.at("max_nfv_nodes").get<int>();

  if (doc.contains("nas_table")) {
    const auto& jt = doc.at("nas_table");
    for (auto& [proc, row] : s.nas_table.rows) {
      std::string key = to_string(proc);
      if (jt.contains(key)) {
        row.first = jt.at(key).at("flows").get<int>();
        row.second = jt.at(key).at("control_latency_ms").get<double>();
      }
    }
    s.nas_table.no_nas_flows =
        jt.value("no_nas_flows", s.nas_table.no_nas_flows);
  }

  if (doc.contains("solver")) {
    const auto& js = doc.at("solver");
    s.solver.command = js.value("command", std::string{});
    s.solver.time_limit_s = js.value("time_limit_s", 600.0);
    s.solver.solution_line_regex =
        js.value("solution_line_regex", std::string{});
  }

  if (doc.contains("flows"))
    for (const auto& jf : doc.at("flows"))
      s.flows.push_back(flow_from_json(jf));
  return s;
}

}  // namespace vepc
