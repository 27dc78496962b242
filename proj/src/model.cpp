#include "vepc/model.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>

namespace vepc {

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Switch: return "switch";
    case NodeKind::Tap: return "tap";
    case NodeKind::AppGateway: return "app_gateway";
    case NodeKind::MecHost: return "mec_host";
  }
  return "switch";
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "switch") return NodeKind::Switch;
  if (s == "tap") return NodeKind::Tap;
  if (s == "app_gateway") return NodeKind::AppGateway;
  if (s == "mec_host") return NodeKind::MecHost;
  throw ValidationError("unknown node kind: " + s);
}

Topology::Topology(std::vector<Node> nodes, std::vector<Arc> arcs)
    : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (node_index_.count(n.id))
      throw ValidationError("duplicate node id " + std::to_string(n.id));
    if (n.cores > 0 && !n.nfv_capable)
      throw ValidationError("node " + std::to_string(n.id) +
                            " has cores but is not nfv_capable");
    if (n.cores < 0)
      throw ValidationError("node " + std::to_string(n.id) +
                            " has negative cores");
    node_index_[n.id] = i;
    out_arcs_[n.id];
    in_arcs_[n.id];
  }
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (arc_index_.count(a.id))
      throw ValidationError("duplicate arc id " + std::to_string(a.id));
    if (!node_index_.count(a.from) || !node_index_.count(a.to))
      throw ValidationError("link " + std::to_string(a.edge_id) +
                            " references nonexistent node " +
                            std::to_string(node_index_.count(a.from) ? a.to
                                                                     : a.from));
    if (a.from == a.to)
      throw ValidationError("link " + std::to_string(a.edge_id) +
                            " is a self-loop at node " +
                            std::to_string(a.from));
    if (a.capacity_gbps <= 0)
      throw ValidationError("link " + std::to_string(a.edge_id) +
                            " has non-positive capacity");
    if (a.length_km < 0 || a.prop_latency_ms < 0)
      throw ValidationError("link " + std::to_string(a.edge_id) +
                            " has negative length or latency");
    arc_index_[a.id] = i;
    out_arcs_[a.from].push_back(a.id);
    in_arcs_[a.to].push_back(a.id);
  }
  // connectivity of the underlying undirected graph
  if (!nodes_.empty()) {
    std::set<int> seen;
    std::queue<int> q;
    q.push(nodes_.front().id);
    seen.insert(nodes_.front().id);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int aid : out_arcs_.at(v)) {
        int w = arc(aid).to;
        if (seen.insert(w).second) q.push(w);
      }
      for (int aid : in_arcs_.at(v)) {
        int w = arc(aid).from;
        if (seen.insert(w).second) q.push(w);
      }
    }
    if (seen.size() != nodes_.size()) {
      for (const Node& n : nodes_)
        if (!seen.count(n.id))
          throw ValidationError("topology is disconnected: node " +
                                std::to_string(n.id) + " unreachable");
    }
  }
}

const Node& Topology::node(int id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end())
    throw ValidationError("unknown node id " + std::to_string(id));
  return nodes_[it->second];
}

const Arc& Topology::arc(int id) const {
  auto it = arc_index_.find(id);
  if (it == arc_index_.end())
    throw ValidationError("unknown arc id " + std::to_string(id));
  return arcs_[it->second];
}

const std::vector<int>& Topology::out_arcs(int node_id) const {
  auto it = out_arcs_.find(node_id);
  if (it == out_arcs_.end())
    throw ValidationError("unknown node id " + std::to_string(node_id));
  return it->second;
}

const std::vector<int>& Topology::in_arcs(int node_id) const {
  auto it = in_arcs_.find(node_id);
  if (it == in_arcs_.end())
    throw ValidationError("unknown node id " + std::to_string(node_id));
  return it->second;
}

std::vector<int> Topology::nfv_nodes() const {
  std::vector<int> out;
  for (const Node& n : nodes_)
    if (n.nfv_capable) out.push_back(n.id);
  return out;
}

std::vector<int> Topology::nodes_of_kind(NodeKind kind) const {
  std::vector<int> out;
  for (const Node& n : nodes_)
    if (n.kind == kind) out.push_back(n.id);
  return out;
}

Topology load_topology(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("links"))
    throw ValidationError("topology document must have nodes and links");
  std::vector<Node> nodes;
  for (const auto& jn : doc.at("nodes")) {
    Node n;
    n.id = jn.at("id").get<int>();
    n.kind = node_kind_from_string(jn.at("kind").get<std::string>());
    n.nfv_capable = jn.at("nfv_capable").get<bool>();
    n.cores = jn.value("cores", 0);
    nodes.push_back(n);
  }
  std::vector<Arc> arcs;
  int next_arc_id = 0;
  for (const auto& jl : doc.at("links")) {
    Arc fwd;
    fwd.edge_id = jl.at("id").get<int>();
    fwd.from = jl.at("a").get<int>();
    fwd.to = jl.at("b").get<int>();
    fwd.capacity_gbps = jl.at("capacity_gbps").get<double>();
    fwd.length_km = jl.at("length_km").get<double>();
    fwd.prop_latency_ms = jl.contains("prop_latency_ms")
                              ? jl.at("prop_latency_ms").get<double>()
                              : fwd.length_km * kFiberLatencyMsPerKm;
    fwd.id = next_arc_id++;
    Arc rev = fwd;
    rev.id = next_arc_id++;
    std::swap(rev.from, rev.to);
    arcs.push_back(fwd);
    arcs.push_back(rev);
  }
  return Topology(std::move(nodes), std::move(arcs));
}

Topology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open topology file: " + path);
  nlohmann::json doc;
  in >> doc;
  return load_topology(doc);
}

nlohmann::json serialize(const Topology& topo) {
  nlohmann::json doc;
  doc["nodes"] = nlohmann::json::array();
  for (const Node& n : topo.nodes()) {
    doc["nodes"].push_back({{"id", n.id},
                            {"kind", to_string(n.kind)},
                            {"nfv_capable", n.nfv_capable},
                            {"cores", n.cores}});
  }
  doc["links"] = nlohmann::json::array();
  for (const Arc& a : topo.arcs()) {
    if (a.id % 2 != 0) continue;  // forward arc of each pair
    doc["links"].push_back({{"id", a.edge_id},
                            {"a", a.from},
                            {"b", a.to},
                            {"capacity_gbps", a.capacity_gbps},
                            {"length_km", a.length_km},
                            {"prop_latency_ms", a.prop_latency_ms}});
  }
  return doc;
}

double shortest_path_latency(const Topology& topo, int a, int b) {
  topo.node(a);
  topo.node(b);
  if (a == b) return 0.0;
  std::map<int, double> dist;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[a] = 0.0;
  pq.emplace(0.0, a);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v] + 1e-15) continue;
    if (v == b) return d;
    for (int aid : topo.out_arcs(v)) {
      const Arc& arc = topo.arc(aid);
      double nd = d + arc.prop_latency_ms;
      auto it = dist.find(arc.to);
      if (it == dist.end() || nd < it->second - 1e-15) {
        dist[arc.to] = nd;
        pq.emplace(nd, arc.to);
      }
    }
  }
  throw ValidationError("node " + std::to_string(b) + " unreachable from " +
                        std::to_string(a));
}

std::string to_string(VnfId f) {
  switch (f) {
    case VnfId::SRC: return "SRC";
    case VnfId::DST: return "DST";
    case VnfId::MME: return "MME";
    case VnfId::HSS: return "HSS";
    case VnfId::PCRF: return "PCRF";
    case VnfId::SGW: return "SGW";
    case VnfId::PGW: return "PGW";
  }
  return "SRC";
}

VnfId vnf_from_string(const std::string& s) {
  if (s == "SRC") return VnfId::SRC;
  if (s == "DST") return VnfId::DST;
  if (s == "MME") return VnfId::MME;
  if (s == "HSS") return VnfId::HSS;
  if (s == "PCRF") return VnfId::PCRF;
  if (s == "SGW") return VnfId::SGW;
  if (s == "PGW") return VnfId::PGW;
  throw ValidationError("unknown VNF id: " + s);
}

bool is_pseudo(VnfId f) { return f == VnfId::SRC || f == VnfId::DST; }

const std::vector<VnfId>& real_vnfs() {
  static const std::vector<VnfId> fs = {VnfId::MME, VnfId::HSS, VnfId::PCRF,
                                        VnfId::SGW, VnfId::PGW};
  return fs;
}

VnfCatalog::VnfCatalog() {
  for (VnfId f : real_vnfs())
    specs_[f] = VnfSpec{f, 2.0, 0.132, 2};
  specs_[VnfId::SRC] = VnfSpec{VnfId::SRC, 0.0, 0.0, 1};
  specs_[VnfId::DST] = VnfSpec{VnfId::DST, 0.0, 0.0, 1};
}

const VnfSpec& VnfCatalog::spec(VnfId f) const { return specs_.at(f); }

void VnfCatalog::set(const VnfSpec& s) {
  if (is_pseudo(s.id) &&
      (s.cores_per_gbps != 0.0 || s.proc_latency_ms_per_gbps != 0.0))
    throw ValidationError("SRC/DST must have zero compute cost");
  if (s.max_replicas < 1)
    throw ValidationError("max_replicas must be positive for " +
                          to_string(s.id));
  specs_[s.id] = s;
}

AppCatalog::AppCatalog(std::vector<Application> apps)
    : apps_(std::move(apps)) {
  double sum = 0.0;
  for (const Application& a : apps_) sum += a.traffic_share;
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("application traffic shares sum to " +
                          std::to_string(sum) + ", expected 1");
}

const Application& AppCatalog::app(const std::string& name) const {
  for (const Application& a : apps_)
    if (a.name == name) return a;
  throw ValidationError("unknown application: " + name);
}

void AppCatalog::validate(const Topology& topo) const {
  for (const Application& a : apps_) {
    for (int v : a.gateway_nodes)
      if (topo.node(v).kind != NodeKind::AppGateway)
        throw ValidationError("application " + a.name + " gateway node " +
                              std::to_string(v) + " is not an app_gateway");
    for (int v : a.mec_nodes)
      if (topo.node(v).kind != NodeKind::MecHost)
        throw ValidationError("application " + a.name + " MEC node " +
                              std::to_string(v) + " is not a mec_host");
    if (a.gateway_nodes.empty() && a.mec_nodes.empty())
      throw ValidationError("application " + a.name +
                            " has no destination nodes");
  }
}

AppCatalog load_app_catalog(const nlohmann::json& doc) {
  std::vector<Application> apps;
  for (const auto& ja : doc.at("applications")) {
    Application a;
    a.name = ja.at("name").get<std::string>();
    a.traffic_share = ja.at("traffic_share").get<double>();
    a.latency_budget_ms = ja.at("latency_budget_ms").get<double>();
    a.gateway_nodes = ja.value("gateway_nodes", std::vector<int>{});
    a.mec_nodes = ja.value("mec_nodes", std::vector<int>{});
    apps.push_back(a);
  }
  return AppCatalog(std::move(apps));
}

AppCatalog load_app_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open application catalog: " + path);
  nlohmann::json doc;
  in >> doc;
  return load_app_catalog(doc);
}

std::string to_string(Direction d) {
  return d == Direction::Upload ? "upload" : "download";
}

std::string to_string(NasProcedure p) {
  switch (p) {
    case NasProcedure::Attach: return "attach";
    case NasProcedure::DedicatedBearer: return "dedicated_bearer";
    case NasProcedure::X2Handover: return "x2_handover";
    case NasProcedure::S1Handover: return "s1_handover";
  }
  return "attach";
}

NasProcedure nas_from_string(const std::string& s) {
  if (s == "attach") return NasProcedure::Attach;
  if (s == "dedicated_bearer") return NasProcedure::DedicatedBearer;
  if (s == "x2_handover") return NasProcedure::X2Handover;
  if (s == "s1_handover") return NasProcedure::S1Handover;
  throw ValidationError("unknown NAS procedure: " + s);
}

nlohmann::json to_json(const TrafficFlow& flow) {
  nlohmann::json j{{"id", flow.id},
                   {"source_tap", flow.source_tap},
                   {"application", flow.application},
                   {"direction", to_string(flow.direction)},
                   {"demand_gbps", flow.demand_gbps},
                   {"control_latency_budget_ms", flow.control_latency_budget_ms}};
  if (flow.nas_procedure)
    j["nas_procedure"] = to_string(*flow.nas_procedure);
  return j;
}

TrafficFlow flow_from_json(const nlohmann::json& j) {
  TrafficFlow f;
  f.id = j.at("id").get<int>();
  f.source_tap = j.at("source_tap").get<int>();
  f.application = j.at("application").get<std::string>();
  f.direction = j.at("direction").get<std::string>() == "upload"
                    ? Direction::Upload
                    : Direction::Download;
  if (j.contains("nas_procedure"))
    f.nas_procedure = nas_from_string(j.at("nas_procedure").get<std::string>());
  f.demand_gbps = j.at("demand_gbps").get<double>();
  f.control_latency_budget_ms = j.value("control_latency_budget_ms", 0.0);
  return f;
}

}  // namespace vepc
