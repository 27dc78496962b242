#ifndef VEPC_MODEL_HPP
#define VEPC_MODEL_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace vepc {

// Fiber propagation: 5 us/km (2e8 m/s), i.e. 0.25 ms per 50 km link.
inline constexpr double kFiberLatencyMsPerKm = 0.005;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { Switch, Tap, AppGateway, MecHost };

std::string to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::Switch;
  bool nfv_capable = false;
  int cores = 0;

  bool operator==(const Node&) const = default;
};

// Directed arc. Undirected fibers in the input become two arcs with
// identical capacity/length/latency.
struct Arc {
  int id = 0;       // arc id, unique per direction
  int edge_id = 0;  // undirected edge id from the input document
  int from = 0;
  int to = 0;
  double capacity_gbps = 0.0;
  double length_km = 0.0;
  double prop_latency_ms = 0.0;

  bool operator==(const Arc&) const = default;
};

class Topology {
 public:
  Topology() = default;
  Topology(std::vector<Node> nodes, std::vector<Arc> arcs);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  bool has_node(int id) const { return node_index_.count(id) > 0; }
  const Node& node(int id) const;
  const Arc& arc(int id) const;

  const std::vector<int>& out_arcs(int node_id) const;  // omega+
  const std::vector<int>& in_arcs(int node_id) const;   // omega-

  std::vector<int> nfv_nodes() const;
  std::vector<int> nodes_of_kind(NodeKind kind) const;

  bool operator==(const Topology& other) const {
    return nodes_ == other.nodes_ && arcs_ == other.arcs_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::map<int, std::size_t> node_index_;
  std::map<int, std::size_t> arc_index_;
  std::map<int, std::vector<int>> out_arcs_;
  std::map<int, std::vector<int>> in_arcs_;
};

// Parses and validates a topology document:
//   {nodes: [{id, kind, nfv_capable, cores}],
//    links: [{id, a, b, capacity_gbps, length_km, prop_latency_ms?}]}
// Each link yields two directed arcs. prop_latency_ms defaults to
// length_km * 0.005.
Topology load_topology(const nlohmann::json& doc);
Topology load_topology_file(const std::string& path);

// Inverse of load_topology: emits the undirected-link document form.
nlohmann::json serialize(const Topology& topo);

// Minimal propagation latency over any directed path a->b, in ms.
// 0 when a == b. Throws ValidationError when b is unreachable.
double shortest_path_latency(const Topology& topo, int a, int b);

enum class VnfId { SRC, DST, MME, HSS, PCRF, SGW, PGW };

std::string to_string(VnfId f);
VnfId vnf_from_string(const std::string& s);
bool is_pseudo(VnfId f);  // SRC/DST carry no compute and no replicas
const std::vector<VnfId>& real_vnfs();

struct VnfSpec {
  VnfId id = VnfId::MME;
  double cores_per_gbps = 0.0;
  double proc_latency_ms_per_gbps = 0.0;
  int max_replicas = 1;
};

class VnfCatalog {
 public:
  VnfCatalog();  // defaults: 2 cores/Gbps, 0.132 ms/Gbps for all real VNFs
  const VnfSpec& spec(VnfId f) const;
  void set(const VnfSpec& s);

 private:
  std::map<VnfId, VnfSpec> specs_;
};

struct Application {
  std::string name;
  double traffic_share = 0.0;
  double latency_budget_ms = 0.0;
  std::vector<int> gateway_nodes;
  std::vector<int> mec_nodes;  // empty unless MEC-eligible
};

class AppCatalog {
 public:
  AppCatalog() = default;
  explicit AppCatalog(std::vector<Application> apps);

  const std::vector<Application>& apps() const { return apps_; }
  const Application& app(const std::string& name) const;

  // Checks share sum == 1 and node kinds against the topology.
  void validate(const Topology& topo) const;

 private:
  std::vector<Application> apps_;
};

AppCatalog load_app_catalog(const nlohmann::json& doc);
AppCatalog load_app_catalog_file(const std::string& path);

enum class Direction { Upload, Download };
enum class NasProcedure { Attach, DedicatedBearer, X2Handover, S1Handover };

std::string to_string(Direction d);
std::string to_string(NasProcedure p);
NasProcedure nas_from_string(const std::string& s);

struct TrafficFlow {
  int id = 0;
  int source_tap = 0;
  std::string application;
  Direction direction = Direction::Upload;
  std::optional<NasProcedure> nas_procedure;
  double demand_gbps = 0.0;
  double control_latency_budget_ms = 0.0;  // 0 when no NAS procedure
};

nlohmann::json to_json(const TrafficFlow& flow);
TrafficFlow flow_from_json(const nlohmann::json& j);

}  // namespace vepc

#endif  // VEPC_MODEL_HPP
