#include "vepc/chains.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace vepc {

namespace {

std::vector<ChainStep> make_steps(
    std::initializer_list<std::pair<VnfId, int>> steps) {
  return std::vector<ChainStep>(steps);
}

}  // namespace

ChainTemplates::ChainTemplates() {
  // Default control-chain sequences; editable via template files.
  csc_[NasProcedure::Attach] =
      make_steps({{VnfId::SRC, 1}, {VnfId::MME, 1}, {VnfId::HSS, 1},
                  {VnfId::MME, 1}, {VnfId::SGW, 1}, {VnfId::PGW, 1},
                  {VnfId::PCRF, 1}, {VnfId::PGW, 1}, {VnfId::SGW, 1},
                  {VnfId::MME, 1}, {VnfId::SRC, 1}});
  csc_[NasProcedure::DedicatedBearer] =
      make_steps({{VnfId::SRC, 1}, {VnfId::PCRF, 1}, {VnfId::PGW, 1},
                  {VnfId::SGW, 1}, {VnfId::MME, 1}, {VnfId::SRC, 1}});
  csc_[NasProcedure::X2Handover] =
      make_steps({{VnfId::SRC, 1}, {VnfId::MME, 1}, {VnfId::SGW, 1},
                  {VnfId::MME, 1}, {VnfId::SRC, 1}});
  csc_[NasProcedure::S1Handover] =
      make_steps({{VnfId::SRC, 1}, {VnfId::MME, 1}, {VnfId::SGW, 1},
                  {VnfId::MME, 1}, {VnfId::HSS, 1}, {VnfId::MME, 1},
                  {VnfId::SRC, 1}});
}

const std::vector<ChainStep>& ChainTemplates::csc(NasProcedure p) const {
  auto it = csc_.find(p);
  if (it == csc_.end())
    throw ValidationError("no CSC template for procedure " + to_string(p));
  return it->second;
}

void ChainTemplates::set_csc(NasProcedure p, std::vector<ChainStep> seq) {
  if (seq.size() < 2 || seq.front().first != VnfId::SRC ||
      seq.back().first != VnfId::SRC)
    throw ValidationError("CSC template for " + to_string(p) +
                          " must begin and end at SRC");
  for (const auto& [f, inst] : seq)
    if (f == VnfId::DST)
      throw ValidationError("CSC template may not contain DST");
  csc_[p] = std::move(seq);
}

ChainTemplates load_chain_templates(const nlohmann::json& doc) {
  ChainTemplates t;
  for (const auto& jt : doc.at("templates")) {
    NasProcedure p = nas_from_string(jt.at("procedure").get<std::string>());
    std::vector<ChainStep> seq;
    for (const auto& js : jt.at("sequence"))
      seq.emplace_back(vnf_from_string(js.at("function").get<std::string>()),
                       js.value("instance", 1));
    t.set_csc(p, std::move(seq));
  }
  return t;
}

ChainTemplates load_chain_templates_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open template file: " + path);
  nlohmann::json doc;
  in >> doc;
  return load_chain_templates(doc);
}

std::vector<ChainStep> build_csc(NasProcedure procedure,
                                 const ChainTemplates& templates) {
  return templates.csc(procedure);
}

std::vector<ChainStep> build_dsc(Direction direction) {
  if (direction == Direction::Upload)
    return make_steps({{VnfId::SGW, 1}, {VnfId::PGW, 1}});
  return make_steps({{VnfId::PGW, 1}, {VnfId::SGW, 1}});
}

int select_destination(const TrafficFlow& flow, const AppCatalog& apps,
                       const Topology& topo) {
  const Application& app = apps.app(flow.application);
  const std::vector<int>& candidates =
      app.mec_nodes.empty() ? app.gateway_nodes : app.mec_nodes;
  if (candidates.empty())
    throw ValidationError("application " + app.name +
                          " has no reachable destination");
  int best = -1;
  double best_lat = std::numeric_limits<double>::infinity();
  for (int v : candidates) {
    double lat = shortest_path_latency(topo, flow.source_tap, v);
    if (lat < best_lat - 1e-12 || (std::abs(lat - best_lat) <= 1e-12 &&
                                   (best < 0 || v < best))) {
      best = v;
      best_lat = lat;
    }
  }
  return best;
}

ServiceChain compose_chain(const TrafficFlow& flow, const AppCatalog& apps,
                           const Topology& topo,
                           const ChainTemplates& templates,
                           double control_fraction, int chain_id) {
  if (flow.demand_gbps <= 0)
    throw ValidationError("flow " + std::to_string(flow.id) +
                          " has non-positive demand");
  if (topo.node(flow.source_tap).kind != NodeKind::Tap)
    throw ValidationError("flow " + std::to_string(flow.id) +
                          " source node is not a TAP");
  const Application& app = apps.app(flow.application);
  int app_node = select_destination(flow, apps, topo);

  ServiceChain chain;
  chain.id = chain_id;
  chain.demand_gbps = flow.demand_gbps;
  // Positions run in traffic direction; SRC is pinned at the traffic
  // origin, DST at the far end.
  if (flow.direction == Direction::Upload) {
    chain.src_node = flow.source_tap;
    chain.dst_node = app_node;
  } else {
    chain.src_node = app_node;
    chain.dst_node = flow.source_tap;
  }

  std::vector<ChainStep> steps;
  std::size_t csc_len = 0;
  if (flow.nas_procedure) {
    steps = build_csc(*flow.nas_procedure, templates);
    csc_len = steps.size();
  } else {
    steps.emplace_back(VnfId::SRC, 1);
    csc_len = 1;  // lone SRC, no control segments
  }
  for (const ChainStep& s : build_dsc(flow.direction)) steps.push_back(s);
  steps.emplace_back(VnfId::DST, 1);

  chain.positions.reserve(steps.size());
  for (std::size_t k = 0; k < steps.size(); ++k)
    chain.positions.push_back(
        {static_cast<int>(k + 1), steps[k].first, steps[k].second});

  // Segments inside the CSC span carry the control fraction, the rest
  // carry the full demand. betas[0] mirrors betas[1].
  const int n = chain.size();
  chain.betas.assign(static_cast<std::size_t>(n), 1.0);
  for (int i = 1; i < static_cast<int>(csc_len); ++i)
    chain.betas[static_cast<std::size_t>(i)] = control_fraction;
  if (n >= 2) chain.betas[0] = chain.betas[1];

  chain.latency_budget_ms =
      flow.control_latency_budget_ms + app.latency_budget_ms;
  return chain;
}

}  // namespace vepc
