#include "vepc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace vepc {

namespace {

std::string chain_pos(int c, int i) {
  return "chain " + std::to_string(c) + " pos " + std::to_string(i);
}

std::string chain_seg(int c, int i) {
  return "chain " + std::to_string(c) + " seg " + std::to_string(i);
}

}  // namespace

VerificationReport check_solution(const Scenario& scenario,
                                  const std::vector<ServiceChain>& chains,
                                  const PlacementSolution& solution) {
  VerificationReport rep;
  const Topology& topo = scenario.topology;
  auto violate = [&rep](const std::string& family, const std::string& prov,
                        double magnitude) {
    rep.violations.push_back({family, prov, magnitude});
  };

  std::set<int> nfv;
  for (int v : topo.nfv_nodes()) nfv.insert(v);

  // resolved node per (chain, position); pseudo positions default to home
  std::map<std::pair<int, int>, int> where;
  bool structurally_ok = true;
  for (const ServiceChain& c : chains) {
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      auto it = solution.assignment.find({c.id, i});
      if (it != solution.assignment.end()) {
        where[{c.id, i}] = it->second;
      } else if (is_pseudo(p.function)) {
        where[{c.id, i}] =
            p.function == VnfId::SRC ? c.src_node : c.dst_node;
      } else {
        violate("structure", chain_pos(c.id, i) + " has no assignment", 1.0);
        structurally_ok = false;
      }
    }
  }

  for (const ServiceChain& c : chains) {
    for (int i = 1; i <= c.size(); ++i) {
      auto it = where.find({c.id, i});
      if (it == where.end()) continue;
      int v = it->second;
      const ChainPosition& p = c.position(i);
      if (!topo.has_node(v)) {
        violate("structure", chain_pos(c.id, i) + " at unknown node " +
                                 std::to_string(v), 1.0);
        continue;
      }
      if (is_pseudo(p.function)) {
        int home = p.function == VnfId::SRC ? c.src_node : c.dst_node;
        if (v != home)
          violate("eq2", chain_pos(c.id, i) + " not at home node " +
                             std::to_string(home), 1.0);
      } else if (!nfv.count(v)) {
        violate(v == c.src_node || v == c.dst_node ? "eq3" : "eq4",
                chain_pos(c.id, i) + " placed at non-NFV node " +
                    std::to_string(v), 1.0);
      }
    }
    // stateful co-location
    std::map<std::pair<int, int>, int> group_node;
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) continue;
      auto it = where.find({c.id, i});
      if (it == where.end()) continue;
      auto key = std::make_pair(static_cast<int>(p.function), p.instance);
      auto [g, inserted] = group_node.emplace(key, it->second);
      if (!inserted && g->second != it->second)
        violate("colocate",
                chain_pos(c.id, i) + " " + to_string(p.function) + "(" +
                    std::to_string(p.instance) + ") split across nodes " +
                    std::to_string(g->second) + "," +
                    std::to_string(it->second), 1.0);
    }
  }

  // replicas per function across all chains
  std::map<int, std::set<int>> nodes_of_fn;
  for (const ServiceChain& c : chains) {
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) continue;
      auto it = where.find({c.id, i});
      if (it != where.end())
        nodes_of_fn[static_cast<int>(p.function)].insert(it->second);
    }
  }
  for (const auto& [f, nodes] : nodes_of_fn) {
    int limit = scenario.replica_limit(static_cast<VnfId>(f));
    if (static_cast<int>(nodes.size()) > limit)
      violate("eq8",
              "fn " + to_string(static_cast<VnfId>(f)) + " uses " +
                  std::to_string(nodes.size()) + " nodes, limit " +
                  std::to_string(limit),
              static_cast<double>(nodes.size()) - limit);
  }

  // routes: flow conservation per segment, then capacity/latency/objective
  std::map<int, double> arc_load;
  double objective = 0.0;
  for (const ServiceChain& c : chains) {
    std::set<int> special = nfv;
    special.insert(c.src_node);
    special.insert(c.dst_node);
    double prop_ms = 0.0;
    for (int i = 1; i < c.size(); ++i) {
      std::vector<int> arcs;
      if (auto it = solution.routes.find({c.id, i});
          it != solution.routes.end())
        arcs = it->second;
      std::map<int, int> net;  // node -> out - in
      std::set<int> used;
      bool arcs_ok = true;
      for (int aid : arcs) {
        if (!used.insert(aid).second) {
          violate("eq5", chain_seg(c.id, i) + " reuses arc " +
                             std::to_string(aid), 1.0);
          arcs_ok = false;
          continue;
        }
        try {
          const Arc& a = topo.arc(aid);
          net[a.from] += 1;
          net[a.to] -= 1;
          arc_load[aid] += c.demand_gbps * c.beta(i);
          prop_ms += a.prop_latency_ms;
          objective += c.demand_gbps * c.beta(i);
        } catch (const ValidationError&) {
          violate("structure", chain_seg(c.id, i) + " uses unknown arc " +
                                   std::to_string(aid), 1.0);
          arcs_ok = false;
        }
      }
      if (!arcs_ok) continue;
      auto ai = where.find({c.id, i});
      auto bi = where.find({c.id, i + 1});
      if (ai == where.end() || bi == where.end()) continue;
      for (const Node& n : topo.nodes()) {
        int flow = net.count(n.id) ? net.at(n.id) : 0;
        int expected = 0;
        if (special.count(n.id))
          expected = (ai->second == n.id ? 1 : 0) -
                     (bi->second == n.id ? 1 : 0);
        if (flow != expected)
          violate(special.count(n.id) ? "eq5" : "eq6",
                  chain_seg(c.id, i) + " node " + std::to_string(n.id),
                  std::abs(flow - expected));
      }
    }
    double processing = 0.0;
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) continue;
      processing += c.beta(i - 1) * c.demand_gbps *
                    scenario.vnfs.spec(p.function).proc_latency_ms_per_gbps;
    }
    double slack = c.latency_budget_ms - prop_ms - processing;
    rep.latency_slack_ms[c.id] = slack;
    if (slack < -1e-9)
      violate("eq11", "chain " + std::to_string(c.id), -slack);
  }

  // link capacity
  if (scenario.per_direction_capacity) {
    for (const Arc& a : topo.arcs()) {
      double load = arc_load.count(a.id) ? arc_load.at(a.id) : 0.0;
      rep.link_utilization[a.id] = load / a.capacity_gbps;
      if (load > a.capacity_gbps + 1e-9)
        violate("eq10", "arc " + std::to_string(a.id), load - a.capacity_gbps);
    }
  } else {
    std::map<int, double> edge_load;
    std::map<int, double> edge_cap;
    for (const Arc& a : topo.arcs()) {
      edge_load[a.edge_id] += arc_load.count(a.id) ? arc_load.at(a.id) : 0.0;
      edge_cap[a.edge_id] = a.capacity_gbps;
      rep.link_utilization[a.id] =
          (arc_load.count(a.id) ? arc_load.at(a.id) : 0.0) / a.capacity_gbps;
    }
    for (const auto& [eid, load] : edge_load)
      if (load > edge_cap.at(eid) + 1e-9)
        violate("eq10", "edge " + std::to_string(eid), load - edge_cap.at(eid));
  }

  // core capacity
  std::map<int, double> core_load;
  for (const ServiceChain& c : chains) {
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) continue;
      auto it = where.find({c.id, i});
      if (it == where.end()) continue;
      core_load[it->second] += c.beta(i - 1) * c.demand_gbps *
                               scenario.vnfs.spec(p.function).cores_per_gbps;
    }
  }
  for (int v : topo.nfv_nodes()) {
    double load = core_load.count(v) ? core_load.at(v) : 0.0;
    double cap = topo.node(v).cores;
    rep.core_utilization[v] = cap > 0 ? load / cap : (load > 0 ? 1e9 : 0.0);
    if (load > cap + 1e-9)
      violate("eq9", "node " + std::to_string(v), load - cap);
  }

  rep.recomputed_objective = objective;
  if (structurally_ok) {
    double scale = std::max(1.0, std::abs(objective));
    if (std::abs(objective - solution.objective) > 1e-6 * scale)
      violate("objective",
              "reported " + std::to_string(solution.objective) +
                  " recomputed " + std::to_string(objective),
              std::abs(objective - solution.objective));
  }
  return rep;
}

VerificationReport check_solution(const Scenario& scenario,
                                  const PlacementSolution& solution) {
  return check_solution(scenario, scenario.compose_chains(), solution);
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["passed"] = passed();
  j["recomputed_objective"] = recomputed_objective;
  j["violations"] = nlohmann::json::array();
  for (const Violation& v : violations)
    j["violations"].push_back({{"family", v.family},
                               {"provenance", v.provenance},
                               {"magnitude", v.magnitude}});
  auto as_object = [](const std::map<int, double>& m) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [k, v] : m) o[std::to_string(k)] = v;
    return o;
  };
  j["link_utilization"] = as_object(link_utilization);
  j["core_utilization"] = as_object(core_utilization);
  j["latency_slack_ms"] = as_object(latency_slack_ms);
  return j;
}

std::string VerificationReport::to_table() const {
  std::ostringstream out;
  out << (passed() ? "PASS" : "FAIL") << "  objective "
      << recomputed_objective << "\n";
  for (const Violation& v : violations)
    out << "  [" << v.family << "] " << v.provenance << " (magnitude "
        << v.magnitude << ")\n";
  double max_link = 0, max_core = 0;
  for (const auto& [k, u] : link_utilization) max_link = std::max(max_link, u);
  for (const auto& [k, u] : core_utilization) max_core = std::max(max_core, u);
  out << "  max link utilization " << max_link << ", max core utilization "
      << max_core << "\n";
  return out.str();
}

}  // namespace vepc
