#include "vepc/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace vepc {

int MilpModel::add_variable(Variable v) {
  v.index = static_cast<int>(vars_.size());
  switch (v.kind) {
    case VarKind::XPlace:
      x_place_[{v.chain, v.position, v.node}] = v.index;
      break;
    case VarKind::XLoc:
      x_loc_[{v.node, static_cast<int>(v.function)}] = v.index;
      break;
    case VarKind::YRoute:
      y_route_[{v.chain, v.position, v.arc}] = v.index;
      break;
    case VarKind::NodeUsed:
      break;
  }
  vars_.push_back(std::move(v));
  return vars_.back().index;
}

void MilpModel::add_constraint(LinearConstraint c) {
  std::set<int> seen;
  for (const LinTerm& t : c.terms) {
    if (!std::isfinite(t.coef))
      throw ValidationError("non-finite coefficient in constraint " + c.tag);
    if (!seen.insert(t.var).second)
      throw ValidationError("duplicate variable in constraint " + c.tag);
  }
  cons_.push_back(std::move(c));
}

void MilpModel::add_objective_term(double coef, int var) {
  objective_.push_back({coef, var});
}

int MilpModel::x_place(int chain, int position, int node) const {
  auto it = x_place_.find({chain, position, node});
  return it == x_place_.end() ? -1 : it->second;
}

int MilpModel::x_loc(int node, VnfId f) const {
  auto it = x_loc_.find({node, static_cast<int>(f)});
  return it == x_loc_.end() ? -1 : it->second;
}

int MilpModel::y_route(int chain, int segment, int arc) const {
  auto it = y_route_.find({chain, segment, arc});
  return it == y_route_.end() ? -1 : it->second;
}

std::size_t MilpModel::count_constraints(const std::string& tag) const {
  std::size_t n = 0;
  for (const auto& c : cons_)
    if (c.tag == tag) ++n;
  return n;
}

std::string MilpModel::dump() const {
  std::ostringstream out;
  out << "variables: " << vars_.size() << "  constraints: " << cons_.size()
      << "\nminimize:";
  for (const LinTerm& t : objective_)
    out << " + " << t.coef << " " << vars_[static_cast<std::size_t>(t.var)].name;
  out << "\n";
  for (const LinearConstraint& c : cons_) {
    out << "[" << c.tag << "] ";
    bool first = true;
    for (const LinTerm& t : c.terms) {
      if (!first || t.coef < 0) out << (t.coef < 0 ? " - " : " + ");
      double a = std::abs(t.coef);
      if (a != 1.0) out << a << " ";
      out << vars_[static_cast<std::size_t>(t.var)].name;
      first = false;
    }
    out << (c.sense == 'L' ? " <= " : c.sense == 'G' ? " >= " : " = ")
        << c.rhs;
    if (!c.provenance.empty()) out << "   ; " << c.provenance;
    out << "\n";
  }
  return out.str();
}

ModelBuilder::ModelBuilder(const Scenario& scenario,
                           std::vector<ServiceChain> chains)
    : scenario_(scenario), chains_(std::move(chains)) {
  nfv_nodes_ = scenario_.topology.nfv_nodes();
}

std::vector<int> ModelBuilder::placement_nodes(const ServiceChain& c,
                                               int position) const {
  // Real VNFs may sit at any NFV node plus the chain endpoints (pinned to
  // zero there when not NFV-capable); pseudo functions only at endpoints.
  std::set<int> nodes;
  if (is_pseudo(c.position(position).function)) {
    nodes.insert(c.src_node);
    nodes.insert(c.dst_node);
  } else {
    nodes.insert(nfv_nodes_.begin(), nfv_nodes_.end());
    nodes.insert(c.src_node);
    nodes.insert(c.dst_node);
  }
  return {nodes.begin(), nodes.end()};
}

void ModelBuilder::create_variables(MilpModel& m) const {
  for (const ServiceChain& c : chains_) {
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      for (int v : placement_nodes(c, i)) {
        Variable var;
        var.kind = VarKind::XPlace;
        var.chain = c.id;
        var.position = i;
        var.instance = p.instance;
        var.node = v;
        var.function = p.function;
        var.name = "xp_c" + std::to_string(c.id) + "_i" + std::to_string(i) +
                   "_j" + std::to_string(p.instance) + "_v" +
                   std::to_string(v);
        m.add_variable(var);
      }
    }
  }
  if (chains_.empty()) return;
  for (int v : nfv_nodes_) {
    for (VnfId f : real_vnfs()) {
      Variable var;
      var.kind = VarKind::XLoc;
      var.node = v;
      var.function = f;
      var.name = "xl_v" + std::to_string(v) + "_" + to_string(f);
      m.add_variable(var);
    }
  }
  for (const ServiceChain& c : chains_) {
    for (int i = 1; i < c.size(); ++i) {
      for (const Arc& a : scenario_.topology.arcs()) {
        Variable var;
        var.kind = VarKind::YRoute;
        var.chain = c.id;
        var.position = i;
        var.arc = a.id;
        var.name = "yr_c" + std::to_string(c.id) + "_i" + std::to_string(i) +
                   "_l" + std::to_string(a.id);
        m.add_variable(var);
      }
    }
  }
}

void ModelBuilder::build_objective(MilpModel& m) const {
  for (const ServiceChain& c : chains_)
    for (int i = 1; i < c.size(); ++i)
      for (const Arc& a : scenario_.topology.arcs())
        m.add_objective_term(c.demand_gbps * c.beta(i),
                             m.y_route(c.id, i, a.id));
}

void ModelBuilder::add_endpoint_constraints(MilpModel& m) const {
  for (const ServiceChain& c : chains_) {
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) {
        int home = p.function == VnfId::SRC ? c.src_node : c.dst_node;
        for (int v : placement_nodes(c, i)) {
          LinearConstraint con;
          con.tag = "eq2";
          con.terms = {{1.0, m.x_place(c.id, i, v)}};
          con.sense = 'E';
          con.rhs = v == home ? 1.0 : 0.0;
          con.provenance = "chain " + std::to_string(c.id) + " pos " +
                           std::to_string(i) + " node " + std::to_string(v);
          m.add_constraint(std::move(con));
        }
      } else {
        for (int v : {c.src_node, c.dst_node}) {
          if (scenario_.topology.node(v).nfv_capable) continue;
          LinearConstraint con;
          con.tag = "eq3";
          con.terms = {{1.0, m.x_place(c.id, i, v)}};
          con.sense = 'E';
          con.rhs = 0.0;
          con.provenance = "chain " + std::to_string(c.id) + " pos " +
                           std::to_string(i) + " node " + std::to_string(v);
          m.add_constraint(std::move(con));
          if (c.src_node == c.dst_node) break;
        }
      }
    }
  }
}

void ModelBuilder::add_unique_placement(MilpModel& m) const {
  for (const ServiceChain& c : chains_) {
    for (int i = 1; i <= c.size(); ++i) {
      if (is_pseudo(c.position(i).function)) continue;
      LinearConstraint con;
      con.tag = "eq4";
      for (int v : nfv_nodes_) con.terms.push_back({1.0, m.x_place(c.id, i, v)});
      con.sense = 'E';
      con.rhs = 1.0;
      con.provenance =
          "chain " + std::to_string(c.id) + " pos " + std::to_string(i);
      m.add_constraint(std::move(con));
    }
  }
}

void ModelBuilder::add_flow_conservation(MilpModel& m) const {
  for (const ServiceChain& c : chains_) {
    std::set<int> special(nfv_nodes_.begin(), nfv_nodes_.end());
    special.insert(c.src_node);
    special.insert(c.dst_node);
    for (int i = 1; i < c.size(); ++i) {
      for (const Node& n : scenario_.topology.nodes()) {
        LinearConstraint con;
        bool at_special = special.count(n.id) > 0;
        con.tag = at_special ? "eq5" : "eq6";
        for (int aid : scenario_.topology.out_arcs(n.id))
          con.terms.push_back({1.0, m.y_route(c.id, i, aid)});
        for (int aid : scenario_.topology.in_arcs(n.id))
          con.terms.push_back({-1.0, m.y_route(c.id, i, aid)});
        if (at_special) {
          if (int x = m.x_place(c.id, i, n.id); x >= 0)
            con.terms.push_back({-1.0, x});
          if (int x = m.x_place(c.id, i + 1, n.id); x >= 0)
            con.terms.push_back({1.0, x});
        }
        con.sense = 'E';
        con.rhs = 0.0;
        con.provenance = "chain " + std::to_string(c.id) + " seg " +
                         std::to_string(i) + " node " + std::to_string(n.id);
        m.add_constraint(std::move(con));
      }
    }
  }
}

void ModelBuilder::add_colocation_coupling(MilpModel& m) const {
  if (!colocation_enabled_) return;
  for (const ServiceChain& c : chains_) {
    std::map<std::pair<int, int>, std::vector<int>> groups;  // (f, j) -> pos
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) continue;
      groups[{static_cast<int>(p.function), p.instance}].push_back(i);
    }
    for (const auto& [key, positions] : groups) {
      for (std::size_t k = 1; k < positions.size(); ++k) {
        for (int v : placement_nodes(c, positions[0])) {
          int x1 = m.x_place(c.id, positions[0], v);
          int x2 = m.x_place(c.id, positions[k], v);
          LinearConstraint con;
          con.tag = "colocate";
          con.terms = {{1.0, x1}, {-1.0, x2}};
          con.sense = 'E';
          con.rhs = 0.0;
          con.provenance = "chain " + std::to_string(c.id) + " pos " +
                           std::to_string(positions[0]) + "=" +
                           std::to_string(positions[k]) + " node " +
                           std::to_string(v);
          m.add_constraint(std::move(con));
        }
      }
    }
  }
}

void ModelBuilder::add_replica_tracking(MilpModel& m) const {
  if (chains_.empty()) return;
  std::set<VnfId> used;
  double big_m = 0;
  for (const ServiceChain& c : chains_) {
    big_m += c.size();
    for (const ChainPosition& p : c.positions)
      if (!is_pseudo(p.function)) used.insert(p.function);
  }
  for (VnfId f : used)
    if (scenario_.replica_limit(f) < 1)
      throw ValidationError("replica limit for " + to_string(f) +
                            " must be >= 1 (function is used by a chain)");
  for (int v : nfv_nodes_) {
    for (VnfId f : real_vnfs()) {
      int xl = m.x_loc(v, f);
      LinearConstraint upper;  // M * x_loc >= sum x_place
      upper.tag = "eq7";
      upper.terms.push_back({big_m, xl});
      LinearConstraint lower;  // sum x_place >= x_loc
      lower.tag = "eq7";
      lower.terms.push_back({-1.0, xl});
      for (const ServiceChain& c : chains_) {
        for (int i = 1; i <= c.size(); ++i) {
          if (c.position(i).function != f) continue;
          int x = m.x_place(c.id, i, v);
          upper.terms.push_back({-1.0, x});
          lower.terms.push_back({1.0, x});
        }
      }
      upper.sense = 'G';
      upper.rhs = 0.0;
      lower.sense = 'G';
      lower.rhs = 0.0;
      std::string prov = "node " + std::to_string(v) + " fn " + to_string(f);
      upper.provenance = prov;
      lower.provenance = prov;
      m.add_constraint(std::move(upper));
      m.add_constraint(std::move(lower));
    }
  }
  for (VnfId f : real_vnfs()) {
    LinearConstraint con;
    con.tag = "eq8";
    for (int v : nfv_nodes_) con.terms.push_back({1.0, m.x_loc(v, f)});
    con.sense = 'L';
    con.rhs = scenario_.replica_limit(f);
    con.provenance = "fn " + to_string(f);
    m.add_constraint(std::move(con));
  }
}

void ModelBuilder::add_core_capacity(MilpModel& m) const {
  for (int v : nfv_nodes_) {
    LinearConstraint con;
    con.tag = "eq9";
    for (const ServiceChain& c : chains_) {
      for (int i = 1; i <= c.size(); ++i) {
        const ChainPosition& p = c.position(i);
        if (is_pseudo(p.function)) continue;
        double coef = c.demand_gbps * c.beta(i - 1) *
                      scenario_.vnfs.spec(p.function).cores_per_gbps;
        if (coef == 0.0) continue;
        con.terms.push_back({coef, m.x_place(c.id, i, v)});
      }
    }
    con.sense = 'L';
    con.rhs = scenario_.topology.node(v).cores;
    con.provenance = "node " + std::to_string(v);
    if (!con.terms.empty()) m.add_constraint(std::move(con));
  }
}

void ModelBuilder::add_link_capacity(MilpModel& m) const {
  if (scenario_.per_direction_capacity) {
    for (const Arc& a : scenario_.topology.arcs()) {
      LinearConstraint con;
      con.tag = "eq10";
      for (const ServiceChain& c : chains_)
        for (int i = 1; i < c.size(); ++i)
          con.terms.push_back(
              {c.demand_gbps * c.beta(i), m.y_route(c.id, i, a.id)});
      con.sense = 'L';
      con.rhs = a.capacity_gbps;
      con.provenance = "arc " + std::to_string(a.id) + " (" +
                       std::to_string(a.from) + "->" + std::to_string(a.to) +
                       ")";
      if (!con.terms.empty()) m.add_constraint(std::move(con));
    }
  } else {
    // shared-fiber reading: both directions of an edge share the capacity
    std::map<int, std::vector<int>> edges;
    for (const Arc& a : scenario_.topology.arcs())
      edges[a.edge_id].push_back(a.id);
    for (const auto& [edge_id, arc_ids] : edges) {
      LinearConstraint con;
      con.tag = "eq10";
      for (const ServiceChain& c : chains_)
        for (int i = 1; i < c.size(); ++i)
          for (int aid : arc_ids)
            con.terms.push_back(
                {c.demand_gbps * c.beta(i), m.y_route(c.id, i, aid)});
      con.sense = 'L';
      con.rhs = scenario_.topology.arc(arc_ids.front()).capacity_gbps;
      con.provenance = "edge " + std::to_string(edge_id);
      if (!con.terms.empty()) m.add_constraint(std::move(con));
    }
  }
}

void ModelBuilder::add_latency(MilpModel& m) const {
  for (const ServiceChain& c : chains_) {
    double processing = 0.0;
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) continue;
      processing += c.beta(i - 1) * c.demand_gbps *
                    scenario_.vnfs.spec(p.function).proc_latency_ms_per_gbps;
    }
    LinearConstraint con;
    con.tag = "eq11";
    for (const Arc& a : scenario_.topology.arcs())
      for (int i = 1; i < c.size(); ++i)
        con.terms.push_back({a.prop_latency_ms, m.y_route(c.id, i, a.id)});
    con.sense = 'L';
    con.rhs = c.latency_budget_ms - processing;
    con.provenance = "chain " + std::to_string(c.id) + " (processing " +
                     std::to_string(processing) + " ms)";
    m.add_constraint(std::move(con));
  }
}

void ModelBuilder::add_node_count_cap(MilpModel& m) const {
  if (!scenario_.max_nfv_nodes || chains_.empty()) return;
  LinearConstraint total;
  total.tag = "nodecap";
  for (int v : nfv_nodes_) {
    Variable z;
    z.kind = VarKind::NodeUsed;
    z.node = v;
    z.name = "zn_v" + std::to_string(v);
    int zi = m.add_variable(z);
    for (VnfId f : real_vnfs()) {
      LinearConstraint con;
      con.tag = "nodecap";
      con.terms = {{1.0, zi}, {-1.0, m.x_loc(v, f)}};
      con.sense = 'G';
      con.rhs = 0.0;
      con.provenance = "node " + std::to_string(v) + " fn " + to_string(f);
      m.add_constraint(std::move(con));
    }
    total.terms.push_back({1.0, zi});
  }
  total.sense = 'L';
  total.rhs = *scenario_.max_nfv_nodes;
  total.provenance = "NFV node count cap";
  m.add_constraint(std::move(total));
}

MilpModel ModelBuilder::build() {
  MilpModel m;
  create_variables(m);
  build_objective(m);
  add_endpoint_constraints(m);
  add_unique_placement(m);
  add_flow_conservation(m);
  add_colocation_coupling(m);
  add_replica_tracking(m);
  add_core_capacity(m);
  add_link_capacity(m);
  add_latency(m);
  add_node_count_cap(m);
  return m;
}

MilpModel build_model(const Scenario& scenario) {
  ModelBuilder builder(scenario, scenario.compose_chains());
  return builder.build();
}

}  // namespace vepc
