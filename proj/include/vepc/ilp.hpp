#ifndef VEPC_ILP_HPP
#define VEPC_ILP_HPP

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "vepc/chains.hpp"
#include "vepc/scenario.hpp"

namespace vepc {

enum class VarKind { XPlace, XLoc, YRoute, NodeUsed };

struct Variable {
  int index = 0;
  VarKind kind = VarKind::XPlace;
  std::string name;  // descriptive, reversible
  // index tuple; unused slots are -1
  int chain = -1;
  int position = -1;  // 1-based
  int instance = -1;
  int node = -1;
  int arc = -1;
  VnfId function = VnfId::SRC;
};

struct LinTerm {
  double coef = 0.0;
  int var = -1;
};

struct LinearConstraint {
  std::string tag;  // eq2..eq11, colocate, nodecap
  std::vector<LinTerm> terms;
  char sense = 'L';  // 'L' <=, 'E' =, 'G' >=
  double rhs = 0.0;
  std::string provenance;  // chain/position/node/link context
};

class MilpModel {
 public:
  // All variables are binary.
  int add_variable(Variable v);
  void add_constraint(LinearConstraint c);
  void add_objective_term(double coef, int var);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<LinearConstraint>& constraints() const { return cons_; }
  const std::vector<LinTerm>& objective() const { return objective_; }

  int x_place(int chain, int position, int node) const;  // -1 if absent
  int x_loc(int node, VnfId f) const;
  int y_route(int chain, int segment, int arc) const;

  std::size_t count_constraints(const std::string& tag) const;

  // Human-readable constraint listing with tags and provenance.
  std::string dump() const;

 private:
  friend class ModelBuilder;
  std::vector<Variable> vars_;
  std::vector<LinearConstraint> cons_;
  std::vector<LinTerm> objective_;
  std::map<std::tuple<int, int, int>, int> x_place_;   // (chain, pos, node)
  std::map<std::pair<int, int>, int> x_loc_;           // (node, f)
  std::map<std::tuple<int, int, int>, int> y_route_;   // (chain, seg, arc)
};

// Assembles the full placement MILP for a scenario's composed chains:
// bandwidth objective, endpoint pinning, unique placement, flow
// conservation, stateful co-location, replica tracking, core and link
// capacities, and per-chain latency.
class ModelBuilder {
 public:
  ModelBuilder(const Scenario& scenario, std::vector<ServiceChain> chains);

  MilpModel build();  // all families
  // Individual families, exposed for targeted tests.
  void create_variables(MilpModel& m) const;
  void build_objective(MilpModel& m) const;
  void add_endpoint_constraints(MilpModel& m) const;      // eq2, eq3
  void add_unique_placement(MilpModel& m) const;          // eq4
  void add_flow_conservation(MilpModel& m) const;         // eq5, eq6
  void add_colocation_coupling(MilpModel& m) const;       // colocate
  void add_replica_tracking(MilpModel& m) const;          // eq7, eq8
  void add_core_capacity(MilpModel& m) const;             // eq9
  void add_link_capacity(MilpModel& m) const;             // eq10
  void add_latency(MilpModel& m) const;                   // eq11
  void add_node_count_cap(MilpModel& m) const;            // nodecap, optional

  void set_colocation_enabled(bool on) { colocation_enabled_ = on; }

  const std::vector<ServiceChain>& chains() const { return chains_; }

 private:
  const Scenario& scenario_;
  std::vector<ServiceChain> chains_;
  std::vector<int> nfv_nodes_;
  bool colocation_enabled_ = true;

  std::vector<int> placement_nodes(const ServiceChain& c, int position) const;
};

MilpModel build_model(const Scenario& scenario);

}  // namespace vepc

#endif  // VEPC_ILP_HPP
