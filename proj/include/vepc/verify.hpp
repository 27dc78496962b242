#ifndef VEPC_VERIFY_HPP
#define VEPC_VERIFY_HPP

#include <map>
#include <string>
#include <vector>

#include "vepc/chains.hpp"
#include "vepc/scenario.hpp"
#include "vepc/solution.hpp"

namespace vepc {

struct Violation {
  std::string family;  // structure, eq2..eq11, colocate, objective
  std::string provenance;
  double magnitude = 0.0;
};

struct VerificationReport {
  std::vector<Violation> violations;
  double recomputed_objective = 0.0;
  // diagnostics, emitted even when the solution passes
  std::map<int, double> link_utilization;    // arc id -> load / capacity
  std::map<int, double> core_utilization;    // node id -> used / available
  std::map<int, double> latency_slack_ms;    // chain id -> budget - incurred

  bool passed() const { return violations.empty(); }
  nlohmann::json to_json() const;
  std::string to_table() const;
};

// Re-evaluates every constraint family and the objective from raw scenario
// data; shares no term generation with the model builder.
VerificationReport check_solution(const Scenario& scenario,
                                  const std::vector<ServiceChain>& chains,
                                  const PlacementSolution& solution);
VerificationReport check_solution(const Scenario& scenario,
                                  const PlacementSolution& solution);

}  // namespace vepc

#endif  // VEPC_VERIFY_HPP
