#ifndef VEPC_SOLUTION_HPP
#define VEPC_SOLUTION_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vepc/model.hpp"

namespace vepc {

enum class SolveStatus { Optimal, Feasible, Infeasible, Timeout, NotFound };

std::string to_string(SolveStatus s);
SolveStatus solve_status_from_string(const std::string& s);

struct SolverMeta {
  SolveStatus status = SolveStatus::NotFound;
  double wall_time_s = 0.0;
  double gap = 0.0;
};

struct PlacementSolution {
  // (chain id, position index) -> node; instance labels live in the chain
  std::map<std::pair<int, int>, int> assignment;
  std::set<std::pair<int, int>> locations;  // (node, function as int)
  // (chain id, segment index) -> ordered arc ids; empty when co-located
  std::map<std::pair<int, int>, std::vector<int>> routes;
  double objective = 0.0;
  SolverMeta meta;

  bool has_location(int node, VnfId f) const {
    return locations.count({node, static_cast<int>(f)}) > 0;
  }
};

nlohmann::json to_json(const PlacementSolution& sol);
PlacementSolution solution_from_json(const nlohmann::json& j);

}  // namespace vepc

#endif  // VEPC_SOLUTION_HPP
