#include "vepc/solution.hpp"

namespace vepc {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::NotFound: return "not_found";
  }
  return "not_found";
}

SolveStatus solve_status_from_string(const std::string& s) {
  if (s == "optimal") return SolveStatus::Optimal;
  if (s == "feasible") return SolveStatus::Feasible;
  if (s == "infeasible") return SolveStatus::Infeasible;
  if (s == "timeout") return SolveStatus::Timeout;
  if (s == "not_found") return SolveStatus::NotFound;
  throw ValidationError("unknown solve status: " + s);
}

nlohmann::json to_json(const PlacementSolution& sol) {
  nlohmann::json j;
  j["objective"] = sol.objective;
  j["status"] = to_string(sol.meta.status);
  j["wall_time_s"] = sol.meta.wall_time_s;
  j["gap"] = sol.meta.gap;
  j["assignment"] = nlohmann::json::array();
  for (const auto& [key, node] : sol.assignment)
    j["assignment"].push_back(
        {{"chain", key.first}, {"position", key.second}, {"node", node}});
  j["locations"] = nlohmann::json::array();
  for (const auto& [node, f] : sol.locations)
    j["locations"].push_back(
        {{"node", node}, {"function", to_string(static_cast<VnfId>(f))}});
  j["routes"] = nlohmann::json::array();
  for (const auto& [key, arcs] : sol.routes)
    j["routes"].push_back(
        {{"chain", key.first}, {"segment", key.second}, {"arcs", arcs}});
  return j;
}

PlacementSolution solution_from_json(const nlohmann::json& j) {
  PlacementSolution sol;
  sol.objective = j.at("objective").get<double>();
  sol.meta.status = solve_status_from_string(j.at("status").get<std::string>());
  sol.meta.wall_time_s = j.value("wall_time_s", 0.0);
  sol.meta.gap = j.value("gap", 0.0);
  for (const auto& ja : j.at("assignment"))
    sol.assignment[{ja.at("chain").get<int>(), ja.at("position").get<int>()}] =
        ja.at("node").get<int>();
  for (const auto& jl : j.at("locations"))
    sol.locations.insert(
        {jl.at("node").get<int>(),
         static_cast<int>(vnf_from_string(jl.at("function").get<std::string>()))});
  for (const auto& jr : j.at("routes"))
    sol.routes[{jr.at("chain").get<int>(), jr.at("segment").get<int>()}] =
        jr.at("arcs").get<std::vector<int>>();
  return sol;
}

}  // namespace vepc
