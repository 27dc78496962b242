#ifndef VEPC_SOLVE_HPP
#define VEPC_SOLVE_HPP

#include <string>
#include <vector>

#include "vepc/chains.hpp"
#include "vepc/ilp.hpp"
#include "vepc/mps.hpp"
#include "vepc/scenario.hpp"
#include "vepc/solution.hpp"

namespace vepc {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes the model as MPS, runs the configured solver command and parses
// its solution file back into a placement. The objective is recomputed
// from the reconstructed routes and must agree with the solver's value to
// 1e-6 relative. The command template may use {mps}, {sol} and
// {time_limit} placeholders.
PlacementSolution run_external(const MilpModel& model,
                               const std::vector<ServiceChain>& chains,
                               const Scenario& scenario,
                               const SolverSettings& settings);
PlacementSolution solve_external(const Scenario& scenario);

// Enumeration oracle for tiny instances (<= 6 nodes, <= 3 chains); checks
// every constraint family per candidate and returns the global optimum.
// Ties break lexicographically for reproducibility. colocation=false
// drops the stateful coupling (used by the coupling guard test).
PlacementSolution solve_exhaustive(const Scenario& scenario);
PlacementSolution solve_exhaustive(const Scenario& scenario,
                                   const std::vector<ServiceChain>& chains,
                                   bool colocation = true);

// Demand-driven placement heuristic with shortest-path routing; an upper
// bound and no-external-solver fallback. The result always passes the
// verifier, otherwise status is not_found.
PlacementSolution solve_greedy(const Scenario& scenario);
PlacementSolution solve_greedy(const Scenario& scenario,
                               const std::vector<ServiceChain>& chains);

// Default external-solver command (the bundled MPS driver script).
std::string default_solver_command();

}  // namespace vepc

#endif  // VEPC_SOLVE_HPP
