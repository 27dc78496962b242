#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "vepc/solve.hpp"
#include "vepc/verify.hpp"

using namespace vepc;
using namespace vepc::testing;

TEST_CASE("external solver finds the single-crossing optimum") {
  // one no-NAS upload chain on two nodes: the data path must cross the
  // single link exactly once, so the optimum equals the demand
  Scenario s = tiny_scenario(3.0);
  PlacementSolution sol = solve_external(s);
  CHECK(sol.meta.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(3.0));
  CHECK(check_solution(s, sol).passed());
}

TEST_CASE("external solver reports infeasible models") {
  // demand exceeds the only link's capacity
  Scenario s = tiny_scenario(/*demand=*/5.0, /*capacity=*/1.0);
  PlacementSolution sol = solve_external(s);
  CHECK(sol.meta.status == SolveStatus::Infeasible);
}

TEST_CASE("broken solver command raises SolverError") {
  Scenario s = tiny_scenario();
  s.solver.command = "false {mps} {sol}";
  CHECK_THROWS_AS(solve_external(s), SolverError);
}

TEST_CASE("exhaustive oracle agrees with the external solver") {
  std::vector<Scenario> cases;
  {
    Scenario s = tiny_scenario(2.0);
    cases.push_back(s);
  }
  {
    Scenario s = tiny_scenario(1.0);
    s.flows[0].nas_procedure = NasProcedure::X2Handover;
    s.flows[0].control_latency_budget_ms = 500.0;
    cases.push_back(s);
  }
  {
    Scenario s;
    s.topology = line3_topology();
    s.apps = one_app_catalog(1000.0, {3});
    for (VnfId f : real_vnfs()) s.replica_limits[f] = 2;
    s.flows = {make_flow(0, 1, "bulk", Direction::Upload,
                         NasProcedure::DedicatedBearer, 2.0, 250.0),
               make_flow(1, 1, "bulk", Direction::Download, std::nullopt, 4.0,
                         0.0)};
    s.total_traffic_gbps = 6.0;
    cases.push_back(s);
  }
  for (Scenario& s : cases) {
    PlacementSolution oracle = solve_exhaustive(s);
    PlacementSolution milp = solve_external(s);
    REQUIRE(oracle.meta.status == SolveStatus::Optimal);
    REQUIRE(milp.meta.status == SolveStatus::Optimal);
    CHECK(milp.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
    CHECK(check_solution(s, oracle).passed());
    CHECK(check_solution(s, milp).passed());
  }
}

TEST_CASE("exhaustive oracle detects infeasibility") {
  Scenario s = tiny_scenario(5.0, /*capacity=*/1.0);
  PlacementSolution sol = solve_exhaustive(s);
  CHECK(sol.meta.status == SolveStatus::Infeasible);
}

TEST_CASE("dropping the colocation coupling can only improve the optimum") {
  Scenario s;
  s.topology = line3_topology();
  s.apps = one_app_catalog(1000.0, {3});
  for (VnfId f : real_vnfs()) s.replica_limits[f] = 2;
  s.flows = {make_flow(0, 1, "bulk", Direction::Upload, NasProcedure::Attach,
                       2.0, 500.0)};
  s.total_traffic_gbps = 2.0;
  std::vector<ServiceChain> chains = s.compose_chains();
  PlacementSolution with = solve_exhaustive(s, chains, /*colocation=*/true);
  PlacementSolution without = solve_exhaustive(s, chains, false);
  REQUIRE(with.meta.status == SolveStatus::Optimal);
  REQUIRE(without.meta.status == SolveStatus::Optimal);
  CHECK(without.objective <= with.objective + 1e-9);
}

TEST_CASE("greedy is a verified upper bound") {
  Scenario s;
  s.topology = line3_topology();
  s.apps = one_app_catalog(1000.0, {3});
  for (VnfId f : real_vnfs()) s.replica_limits[f] = 2;
  s.flows = {make_flow(0, 1, "bulk", Direction::Upload, NasProcedure::Attach,
                       1.0, 500.0),
             make_flow(1, 1, "bulk", Direction::Download,
                       NasProcedure::DedicatedBearer, 3.0, 250.0)};
  s.total_traffic_gbps = 4.0;
  PlacementSolution greedy = solve_greedy(s);
  REQUIRE(greedy.meta.status == SolveStatus::Feasible);
  CHECK(check_solution(s, greedy).passed());
  PlacementSolution oracle = solve_exhaustive(s);
  REQUIRE(oracle.meta.status == SolveStatus::Optimal);
  CHECK(greedy.objective >= oracle.objective - 1e-9);
}

TEST_CASE("greedy is deterministic") {
  Scenario s = tiny_scenario(2.0);
  s.flows.push_back(make_flow(1, 1, "bulk", Direction::Download,
                              NasProcedure::S1Handover, 1.0, 500.0));
  PlacementSolution a = solve_greedy(s);
  PlacementSolution b = solve_greedy(s);
  CHECK(a.assignment == b.assignment);
  CHECK(a.routes == b.routes);
  CHECK(a.objective == b.objective);
}

TEST_CASE("solver metadata is populated") {
  Scenario s = tiny_scenario(1.0);
  PlacementSolution sol = solve_external(s);
  CHECK(sol.meta.wall_time_s >= 0.0);
  CHECK(sol.meta.gap >= 0.0);
  CHECK(sol.meta.gap <= 1e-6);
}

TEST_CASE("solution json round-trip") {
  Scenario s = tiny_scenario(2.0);
  PlacementSolution sol = solve_external(s);
  PlacementSolution back = solution_from_json(to_json(sol));
  CHECK(back.assignment == sol.assignment);
  CHECK(back.locations == sol.locations);
  CHECK(back.routes == sol.routes);
  CHECK(back.objective == doctest::Approx(sol.objective));
  CHECK(back.meta.status == sol.meta.status);
  CHECK(check_solution(s, back).passed());
}
