#include "vepc/solve.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <unistd.h>

#include "vepc/verify.hpp"

namespace vepc {

namespace fs = std::filesystem;

std::string default_solver_command() {
  if (const char* env = std::getenv("VEPC_SOLVER_CMD"); env && *env)
    return env;
#ifdef VEPC_SOLVER_SCRIPT
  return std::string("python3 ") + VEPC_SOLVER_SCRIPT +
         " {mps} {sol} {time_limit}";
#else
  return "python3 mps_solve.py {mps} {sol} {time_limit}";
#endif
}

namespace {

std::string substitute(std::string tmpl, const std::string& key,
                       const std::string& value) {
  for (std::string::size_type pos;
       (pos = tmpl.find(key)) != std::string::npos;)
    tmpl.replace(pos, key.size(), value);
  return tmpl;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    path = fs::temp_directory_path() /
           ("vepc-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++) + "-" + std::to_string(rd() & 0xffff));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    if (!std::getenv("VEPC_KEEP_TMP")) fs::remove_all(path, ec);
  }
};

// Orders a segment's arc set into a walk starting at `from`. Leftover
// arcs (which the verifier would flag) are appended by id.
std::vector<int> order_walk(const Topology& topo, std::vector<int> arcs,
                            int from) {
  std::vector<int> out;
  std::sort(arcs.begin(), arcs.end());
  int at = from;
  bool progress = true;
  while (progress && !arcs.empty()) {
    progress = false;
    for (std::size_t k = 0; k < arcs.size(); ++k) {
      if (topo.arc(arcs[k]).from == at) {
        at = topo.arc(arcs[k]).to;
        out.push_back(arcs[k]);
        arcs.erase(arcs.begin() + static_cast<long>(k));
        progress = true;
        break;
      }
    }
  }
  out.insert(out.end(), arcs.begin(), arcs.end());
  return out;
}

double chain_processing_ms(const Scenario& scenario, const ServiceChain& c) {
  double processing = 0.0;
  for (int i = 1; i <= c.size(); ++i) {
    const ChainPosition& p = c.position(i);
    if (is_pseudo(p.function)) continue;
    processing += c.beta(i - 1) * c.demand_gbps *
                  scenario.vnfs.spec(p.function).proc_latency_ms_per_gbps;
  }
  return processing;
}

double recompute_objective(const std::vector<ServiceChain>& chains,
                           const PlacementSolution& sol) {
  double obj = 0.0;
  for (const ServiceChain& c : chains)
    for (int i = 1; i < c.size(); ++i)
      if (auto it = sol.routes.find({c.id, i}); it != sol.routes.end())
        obj += c.demand_gbps * c.beta(i) *
               static_cast<double>(it->second.size());
  return obj;
}

void fill_locations(const std::vector<ServiceChain>& chains,
                    PlacementSolution& sol) {
  sol.locations.clear();
  for (const ServiceChain& c : chains)
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) continue;
      if (auto it = sol.assignment.find({c.id, i});
          it != sol.assignment.end())
        sol.locations.insert({it->second, static_cast<int>(p.function)});
    }
}

}  // namespace

PlacementSolution run_external(const MilpModel& model,
                               const std::vector<ServiceChain>& chains,
                               const Scenario& scenario,
                               const SolverSettings& settings) {
  MpsDocument doc = export_interchange(model);
  TempDir tmp;
  fs::path mps_path = tmp.path / "model.mps";
  fs::path sol_path = tmp.path / "model.sol";
  fs::path log_path = tmp.path / "solver.log";
  {
    std::ofstream out(mps_path);
    out << doc.text;
    nlohmann::json names;
    for (const auto& [k, v] : doc.column_names) names["columns"][k] = v;
    for (const auto& [k, v] : doc.row_names) names["rows"][k] = v;
    std::ofstream nout(tmp.path / "names.json");
    nout << names.dump(2);
  }

  std::string cmd =
      settings.command.empty() ? default_solver_command() : settings.command;
  if (cmd.find("{mps}") == std::string::npos)
    cmd += " {mps} {sol} {time_limit}";
  cmd = substitute(cmd, "{mps}", mps_path.string());
  cmd = substitute(cmd, "{sol}", sol_path.string());
  cmd = substitute(cmd, "{time_limit}",
                   std::to_string(settings.time_limit_s));
  cmd += " > " + log_path.string() + " 2>&1";

  auto t0 = std::chrono::steady_clock::now();
  int rc = std::system(cmd.c_str());
  auto t1 = std::chrono::steady_clock::now();
  double wall = std::chrono::duration<double>(t1 - t0).count();
  if (rc != 0) {
    std::string tail;
    std::ifstream log(log_path);
    std::string line;
    while (std::getline(log, line)) tail = tail.empty() ? line : tail + "\n" + line;
    throw SolverError("solver command failed (exit " + std::to_string(rc) +
                      "): " + cmd + (tail.empty() ? "" : "\n" + tail));
  }

  std::ifstream sin(sol_path);
  if (!sin) throw SolverError("solver produced no solution file: " + cmd);
  PlacementSolution sol;
  sol.meta.wall_time_s = wall;
  bool have_status = false;
  double solver_objective = 0.0;
  bool have_objective = false;
  std::map<int, double> values;
  std::optional<std::regex> line_re;
  if (!settings.solution_line_regex.empty())
    line_re.emplace(settings.solution_line_regex);
  std::string line;
  while (std::getline(sin, line)) {
    std::string name, value;
    if (line_re) {
      std::smatch m;
      if (!std::regex_match(line, m, *line_re) || m.size() < 3) continue;
      name = m[1];
      value = m[2];
    } else {
      std::istringstream ls(line);
      if (!(ls >> name >> value)) continue;
    }
    if (name == "status") {
      sol.meta.status = solve_status_from_string(value);
      have_status = true;
    } else if (name == "objective") {
      solver_objective = std::stod(value);
      have_objective = true;
    } else if (name == "gap") {
      sol.meta.gap = std::stod(value);
    } else if (name.size() > 1 && name[0] == 'V') {
      values[std::stoi(name.substr(1))] = std::stod(value);
    }
  }
  if (!have_status)
    throw SolverError("unparsable solver output (no status line)");
  if (sol.meta.status == SolveStatus::Infeasible ||
      sol.meta.status == SolveStatus::Timeout ||
      sol.meta.status == SolveStatus::NotFound)
    return sol;
  if (!have_objective)
    throw SolverError("solver reported no objective value");

  const auto& vars = model.variables();
  std::map<std::pair<int, int>, std::vector<int>> seg_arcs;
  for (const auto& [idx, val] : values) {
    if (idx < 0 || idx >= static_cast<int>(vars.size()))
      throw SolverError("solution references unknown column V" +
                        std::to_string(idx));
    if (val < 0.5) continue;
    const Variable& v = vars[static_cast<std::size_t>(idx)];
    switch (v.kind) {
      case VarKind::XPlace:
        sol.assignment[{v.chain, v.position}] = v.node;
        break;
      case VarKind::XLoc:
        sol.locations.insert({v.node, static_cast<int>(v.function)});
        break;
      case VarKind::YRoute:
        seg_arcs[{v.chain, v.position}].push_back(v.arc);
        break;
      case VarKind::NodeUsed:
        break;
    }
  }
  for (const ServiceChain& c : chains) {
    for (int i = 1; i < c.size(); ++i) {
      auto key = std::make_pair(c.id, i);
      std::vector<int> arcs;
      if (auto it = seg_arcs.find(key); it != seg_arcs.end()) arcs = it->second;
      int from = c.src_node;
      if (auto it = sol.assignment.find({c.id, i}); it != sol.assignment.end())
        from = it->second;
      sol.routes[key] = order_walk(scenario.topology, std::move(arcs), from);
    }
  }
  sol.objective = recompute_objective(chains, sol);
  double scale = std::max(1.0, std::abs(solver_objective));
  if (std::abs(sol.objective - solver_objective) > 1e-6 * scale)
    throw SolverError("objective mismatch: solver " +
                      std::to_string(solver_objective) + " vs recomputed " +
                      std::to_string(sol.objective));
  return sol;
}

PlacementSolution solve_external(const Scenario& scenario) {
  std::vector<ServiceChain> chains = scenario.compose_chains();
  ModelBuilder builder(scenario, chains);
  MilpModel model = builder.build();
  return run_external(model, chains, scenario, scenario.solver);
}

// ---------------------------------------------------------------------------
// exhaustive oracle

namespace {

constexpr int kMaxOracleNodes = 6;
constexpr int kMaxOracleChains = 3;
constexpr long kMaxOracleCombos = 200000;
constexpr std::size_t kMaxChainRoutings = 5000;

struct PathOption {
  std::vector<int> arcs;
  double latency = 0.0;
};

// All simple directed paths a -> b up to hop_bound arcs, sorted by
// (hops, arc ids) for deterministic tie-breaking.
std::vector<PathOption> simple_paths(const Topology& topo, int a, int b,
                                     int hop_bound) {
  std::vector<PathOption> out;
  if (a == b) {
    out.push_back({});
    return out;
  }
  std::vector<int> arc_stack;
  std::set<int> visited{a};
  std::function<void(int)> dfs = [&](int at) {
    if (static_cast<int>(arc_stack.size()) >= hop_bound) return;
    std::vector<int> outs = topo.out_arcs(at);
    std::sort(outs.begin(), outs.end());
    for (int aid : outs) {
      const Arc& arc = topo.arc(aid);
      if (visited.count(arc.to)) continue;
      arc_stack.push_back(aid);
      if (arc.to == b) {
        PathOption p;
        p.arcs = arc_stack;
        for (int x : p.arcs) p.latency += topo.arc(x).prop_latency_ms;
        out.push_back(std::move(p));
      } else {
        visited.insert(arc.to);
        dfs(arc.to);
        visited.erase(arc.to);
      }
      arc_stack.pop_back();
    }
  };
  dfs(a);
  std::sort(out.begin(), out.end(), [](const PathOption& x, const PathOption& y) {
    if (x.arcs.size() != y.arcs.size()) return x.arcs.size() < y.arcs.size();
    return x.arcs < y.arcs;
  });
  return out;
}

struct SegmentChoice {
  int segment = 0;  // 1-based
  double cost_per_hop = 0.0;
  std::vector<PathOption> options;  // sorted by hops
};

struct ChainRouting {
  double cost = 0.0;
  std::map<std::pair<int, int>, std::vector<int>> routes;  // (chain,seg)
  std::map<int, double> arc_load;
};

// Enumerates latency-feasible routings for one chain given fixed positions.
// best_only keeps the cheapest; otherwise all (capped) are returned for
// joint capacity search.
std::vector<ChainRouting> route_chain(const Scenario& scenario,
                                      const ServiceChain& c,
                                      const std::map<int, int>& node_of_pos,
                                      bool best_only) {
  const Topology& topo = scenario.topology;
  int hop_bound = std::min<int>(6, static_cast<int>(topo.nodes().size()) - 1);
  double latency_budget =
      c.latency_budget_ms - chain_processing_ms(scenario, c);
  std::vector<SegmentChoice> segs;
  for (int i = 1; i < c.size(); ++i) {
    SegmentChoice sc;
    sc.segment = i;
    sc.cost_per_hop = c.demand_gbps * c.beta(i);
    sc.options = simple_paths(topo, node_of_pos.at(i), node_of_pos.at(i + 1),
                              hop_bound);
    if (sc.options.empty()) return {};
    segs.push_back(std::move(sc));
  }
  // suffix minima for pruning
  std::vector<double> min_cost_after(segs.size() + 1, 0.0);
  std::vector<double> min_lat_after(segs.size() + 1, 0.0);
  for (std::size_t k = segs.size(); k-- > 0;) {
    double mc = std::numeric_limits<double>::infinity();
    double ml = std::numeric_limits<double>::infinity();
    for (const PathOption& p : segs[k].options) {
      mc = std::min(mc, segs[k].cost_per_hop * static_cast<double>(p.arcs.size()));
      ml = std::min(ml, p.latency);
    }
    min_cost_after[k] = mc + min_cost_after[k + 1];
    min_lat_after[k] = ml + min_lat_after[k + 1];
  }

  std::vector<ChainRouting> results;
  double best_cost = std::numeric_limits<double>::infinity();
  ChainRouting current;
  std::function<void(std::size_t)> dfs = [&](std::size_t k) {
    if (k == segs.size()) {
      if (best_only) {
        if (current.cost < best_cost - 1e-12) {
          best_cost = current.cost;
          results.assign(1, current);
        }
      } else {
        if (results.size() >= kMaxChainRoutings)
          throw ValidationError(
              "exhaustive oracle guard: too many routings for one chain");
        results.push_back(current);
      }
      return;
    }
    double lat_so_far = 0.0;
    for (const auto& [key, arcs] : current.routes)
      for (int aid : arcs) lat_so_far += topo.arc(aid).prop_latency_ms;
    for (const PathOption& p : segs[k].options) {
      double c_add =
          segs[k].cost_per_hop * static_cast<double>(p.arcs.size());
      if (best_only &&
          current.cost + c_add + min_cost_after[k + 1] >= best_cost - 1e-12)
        continue;
      if (lat_so_far + p.latency + min_lat_after[k + 1] >
          latency_budget + 1e-9)
        continue;
      auto key = std::make_pair(c.id, segs[k].segment);
      current.routes[key] = p.arcs;
      current.cost += c_add;
      for (int aid : p.arcs)
        current.arc_load[aid] += segs[k].cost_per_hop;
      dfs(k + 1);
      for (int aid : p.arcs) {
        current.arc_load[aid] -= segs[k].cost_per_hop;
        if (current.arc_load[aid] <= 1e-12) current.arc_load.erase(aid);
      }
      current.cost -= c_add;
      current.routes.erase(key);
    }
  };
  if (latency_budget >= -1e-9) dfs(0);
  return results;
}

}  // namespace

PlacementSolution solve_exhaustive(const Scenario& scenario,
                                   const std::vector<ServiceChain>& chains,
                                   bool colocation) {
  const Topology& topo = scenario.topology;
  if (static_cast<int>(topo.nodes().size()) > kMaxOracleNodes)
    throw ValidationError("exhaustive oracle guard: > " +
                          std::to_string(kMaxOracleNodes) + " nodes");
  if (static_cast<int>(chains.size()) > kMaxOracleChains)
    throw ValidationError("exhaustive oracle guard: > " +
                          std::to_string(kMaxOracleChains) + " chains");
  std::vector<int> nfv = topo.nfv_nodes();

  // placement groups: positions forced to one node
  struct Group {
    const ServiceChain* chain = nullptr;
    VnfId fn = VnfId::MME;
    std::vector<int> positions;
  };
  std::vector<Group> groups;
  for (const ServiceChain& c : chains) {
    std::map<std::pair<int, int>, std::size_t> index;
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) continue;
      if (colocation) {
        auto key = std::make_pair(static_cast<int>(p.function), p.instance);
        auto it = index.find(key);
        if (it != index.end()) {
          groups[it->second].positions.push_back(i);
          continue;
        }
        index[key] = groups.size();
      }
      groups.push_back({&c, p.function, {i}});
    }
  }
  double combos = 1;
  for (std::size_t g = 0; g < groups.size(); ++g) combos *= nfv.size();
  if (combos > kMaxOracleCombos)
    throw ValidationError("exhaustive oracle guard: placement space too large");

  // capacity binding test: worst-case total load on one arc
  double worst_load = 0.0;
  double min_cap = std::numeric_limits<double>::infinity();
  for (const ServiceChain& c : chains)
    for (int i = 1; i < c.size(); ++i)
      worst_load += c.demand_gbps * c.beta(i);
  for (const Arc& a : topo.arcs()) min_cap = std::min(min_cap, a.capacity_gbps);
  bool capacity_binding = worst_load > min_cap + 1e-9;

  PlacementSolution best;
  best.meta.status = SolveStatus::Infeasible;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<int> best_pick;

  std::vector<std::size_t> pick(groups.size(), 0);
  // odometer over group -> NFV node assignments
  while (true) {
    // evaluate current pick
    bool ok = true;
    std::map<int, std::set<int>> fn_nodes;
    std::map<int, double> core_load;
    std::vector<std::map<int, int>> node_of_pos(chains.size());
    for (std::size_t ci = 0; ci < chains.size(); ++ci) {
      const ServiceChain& c = chains[ci];
      for (int i = 1; i <= c.size(); ++i) {
        const ChainPosition& p = c.position(i);
        if (p.function == VnfId::SRC)
          node_of_pos[ci][i] = c.src_node;
        else if (p.function == VnfId::DST)
          node_of_pos[ci][i] = c.dst_node;
      }
    }
    for (std::size_t g = 0; g < groups.size() && ok; ++g) {
      int v = nfv[pick[g]];
      const ServiceChain& c = *groups[g].chain;
      fn_nodes[static_cast<int>(groups[g].fn)].insert(v);
      for (int i : groups[g].positions) {
        for (std::size_t ci = 0; ci < chains.size(); ++ci)
          if (&chains[ci] == groups[g].chain) node_of_pos[ci][i] = v;
        core_load[v] += c.beta(i - 1) * c.demand_gbps *
                        scenario.vnfs.spec(groups[g].fn).cores_per_gbps;
      }
    }
    for (const auto& [f, nodes] : fn_nodes)
      if (static_cast<int>(nodes.size()) >
          scenario.replica_limit(static_cast<VnfId>(f)))
        ok = false;
    if (ok)
      for (const auto& [v, load] : core_load)
        if (load > topo.node(v).cores + 1e-9) ok = false;
    if (ok && scenario.max_nfv_nodes) {
      std::set<int> used;
      for (const auto& [f, nodes] : fn_nodes) used.insert(nodes.begin(), nodes.end());
      if (static_cast<int>(used.size()) > *scenario.max_nfv_nodes) ok = false;
    }

    if (ok) {
      // route all chains
      std::vector<std::vector<ChainRouting>> per_chain;
      bool routable = true;
      for (std::size_t ci = 0; ci < chains.size() && routable; ++ci) {
        auto routings = route_chain(scenario, chains[ci], node_of_pos[ci],
                                    /*best_only=*/!capacity_binding);
        if (routings.empty())
          routable = false;
        else
          per_chain.push_back(std::move(routings));
      }
      if (routable) {
        // joint selection across chains with capacity accounting
        double total = std::numeric_limits<double>::infinity();
        std::vector<std::size_t> choice(per_chain.size(), 0);
        std::vector<std::size_t> best_choice;
        std::map<int, double> loads;
        std::function<void(std::size_t, double)> pickr = [&](std::size_t ci,
                                                             double cost) {
          if (cost >= total - 1e-12) return;
          if (ci == per_chain.size()) {
            total = cost;
            best_choice = choice;
            return;
          }
          // capacity keys: per-arc, or per-edge in shared-fiber mode
          auto cap_key = [&](int aid) {
            return scenario.per_direction_capacity ? aid
                                                   : topo.arc(aid).edge_id;
          };
          for (std::size_t k = 0; k < per_chain[ci].size(); ++k) {
            const ChainRouting& r = per_chain[ci][k];
            bool fits = true;
            if (capacity_binding) {
              std::map<int, double> add_by_key;
              for (const auto& [aid, add] : r.arc_load)
                add_by_key[cap_key(aid)] += add;
              for (const auto& [key, add] : add_by_key) {
                double have = loads.count(key) ? loads.at(key) : 0.0;
                double cap = scenario.per_direction_capacity
                                 ? topo.arc(key).capacity_gbps
                                 : topo.arcs()[0].capacity_gbps;
                if (!scenario.per_direction_capacity) {
                  for (const Arc& a : topo.arcs())
                    if (a.edge_id == key) cap = a.capacity_gbps;
                }
                if (have + add > cap + 1e-9) {
                  fits = false;
                  break;
                }
              }
            }
            if (!fits) continue;
            choice[ci] = k;
            for (const auto& [aid, add] : r.arc_load)
              loads[cap_key(aid)] += add;
            pickr(ci + 1, cost + r.cost);
            for (const auto& [aid, add] : r.arc_load)
              loads[cap_key(aid)] -= add;
          }
        };
        pickr(0, 0.0);
        if (std::isfinite(total)) {
          std::vector<int> pick_vec(pick.begin(), pick.end());
          bool better = total < best_cost - 1e-12 ||
                        (std::abs(total - best_cost) <= 1e-12 &&
                         (best_pick.empty() || pick_vec < best_pick));
          if (better) {
            best_cost = total;
            best_pick = pick_vec;
            best = PlacementSolution{};
            best.meta.status = SolveStatus::Optimal;
            best.objective = total;
            for (std::size_t ci = 0; ci < chains.size(); ++ci) {
              const ServiceChain& c = chains[ci];
              for (int i = 1; i <= c.size(); ++i)
                best.assignment[{c.id, i}] = node_of_pos[ci].at(i);
              const ChainRouting& r = per_chain[ci][best_choice[ci]];
              for (int i = 1; i < c.size(); ++i) {
                auto it = r.routes.find({c.id, i});
                best.routes[{c.id, i}] =
                    it != r.routes.end() ? it->second : std::vector<int>{};
              }
            }
            fill_locations(chains, best);
          }
        }
      }
    }

    // advance odometer
    if (groups.empty()) break;
    std::size_t g = 0;
    while (g < groups.size()) {
      if (++pick[g] < nfv.size()) break;
      pick[g] = 0;
      ++g;
    }
    if (g == groups.size()) break;
  }

  if (chains.empty()) {
    best.meta.status = SolveStatus::Optimal;
    best.objective = 0.0;
  }
  return best;
}

PlacementSolution solve_exhaustive(const Scenario& scenario) {
  return solve_exhaustive(scenario, scenario.compose_chains(), true);
}

// ---------------------------------------------------------------------------
// greedy heuristic

namespace {

// Min-latency path as a node sequence; deterministic (arcs relaxed in id
// order, strict improvement only).
std::vector<int> min_latency_path(const Topology& topo, int a, int b) {
  std::map<int, double> dist;
  std::map<int, int> prev_arc;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[a] = 0.0;
  pq.emplace(0.0, a);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v] + 1e-15) continue;
    std::vector<int> outs = topo.out_arcs(v);
    std::sort(outs.begin(), outs.end());
    for (int aid : outs) {
      const Arc& arc = topo.arc(aid);
      double nd = d + arc.prop_latency_ms;
      auto it = dist.find(arc.to);
      if (it == dist.end() || nd < it->second - 1e-15) {
        dist[arc.to] = nd;
        prev_arc[arc.to] = aid;
        pq.emplace(nd, arc.to);
      }
    }
  }
  std::vector<int> nodes;
  if (!dist.count(b)) return nodes;
  int at = b;
  nodes.push_back(b);
  while (at != a) {
    const Arc& arc = topo.arc(prev_arc.at(at));
    at = arc.from;
    nodes.push_back(at);
  }
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

std::map<int, int> hop_distances(const Topology& topo, int from) {
  std::map<int, int> dist{{from, 0}};
  std::queue<int> q;
  q.push(from);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int aid : topo.out_arcs(v)) {
      int w = topo.arc(aid).to;
      if (!dist.count(w)) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

}  // namespace

PlacementSolution solve_greedy(const Scenario& scenario,
                               const std::vector<ServiceChain>& chains) {
  const Topology& topo = scenario.topology;
  PlacementSolution sol;
  sol.meta.status = SolveStatus::NotFound;

  // demand-weighted node scores along endpoint shortest paths
  std::map<int, double> score;
  for (const ServiceChain& c : chains)
    for (int v : min_latency_path(topo, c.src_node, c.dst_node))
      score[v] += c.demand_gbps;

  std::set<VnfId> used;
  for (const ServiceChain& c : chains)
    for (const ChainPosition& p : c.positions)
      if (!is_pseudo(p.function)) used.insert(p.function);

  std::map<int, std::vector<int>> replicas;  // function -> allowed nodes
  std::vector<int> nfv = topo.nfv_nodes();
  for (VnfId f : used) {
    std::vector<int> ranked = nfv;
    std::sort(ranked.begin(), ranked.end(), [&score](int a, int b) {
      double sa = score.count(a) ? score.at(a) : 0.0;
      double sb = score.count(b) ? score.at(b) : 0.0;
      if (sa != sb) return sa > sb;
      return a < b;
    });
    int limit = std::min<int>(scenario.replica_limit(f),
                              static_cast<int>(ranked.size()));
    if (limit < 1) return sol;
    ranked.resize(static_cast<std::size_t>(limit));
    replicas[static_cast<int>(f)] = std::move(ranked);
  }

  std::map<int, std::map<int, int>> hops;  // lazy per-source BFS
  auto hop = [&](int a, int b) {
    auto it = hops.find(a);
    if (it == hops.end()) it = hops.emplace(a, hop_distances(topo, a)).first;
    auto jt = it->second.find(b);
    return jt == it->second.end() ? std::numeric_limits<int>::max() / 4
                                  : jt->second;
  };

  // assign groups chain by chain, tracking core usage
  std::map<int, double> core_load;
  std::map<std::pair<int, int>, int> where;  // (chain,pos) -> node
  std::vector<ServiceChain> sorted = chains;
  std::sort(sorted.begin(), sorted.end(),
            [](const ServiceChain& a, const ServiceChain& b) {
              return a.id < b.id;
            });
  for (const ServiceChain& c : sorted) {
    std::map<std::pair<int, int>, int> group_node;
    std::map<std::pair<int, int>, double> group_cores;
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (is_pseudo(p.function)) continue;
      group_cores[{static_cast<int>(p.function), p.instance}] +=
          c.beta(i - 1) * c.demand_gbps *
          scenario.vnfs.spec(p.function).cores_per_gbps;
    }
    int prev = c.src_node;
    for (int i = 1; i <= c.size(); ++i) {
      const ChainPosition& p = c.position(i);
      if (p.function == VnfId::SRC) {
        where[{c.id, i}] = c.src_node;
        prev = c.src_node;
        continue;
      }
      if (p.function == VnfId::DST) {
        where[{c.id, i}] = c.dst_node;
        prev = c.dst_node;
        continue;
      }
      auto key = std::make_pair(static_cast<int>(p.function), p.instance);
      auto it = group_node.find(key);
      if (it == group_node.end()) {
        int chosen = -1;
        long best_h = std::numeric_limits<long>::max();
        for (int r : replicas.at(key.first)) {
          if (core_load[r] + group_cores.at(key) >
              topo.node(r).cores + 1e-9)
            continue;
          long h = hop(prev, r);
          if (h < best_h || (h == best_h && (chosen < 0 || r < chosen))) {
            best_h = h;
            chosen = r;
          }
        }
        if (chosen < 0) return sol;  // no replica with spare cores
        core_load[chosen] += group_cores.at(key);
        it = group_node.emplace(key, chosen).first;
      }
      where[{c.id, i}] = it->second;
      prev = it->second;
    }
  }

  // route segments on min-latency paths over arcs with spare capacity
  std::map<int, double> arc_load;
  for (const ServiceChain& c : sorted) {
    for (int i = 1; i < c.size(); ++i) {
      int a = where.at({c.id, i});
      int b = where.at({c.id, i + 1});
      if (a == b) {
        sol.routes[{c.id, i}] = {};
        continue;
      }
      double add = c.demand_gbps * c.beta(i);
      // Dijkstra excluding arcs that would overflow
      std::map<int, double> dist;
      std::map<int, int> prev_arc;
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      dist[a] = 0.0;
      pq.emplace(0.0, a);
      while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v] + 1e-15) continue;
        std::vector<int> outs = topo.out_arcs(v);
        std::sort(outs.begin(), outs.end());
        for (int aid : outs) {
          const Arc& arc = topo.arc(aid);
          double have = arc_load.count(aid) ? arc_load.at(aid) : 0.0;
          if (have + add > arc.capacity_gbps + 1e-9) continue;
          double nd = d + arc.prop_latency_ms;
          auto jt = dist.find(arc.to);
          if (jt == dist.end() || nd < jt->second - 1e-15) {
            dist[arc.to] = nd;
            prev_arc[arc.to] = aid;
            pq.emplace(nd, arc.to);
          }
        }
      }
      if (!dist.count(b)) return sol;  // capacity exhausted
      std::vector<int> arcs;
      for (int at = b; at != a;) {
        int aid = prev_arc.at(at);
        arcs.push_back(aid);
        at = topo.arc(aid).from;
      }
      std::reverse(arcs.begin(), arcs.end());
      for (int aid : arcs) arc_load[aid] += add;
      sol.routes[{c.id, i}] = std::move(arcs);
    }
  }

  for (const auto& [key, node] : where) sol.assignment[key] = node;
  fill_locations(chains, sol);
  sol.objective = recompute_objective(chains, sol);
  sol.meta.status = SolveStatus::Feasible;
  VerificationReport rep = check_solution(scenario, chains, sol);
  if (!rep.passed()) sol.meta.status = SolveStatus::NotFound;
  return sol;
}

PlacementSolution solve_greedy(const Scenario& scenario) {
  return solve_greedy(scenario, scenario.compose_chains());
}

}  // namespace vepc
