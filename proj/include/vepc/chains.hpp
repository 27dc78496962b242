#ifndef VEPC_CHAINS_HPP
#define VEPC_CHAINS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "vepc/model.hpp"

namespace vepc {

// One position in a service chain. index is 1-based to match segment
// numbering: segment i runs from position i to position i+1.
struct ChainPosition {
  int index = 0;
  VnfId function = VnfId::SRC;
  int instance = 1;  // theta: positions sharing (function, instance)
                     // within a chain must land on the same node

  bool operator==(const ChainPosition&) const = default;
};

struct ServiceChain {
  int id = 0;
  int src_node = 0;  // v_s, home of SRC positions
  int dst_node = 0;  // v_d, home of the DST position
  std::vector<ChainPosition> positions;  // positions[k] has index k+1
  // betas[i] = fraction of demand on segment i (positions i -> i+1),
  // i = 1 .. n-1; betas[0] is defined as betas[1] and feeds the
  // processing terms at position 1.
  std::vector<double> betas;
  double demand_gbps = 0.0;
  double latency_budget_ms = 0.0;

  int size() const { return static_cast<int>(positions.size()); }
  const ChainPosition& position(int index_1based) const {
    return positions.at(static_cast<std::size_t>(index_1based - 1));
  }
  double beta(int i) const { return betas.at(static_cast<std::size_t>(i)); }
};

// Control-chain step as stored in the editable template files.
using ChainStep = std::pair<VnfId, int>;

class ChainTemplates {
 public:
  ChainTemplates();  // built-in defaults for the four NAS procedures

  const std::vector<ChainStep>& csc(NasProcedure p) const;
  void set_csc(NasProcedure p, std::vector<ChainStep> seq);

 private:
  std::map<NasProcedure, std::vector<ChainStep>> csc_;
};

ChainTemplates load_chain_templates(const nlohmann::json& doc);
ChainTemplates load_chain_templates_file(const std::string& path);

// Control service chain for a NAS procedure. Begins and ends at SRC;
// repeated visits to one function reuse the same instance label.
std::vector<ChainStep> build_csc(NasProcedure procedure,
                                 const ChainTemplates& templates);

// Data service chain: upload traverses SGW then PGW, download the reverse.
std::vector<ChainStep> build_dsc(Direction direction);

// Splices CSC (if any) with the DSC and DST endpoint; fills betas and the
// total latency budget (control budget + application budget).
ServiceChain compose_chain(const TrafficFlow& flow, const AppCatalog& apps,
                           const Topology& topo,
                           const ChainTemplates& templates,
                           double control_fraction, int chain_id);

// Destination node for a flow: nearest MEC host by latency when the
// application is MEC-eligible, else the nearest catalog gateway.
// Ties break to the lowest node id.
int select_destination(const TrafficFlow& flow, const AppCatalog& apps,
                       const Topology& topo);

}  // namespace vepc

#endif  // VEPC_CHAINS_HPP
