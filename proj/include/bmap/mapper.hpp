#pragma once

#include "bmap/engine.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bmap {

struct NodeStats {
    std::int64_t dwell_samples = 0;  // recorded samples landing on the cell
    std::int64_t unique_visitors = 0;
};

using EdgeKey = std::pair<std::string, std::string>; // lexicographically ordered

struct BeliefGraph {
    std::map<std::string, NodeStats> nodes;
    std::map<EdgeKey, std::int64_t> edges; // traversal counts
    std::map<std::string, std::array<double, 2>> layout; // empty until laid out
    double sample_dt = 1.0; // simulated time between recorded samples
};

// Mean time an agent spent on the cell: dwell_samples / unique_visitors,
// converted to time units via sample_dt.
double mean_dwell_time(const BeliefGraph& graph, const NodeStats& stats);

// Merges all trajectories into one shared-node graph: repeated samples on a
// label accumulate dwell, consecutive distinct labels add an undirected edge
// traversal, and each agent counts once per visited node.
BeliefGraph build_graph(std::span<const Trajectory> trajectories, double sample_dt);

struct FrParams {
    int iterations = 500;
    double area = 1.0;
    double c = 1.0; // optimal-distance scale: k = c * sqrt(area / node_count)
    double initial_temperature = 0.1;
    double cooling = 0.95;
    std::uint64_t layout_seed = 1;
};

// Classic force model (repulsion k^2/d between all pairs, attraction d^2/k
// along edges) with one modification: each node moves by the full
// temperature along its net force direction instead of min(|force|, t).
// The classic cap lets near-equilibrium force oscillations grow between
// cooling steps, so per-iteration movement is not monotone; the fixed-length
// step makes total movement exactly follow the cooling schedule while
// keeping the same equilibria. Deterministic given layout_seed.
std::map<std::string, std::array<double, 2>> fr_layout(
    const BeliefGraph& graph, const FrParams& params,
    std::vector<double>* energy_trace = nullptr);

struct OverlayChannel {
    std::int64_t dwell_samples = 0;
    std::int64_t visitors = 0;
};

struct OverlayMap {
    BeliefGraph base;                 // retains its layout and statistics
    std::vector<std::string> groups;  // channel order
    // Per base node, one channel per group (zeros where the group never went).
    std::map<std::string, std::vector<OverlayChannel>> channels;
    // Dwell samples a group spent on labels absent from the base graph.
    std::vector<std::int64_t> unmapped_dwell;
};

// Attaches per-group statistics onto the base graph's laid-out nodes; base
// coordinates are preserved untouched. Throws DataError when the base has
// no layout.
OverlayMap overlay_map(const BeliefGraph& base,
                       std::span<const std::pair<std::string, BeliefGraph>> others);

} // namespace bmap
