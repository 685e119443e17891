#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "feedgame/closure_dynamics.hpp"
#include "feedgame/representation.hpp"
#include "feedgame/run_log.hpp"

namespace feedgame {

struct SubnetInfo {
    std::uint8_t motivation = 0;   // packed 5-bit value of the seeding mask node
    int mask_node = -1;
    std::int64_t node_count = 0;
    std::int64_t arc_count = 0;    // directed arcs induced by the subnet
    double clustering = 0.0;
};

// Everything reported about one finished run. A snapshot-only analysis
// fills the structural fields and leaves the dynamics ones empty.
struct RunMetrics {
    std::int64_t iterations = 0;
    std::map<int, std::int64_t> arc_histogram;  // (source,target,arc) digits -> count
    std::int64_t num_nodes = 0;
    std::int64_t num_arcs = 0;
    std::int64_t facts = 0;
    std::optional<double> att;
    DynamicsNetwork::Tables tables;
    std::vector<std::pair<std::int64_t, std::int64_t>> facts_timeline;   // change points
    std::vector<std::pair<std::int64_t, double>> clustering_timeline;
    double clustering_final = 0.0;
    std::vector<SubnetInfo> subnets;
};

// Arcs of the final representation classified by the Table-1 digits of
// (source status, target status, arc status).
std::map<int, std::int64_t> arc_status_histogram(const RepresentationNetwork& net);

// Watts-Strogatz clustering coefficient on the undirected projection
// (self-loops dropped, antiparallel arcs merged). Nodes with fewer than
// two neighbours contribute 0; the result is the mean over all nodes,
// 0 for an empty graph.
double clustering_coefficient(const RepresentationNetwork& net);

// Cumulative fact count over time, reconstructed from the logged fact
// events. Always starts at (0, 0).
std::vector<std::pair<std::int64_t, std::int64_t>> facts_timeline(
    const std::vector<LogRecord>& records);

// For every motivation-derived mask node: the subgraph of nodes reachable
// from it or reaching it, with its size and clustering coefficient.
std::vector<SubnetInfo> motivation_subnets(const RepresentationNetwork& net);

RunMetrics compute_metrics(const RepresentationNetwork& net, const DynamicsNetwork& dynamics,
                           std::vector<std::pair<std::int64_t, std::int64_t>> facts_tl,
                           std::vector<std::pair<std::int64_t, double>> clustering_tl,
                           std::int64_t iterations);

}  // namespace feedgame
