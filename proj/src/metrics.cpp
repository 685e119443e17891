#include "feedgame/metrics.hpp"

#include <algorithm>

namespace feedgame {

namespace {

// Sorted unique neighbour lists of the undirected projection, restricted
// to nodes flagged in `keep` (empty = all).
std::vector<std::vector<int>> undirected_adjacency(const RepresentationNetwork& net,
                                                   const std::vector<char>& keep) {
    std::vector<std::vector<int>> adj(net.nodes().size());
    const bool all = keep.empty();
    for (const Arc& arc : net.arcs()) {
        if (arc.source == arc.target) continue;
        if (!all && (!keep[static_cast<std::size_t>(arc.source)] ||
                     !keep[static_cast<std::size_t>(arc.target)]))
            continue;
        adj[static_cast<std::size_t>(arc.source)].push_back(arc.target);
        adj[static_cast<std::size_t>(arc.target)].push_back(arc.source);
    }
    for (auto& neighbours : adj) {
        std::sort(neighbours.begin(), neighbours.end());
        neighbours.erase(std::unique(neighbours.begin(), neighbours.end()), neighbours.end());
    }
    return adj;
}

std::size_t sorted_intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            ++n;
            ++ia;
            ++ib;
        }
    }
    return n;
}

// Mean local coefficient over the given node set (all nodes when empty).
double clustering_over(const std::vector<std::vector<int>>& adj, const std::vector<int>& members) {
    if (members.empty()) return 0.0;
    double sum = 0.0;
    for (int v : members) {
        const auto& neighbours = adj[static_cast<std::size_t>(v)];
        const std::size_t k = neighbours.size();
        if (k < 2) continue;
        std::size_t links = 0;
        for (int u : neighbours) links += sorted_intersection_size(neighbours, adj[static_cast<std::size_t>(u)]);
        links /= 2;  // each edge among neighbours seen from both ends
        sum += static_cast<double>(links) /
               (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
    }
    return sum / static_cast<double>(members.size());
}

}  // namespace

std::map<int, std::int64_t> arc_status_histogram(const RepresentationNetwork& net) {
    std::map<int, std::int64_t> histogram;
    for (const Arc& arc : net.arcs()) {
        const int code =
            status_digit(net.nodes()[static_cast<std::size_t>(arc.source)].status) * 100 +
            status_digit(net.nodes()[static_cast<std::size_t>(arc.target)].status) * 10 +
            status_digit(arc.status);
        ++histogram[code];
    }
    return histogram;
}

double clustering_coefficient(const RepresentationNetwork& net) {
    if (net.nodes().empty()) return 0.0;
    const auto adj = undirected_adjacency(net, {});
    std::vector<int> members(net.nodes().size());
    for (std::size_t i = 0; i < members.size(); ++i) members[i] = static_cast<int>(i);
    return clustering_over(adj, members);
}

std::vector<std::pair<std::int64_t, std::int64_t>> facts_timeline(
    const std::vector<LogRecord>& records) {
    std::vector<std::pair<std::int64_t, std::int64_t>> series{{0, 0}};
    std::int64_t count = 0;
    for (const LogRecord& r : records) {
        std::int64_t new_facts = 0;
        for (const RepEvent& e : r.events)
            if (e.kind == RepEventKind::FactFormed) ++new_facts;
        if (new_facts > 0) {
            count += new_facts;
            series.emplace_back(r.iteration, count);
        }
    }
    return series;
}

std::vector<SubnetInfo> motivation_subnets(const RepresentationNetwork& net) {
    std::vector<SubnetInfo> subnets;
    for (const Node& node : net.nodes()) {
        if (node.kind != PatternKind::Mask) continue;
        // Union of forward and backward reachability from the mask node.
        std::vector<char> seen(net.nodes().size(), 0);
        seen[static_cast<std::size_t>(node.id)] = 1;
        for (const bool forward : {true, false}) {
            std::vector<int> stack{node.id};
            std::vector<char> visited(net.nodes().size(), 0);
            visited[static_cast<std::size_t>(node.id)] = 1;
            while (!stack.empty()) {
                const int v = stack.back();
                stack.pop_back();
                const auto& arcs = forward ? net.arcs_out_of(v) : net.arcs_into(v);
                for (int index : arcs) {
                    const Arc& arc = net.arcs()[static_cast<std::size_t>(index)];
                    const int next = forward ? arc.target : arc.source;
                    if (visited[static_cast<std::size_t>(next)]) continue;
                    visited[static_cast<std::size_t>(next)] = 1;
                    seen[static_cast<std::size_t>(next)] = 1;
                    stack.push_back(next);
                }
            }
        }
        SubnetInfo info;
        info.motivation = node.motivation;
        info.mask_node = node.id;
        std::vector<int> members;
        for (std::size_t i = 0; i < seen.size(); ++i)
            if (seen[i]) members.push_back(static_cast<int>(i));
        info.node_count = static_cast<std::int64_t>(members.size());
        for (const Arc& arc : net.arcs())
            if (seen[static_cast<std::size_t>(arc.source)] &&
                seen[static_cast<std::size_t>(arc.target)])
                ++info.arc_count;
        info.clustering = clustering_over(undirected_adjacency(net, seen), members);
        subnets.push_back(info);
    }
    return subnets;
}

RunMetrics compute_metrics(const RepresentationNetwork& net, const DynamicsNetwork& dynamics,
                           std::vector<std::pair<std::int64_t, std::int64_t>> facts_tl,
                           std::vector<std::pair<std::int64_t, double>> clustering_tl,
                           std::int64_t iterations) {
    RunMetrics m;
    m.iterations = iterations;
    m.arc_histogram = arc_status_histogram(net);
    m.num_nodes = static_cast<std::int64_t>(net.nodes().size());
    m.num_arcs = static_cast<std::int64_t>(net.arcs().size());
    if (auto it = m.arc_histogram.find(223); it != m.arc_histogram.end()) m.facts = it->second;
    if (dynamics.total_pairs() > 0) m.tables = dynamics.relative_frequencies();
    if (dynamics.transition_count() > 0) m.att = dynamics.average_time_per_transition();
    m.facts_timeline = std::move(facts_tl);
    m.clustering_timeline = std::move(clustering_tl);
    m.clustering_final = clustering_coefficient(net);
    m.subnets = motivation_subnets(net);
    return m;
}

}  // namespace feedgame
