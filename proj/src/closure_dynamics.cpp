#include "feedgame/closure_dynamics.hpp"

#include <stdexcept>

#include "feedgame/representation.hpp"

namespace feedgame {

ClosureCode closure_code(const RepresentationNetwork& net, const BitVec* prev_sensing,
                         const BitVec& curr_sensing) {
    ClosureCode code;
    std::optional<int> prev_node;
    if (prev_sensing) {
        prev_node = net.match_node(*prev_sensing);
        if (prev_node) code.prev = status_digit(net.nodes()[static_cast<std::size_t>(*prev_node)].status);
    }
    const std::optional<int> curr_node = net.match_node(curr_sensing);
    if (curr_node) code.curr = status_digit(net.nodes()[static_cast<std::size_t>(*curr_node)].status);
    if (prev_node && curr_node) {
        if (const Arc* arc = net.find_arc(*prev_node, *curr_node)) code.arc = status_digit(arc->status);
    }
    return code;
}

void DynamicsNetwork::record_step(ClosureCode prev, ClosureCode curr) {
    ++counts_[static_cast<std::size_t>(prev.index() * 36 + curr.index())];
    ++total_;
    if (prev == curr)
        ++loops_;
    else
        ++transitions_;
}

DynamicsNetwork::Tables DynamicsNetwork::relative_frequencies() const {
    if (total_ == 0) throw std::domain_error("no recorded closure-state pairs");
    Tables tables;
    for (int from = 0; from < 36; ++from) {
        for (int to = 0; to < 36; ++to) {
            const std::int64_t n = counts_[static_cast<std::size_t>(from * 36 + to)];
            if (n == 0) continue;
            const double rel = static_cast<double>(n) / static_cast<double>(total_);
            const ClosureCode from_code = ClosureCode::from_index(from);
            const ClosureCode to_code = ClosureCode::from_index(to);
            if (from == to) {
                tables.loops[from_code.as_int()] = rel;
                tables.loop_total += rel;
            } else {
                tables.transitions[{from_code.as_int(), to_code.as_int()}] = rel;
                tables.transition_total += rel;
            }
        }
    }
    return tables;
}

double DynamicsNetwork::average_time_per_transition() const {
    if (transitions_ == 0) throw std::domain_error("no transitions recorded");
    return static_cast<double>(total_) / static_cast<double>(transitions_);
}

std::vector<DynamicsNetwork::EdgeRow> DynamicsNetwork::export_rows() const {
    std::vector<EdgeRow> rows;
    for (int from = 0; from < 36; ++from) {
        for (int to = 0; to < 36; ++to) {
            const std::int64_t n = counts_[static_cast<std::size_t>(from * 36 + to)];
            if (n == 0) continue;
            const ClosureCode from_code = ClosureCode::from_index(from);
            const ClosureCode to_code = ClosureCode::from_index(to);
            rows.push_back(EdgeRow{from_code.as_int(), to_code.as_int(), n,
                                   static_cast<double>(n) / static_cast<double>(total_)});
        }
    }
    return rows;
}

}  // namespace feedgame
