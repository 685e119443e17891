#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "feedgame/bitvec.hpp"

namespace feedgame {

class RepresentationNetwork;

// Per-iteration knowledge state: statuses of the node matching the
// previous sensing, the node matching the current sensing, and the arc
// between them. Node digit: 0 unknown, 1 potential, 2 affective. Arc
// digit: 0 absent, 1 not frequent, 2 frequent, 3 codifiable. 36 values.
struct ClosureCode {
    int prev = 0;
    int curr = 0;
    int arc = 0;

    friend auto operator<=>(const ClosureCode&, const ClosureCode&) = default;

    bool valid() const {
        return prev >= 0 && prev <= 2 && curr >= 0 && curr <= 2 && arc >= 0 && arc <= 3;
    }

    int as_int() const { return prev * 100 + curr * 10 + arc; }

    static std::optional<ClosureCode> from_int(int v) {
        ClosureCode c{v / 100, (v / 10) % 10, v % 10};
        if (!c.valid()) return std::nullopt;
        return c;
    }

    std::string str() const {
        return {static_cast<char>('0' + prev), static_cast<char>('0' + curr),
                static_cast<char>('0' + arc)};
    }

    // Dense index in [0, 36).
    int index() const { return prev * 12 + curr * 4 + arc; }
    static ClosureCode from_index(int i) { return ClosureCode{i / 12, (i % 12) / 4, i % 4}; }
};

// Code for the pair (prev sensing, curr sensing) against the network as
// it stands now. prev_sensing may be null on the very first iteration;
// an absent previous sensing matches nothing.
ClosureCode closure_code(const RepresentationNetwork& net, const BitVec* prev_sensing,
                         const BitVec& curr_sensing);

// Weighted directed graph over the 36 closure codes counting observed
// code-to-code successions. Self-edges are loops (iterations without a
// change of closure state), cross edges are transitions.
class DynamicsNetwork {
public:
    void record_step(ClosureCode prev, ClosureCode curr);

    std::int64_t total_pairs() const { return total_; }
    std::int64_t loop_count() const { return loops_; }
    std::int64_t transition_count() const { return transitions_; }

    struct Tables {
        std::map<int, double> loops;                       // code -> relative frequency
        std::map<std::pair<int, int>, double> transitions; // (from,to) -> relative frequency
        double loop_total = 0.0;
        double transition_total = 0.0;
    };

    // Each counter divided by the total number of recorded pairs.
    // Throws std::domain_error when nothing has been recorded.
    Tables relative_frequencies() const;

    // Total recorded pairs over the number of transitions. Throws
    // std::domain_error when no transition has been observed.
    double average_time_per_transition() const;

    struct EdgeRow {
        int from = 0;
        int to = 0;
        std::int64_t count = 0;
        double relative_frequency = 0.0;
    };
    std::vector<EdgeRow> export_rows() const;

private:
    std::array<std::int64_t, 36 * 36> counts_{};
    std::int64_t total_ = 0;
    std::int64_t loops_ = 0;
    std::int64_t transitions_ = 0;
};

}  // namespace feedgame
