#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "feedgame/sweep.hpp"

namespace feedgame {

// One rule per line: `<expr> <cmp> <expr>` with cmp in < <= > >= ==.
// Expressions combine numbers, +-*/, parentheses, max/min/abs, and
// references into a sweep report:
//   <policy>.<metric>             mean of a scalar (loop_total,
//                                 transition_total, att, facts,
//                                 clustering, num_nodes, num_arcs, subnets)
//   <policy>.<metric>.std         its standard deviation across seeds
//   <policy>.loop[222]            a loop cell mean
//   <policy>.trans[020-121]       a transition cell mean
//   <policy>.arcs[223]            an arc histogram cell mean
// Blank lines and '#' comments are ignored.
struct ExpectationResult {
    std::string rule;
    bool passed = false;
    std::string detail;  // evaluated sides, or the evaluation error
};

std::vector<ExpectationResult> evaluate_expectations(const SweepReport& report,
                                                     std::istream& rules);

}  // namespace feedgame
