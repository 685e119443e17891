#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "feedgame/metrics.hpp"
#include "feedgame/run_config.hpp"

namespace feedgame {

struct PolicySpec {
    std::string label;
    FocusPolicy policy;
};

// The paper's comparison set: fixed 0, 0.25, 0.5, 0.75 and the variable rule.
std::vector<PolicySpec> default_policy_set();

// Label for one policy ("f0.25", "var"); used in reports and expectations.
std::string policy_label(const FocusPolicy& policy);

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation (n-1); 0 when n < 2
    int n = 0;
};

Aggregate aggregate_of(const std::vector<double>& values);

struct PolicyStats {
    // loop_total, transition_total, att, facts, clustering, num_nodes, num_arcs
    std::map<std::string, Aggregate> scalars;
    std::map<int, Aggregate> loops;                        // per closure code
    std::map<std::pair<int, int>, Aggregate> transitions;  // per code pair
    std::map<int, Aggregate> arcs;                         // arc histogram cells
};

struct SweepReport {
    RunConfig base;
    std::vector<std::uint64_t> seeds;
    std::vector<PolicySpec> policies;
    std::map<std::string, PolicyStats> stats;  // keyed by policy label
    std::vector<std::string> failures;         // "<label>/seed=<n>: <error>"
};

// Cross product of policies and seeds; runs are independent and the
// report is the same regardless of execution order or thread count.
SweepReport run_sweep(const RunConfig& base, const std::vector<PolicySpec>& policies,
                      const std::vector<std::uint64_t>& seeds, int threads = 1);

nlohmann::json report_to_json(const SweepReport& report);
SweepReport report_from_json(const nlohmann::json& j);  // throws std::invalid_argument

// Comparison tables shaped like the per-policy loop/transition/arc tables.
std::string report_tables_text(const SweepReport& report);

}  // namespace feedgame
