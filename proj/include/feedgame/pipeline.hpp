#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "feedgame/closure_dynamics.hpp"
#include "feedgame/metrics.hpp"
#include "feedgame/representation.hpp"
#include "feedgame/run_config.hpp"

namespace feedgame {

// The knowledge side of one run: motivation ledger, representation
// network, closure codes and the dynamics network, advanced one
// iteration at a time from the agent-visible stream (sensing,
// motivation, effective displacement). Both the live runner and the
// offline log replay drive this same engine, which is what makes
// persisted runs reproduce in-process results exactly.
class ClosurePipeline {
public:
    explicit ClosurePipeline(const RunConfig& cfg);

    // Iterations are 1-based and must arrive in order.
    std::vector<RepEvent> advance(std::int64_t iteration, const BitVec& sensing,
                                  const BitVec& motivation,
                                  const EffectiveDisplacement& effective);

    bool has_code() const { return prev_code_.has_value(); }
    ClosureCode last_code() const { return *prev_code_; }

    const RepresentationNetwork& net() const { return net_; }
    const MotivationLedger& ledger() const { return ledger_; }
    const DynamicsNetwork& dynamics() const { return dynamics_; }

    // Computes the run's metrics; appends the final clustering point if
    // the cadence did not land on the last iteration.
    RunMetrics finalize(std::int64_t iterations);

private:
    RunConfig cfg_;
    MotivationLedger ledger_;
    RepresentationNetwork net_;
    DynamicsNetwork dynamics_;
    std::optional<BitVec> prev_sensing_;
    std::optional<ClosureCode> prev_code_;
    std::int64_t fact_count_ = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> facts_timeline_{{0, 0}};
    std::vector<std::pair<std::int64_t, double>> clustering_timeline_{{0, 0.0}};
};

}  // namespace feedgame
