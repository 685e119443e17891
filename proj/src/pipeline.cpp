#include "feedgame/pipeline.hpp"

namespace feedgame {

ClosurePipeline::ClosurePipeline(const RunConfig& cfg)
    : cfg_(cfg), ledger_(cfg.include_zero_motivation), net_(cfg.thresholds) {}

std::vector<RepEvent> ClosurePipeline::advance(std::int64_t iteration, const BitVec& sensing,
                                               const BitVec& motivation,
                                               const EffectiveDisplacement& effective) {
    ledger_.record(sensing, motivation);

    std::vector<RepEvent> events;
    if (iteration % cfg_.extraction_period == 0) net_.extract_affective(ledger_, iteration, events);
    if (prev_sensing_) net_.incorporate(*prev_sensing_, sensing, effective, iteration, events);

    const ClosureCode code =
        closure_code(net_, prev_sensing_ ? &*prev_sensing_ : nullptr, sensing);
    if (prev_code_) dynamics_.record_step(*prev_code_, code);

    for (const RepEvent& e : events) {
        if (e.kind != RepEventKind::FactFormed) continue;
        ++fact_count_;
        if (!facts_timeline_.empty() && facts_timeline_.back().first == iteration)
            facts_timeline_.back().second = fact_count_;
        else
            facts_timeline_.emplace_back(iteration, fact_count_);
    }

    if (iteration % cfg_.snapshot_every == 0)
        clustering_timeline_.emplace_back(iteration, clustering_coefficient(net_));

    prev_sensing_ = sensing;
    prev_code_ = code;
    return events;
}

RunMetrics ClosurePipeline::finalize(std::int64_t iterations) {
    if (iterations > 0 && clustering_timeline_.back().first != iterations)
        clustering_timeline_.emplace_back(iterations, clustering_coefficient(net_));
    return compute_metrics(net_, dynamics_, facts_timeline_, clustering_timeline_, iterations);
}

}  // namespace feedgame
