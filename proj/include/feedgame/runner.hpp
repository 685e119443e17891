#pragma once

#include <vector>

#include "feedgame/pipeline.hpp"
#include "feedgame/run_config.hpp"
#include "feedgame/run_log.hpp"

namespace feedgame {

struct RunResult {
    RunConfig config;
    std::vector<LogRecord> records;
    ClosurePipeline pipeline;  // final network, ledger and dynamics
    RunMetrics metrics;
};

// One complete deterministic run of the feed game.
RunResult run(const RunConfig& config);

}  // namespace feedgame
