#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "feedgame/metrics.hpp"

namespace feedgame {

// Recomputes a run's metrics from a persisted run log by replaying the
// logged stream through the representation and closure dynamics. The
// logged closure codes and events are cross-checked against the replay;
// any divergence is reported as a parse error on the offending record.
RunMetrics analyze_log_stream(std::istream& in, const std::string& source_name);

// Structural metrics only (histogram, clustering, subnets) from a
// network snapshot.
RunMetrics analyze_network_stream(std::istream& in, const std::string& source_name);

// Dispatches on the file's format header.
RunMetrics analyze_file(const std::filesystem::path& path);

}  // namespace feedgame
