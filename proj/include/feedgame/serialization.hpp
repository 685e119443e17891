#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "feedgame/metrics.hpp"
#include "feedgame/representation.hpp"
#include "feedgame/run_config.hpp"
#include "feedgame/run_log.hpp"

namespace feedgame {

inline constexpr const char* kNetworkFormatLine = "# feedgame-network v1";

void write_network(std::ostream& out, const RunConfig& config, const RepresentationNetwork& net);

struct ParsedNetwork {
    RunConfig config;
    RepresentationNetwork net;
};

ParsedNetwork parse_network(std::istream& in, const std::string& source_name);

nlohmann::json metrics_to_json(const RunMetrics& metrics);

// Fixed-width zero-padded code string, e.g. 20 -> "020".
std::string code_str(int code);

// Human-readable per-run tables (loops, transitions, arc histogram).
std::string metrics_tables_text(const RunMetrics& metrics);

// Dynamics-network rows: from, to, count, relative frequency.
void write_dynamics_rows(std::ostream& out, const DynamicsNetwork& dynamics);

}  // namespace feedgame
