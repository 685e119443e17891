#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "feedgame/closure_dynamics.hpp"
#include "feedgame/representation.hpp"
#include "feedgame/run_config.hpp"

namespace feedgame {

// Parsing failure for persisted artifacts: carries the first offending
// line so truncation and schema drift are reported precisely.
struct ParseError : std::runtime_error {
    ParseError(std::string source, int line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          source_name(std::move(source)),
          line_number(line) {}
    std::string source_name;
    int line_number;
};

// One iteration of a run: everything the offline tooling needs to rebuild
// the representation and every metric without re-running the world.
struct LogRecord {
    std::int64_t iteration = 0;
    Actuation commanded;
    EffectiveDisplacement effective;
    bool chose_undo = false;
    BitVec sensing;
    BitVec motivation;
    ClosureCode code;
    double focus = 0.0;
    bool game_completed = false;
    std::vector<RepEvent> events;
};

inline constexpr const char* kRunLogFormatLine = "# feedgame-runlog v1";

// Tab-separated, one record per line, bit vectors hex encoded. Identical
// configs produce byte-identical streams.
void write_run_log(std::ostream& out, const RunConfig& config,
                   const std::vector<LogRecord>& records);

struct ParsedRunLog {
    RunConfig config;
    std::vector<LogRecord> records;
};

ParsedRunLog parse_run_log(std::istream& in, const std::string& source_name);

std::string record_line(const LogRecord& record);  // without trailing newline

}  // namespace feedgame
