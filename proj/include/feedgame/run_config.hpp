#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "feedgame/agent.hpp"
#include "feedgame/gridworld.hpp"
#include "feedgame/representation.hpp"

namespace feedgame {

// Raised for anything the user got wrong on the command line or in a
// config file; the CLI maps it to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::uint64_t seed = 1;
    std::int64_t iterations = 15000;
    FocusPolicy policy = FocusPolicy::fixed(0.0);
    Thresholds thresholds;                  // node hits 8, arc frequency 8, probability 0.5
    std::int64_t extraction_period = 500;   // mechanism-1 cadence
    int world_size = 7;
    int eye_size = 5;
    std::optional<Position> mouth;          // default: bottom row, centre column
    std::int64_t snapshot_every = 500;      // clustering-timeline cadence
    bool include_zero_motivation = false;
    std::string rng_name = "pcg32";

    Position mouth_position() const {
        if (mouth) return *mouth;
        return Position{world_size / 2, world_size - 1};
    }

    WorldConfig world_config() const {
        return WorldConfig{world_size, eye_size, mouth_position()};
    }

    int sensing_bits() const { return world_config().sensing_bits(); }

    void validate() const;  // throws UsageError

    // Canonical single-line form embedded in run logs and snapshots so
    // persisted artifacts replay under the exact parameters that made them.
    std::string header_string() const;
    static RunConfig from_header_string(const std::string& line);

    // key = value file, one entry per line, '#' comments.
    void apply_config_file(const std::filesystem::path& path);
    void apply_key_value(const std::string& key, const std::string& value);
};

}  // namespace feedgame
