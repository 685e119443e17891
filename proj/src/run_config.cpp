#include "feedgame/run_config.hpp"

#include <fstream>

#include "feedgame/text.hpp"

namespace feedgame {

void RunConfig::validate() const {
    try {
        world_config().validate();
        policy.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (iterations < 0) throw UsageError("iterations must be >= 0");
    if (thresholds.node_hits <= 0) throw UsageError("theta_n must be positive");
    if (thresholds.arc_frequency <= 0) throw UsageError("theta_f must be positive");
    if (thresholds.probability <= 0.0 || thresholds.probability > 1.0)
        throw UsageError("theta_p must be in (0,1]");
    if (extraction_period <= 0) throw UsageError("theta_e must be positive");
    if (snapshot_every <= 0) throw UsageError("snapshot_every must be positive");
    if (rng_name != "pcg32")
        throw UsageError("unknown rng '" + rng_name + "' (supported: pcg32)");
}

std::string RunConfig::header_string() const {
    std::string s;
    s += "seed=" + std::to_string(seed);
    s += " iterations=" + std::to_string(iterations);
    s += " world=" + std::to_string(world_size);
    s += " eye=" + std::to_string(eye_size);
    const Position m = mouth_position();
    s += " mouth=" + std::to_string(m.x) + "," + std::to_string(m.y);
    s += " policy=" + policy.serialize();
    s += " theta_n=" + std::to_string(thresholds.node_hits);
    s += " theta_f=" + std::to_string(thresholds.arc_frequency);
    s += " theta_p=" + format_number(thresholds.probability);
    s += " theta_e=" + std::to_string(extraction_period);
    s += " snapshot_every=" + std::to_string(snapshot_every);
    s += " include_zero_motivation=" + std::string(include_zero_motivation ? "1" : "0");
    s += " rng=" + rng_name;
    return s;
}

void RunConfig::apply_key_value(const std::string& key, const std::string& value) {
    try {
        if (key == "seed")
            seed = static_cast<std::uint64_t>(parse_int64(value, "seed"));
        else if (key == "iterations")
            iterations = parse_int64(value, "iterations");
        else if (key == "world")
            world_size = static_cast<int>(parse_int64(value, "world"));
        else if (key == "eye")
            eye_size = static_cast<int>(parse_int64(value, "eye"));
        else if (key == "mouth") {
            const auto parts = split(value, ',');
            if (parts.size() != 2) throw std::invalid_argument("mouth must be 'x,y'");
            mouth = Position{static_cast<int>(parse_int64(parts[0], "mouth.x")),
                             static_cast<int>(parse_int64(parts[1], "mouth.y"))};
        } else if (key == "policy" || key == "focus") {
            // "focus" accepts a bare number or "var" as shorthand.
            if (key == "focus" && value != "var" && value != "variable" &&
                value.find(':') == std::string::npos)
                policy = FocusPolicy::fixed(parse_number(value, "focus"));
            else
                policy = FocusPolicy::parse(value);
        } else if (key == "focus_high")
            policy.high_value = parse_number(value, "focus_high");
        else if (key == "focus_low")
            policy.low_value = parse_number(value, "focus_low");
        else if (key == "focus_high_set") {
            std::set<int> codes;
            for (const auto& tok : split(value, ','))
                if (!trim(tok).empty())
                    codes.insert(static_cast<int>(parse_int64(trim(tok), "focus_high_set")));
            policy.high_set = std::move(codes);
        } else if (key == "theta_n")
            thresholds.node_hits = parse_int64(value, "theta_n");
        else if (key == "theta_f")
            thresholds.arc_frequency = parse_int64(value, "theta_f");
        else if (key == "theta_p")
            thresholds.probability = parse_number(value, "theta_p");
        else if (key == "theta_e")
            extraction_period = parse_int64(value, "theta_e");
        else if (key == "snapshot_every")
            snapshot_every = parse_int64(value, "snapshot_every");
        else if (key == "include_zero_motivation")
            include_zero_motivation = parse_int64(value, "include_zero_motivation") != 0;
        else if (key == "rng")
            rng_name = value;
        else
            throw std::invalid_argument("unknown config key '" + key + "'");
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

void RunConfig::apply_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path.string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        const std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw UsageError(path.string() + ":" + std::to_string(line_no) +
                             ": expected 'key = value'");
        const std::string key{trim(sv.substr(0, eq))};
        const std::string value{trim(sv.substr(eq + 1))};
        try {
            apply_key_value(key, value);
        } catch (const UsageError& e) {
            throw UsageError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

RunConfig RunConfig::from_header_string(const std::string& line) {
    RunConfig cfg;
    for (const auto& field : split(trim(line), ' ')) {
        if (field.empty()) continue;
        const std::size_t eq = field.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad config header field: '" + field + "'");
        cfg.apply_key_value(field.substr(0, eq), field.substr(eq + 1));
    }
    return cfg;
}

}  // namespace feedgame
