#include "feedgame/run_log.hpp"

#include <istream>
#include <ostream>

#include "feedgame/text.hpp"

namespace feedgame {

namespace {

std::string four_values(int a, int b, int c, int d) {
    return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
           std::to_string(d);
}

void parse_four(const std::string& field, const char* what, int out[4]) {
    const auto parts = split(field, ',');
    if (parts.size() != 4) throw std::invalid_argument(std::string("expected 4 values for ") + what);
    for (int i = 0; i < 4; ++i) {
        const std::int64_t v = parse_int64(parts[static_cast<std::size_t>(i)], what);
        if (v < -1 || v > 1)
            throw std::invalid_argument(std::string(what) + " component out of {-1,0,1}");
        out[i] = static_cast<int>(v);
    }
}

}  // namespace

std::string record_line(const LogRecord& r) {
    std::string line = std::to_string(r.iteration);
    line += '\t';
    line += four_values(r.commanded.ex, r.commanded.ey, r.commanded.hx, r.commanded.hy);
    line += '\t';
    line += four_values(r.effective.ex, r.effective.ey, r.effective.hx, r.effective.hy);
    line += '\t';
    line += r.chose_undo ? '1' : '0';
    line += '\t';
    line += r.sensing.to_hex();
    line += '\t';
    line += r.motivation.to_hex();
    line += '\t';
    line += r.code.str();
    line += '\t';
    line += format_number(r.focus);
    line += '\t';
    line += r.game_completed ? '1' : '0';
    line += '\t';
    if (r.events.empty()) {
        line += '-';
    } else {
        for (std::size_t i = 0; i < r.events.size(); ++i) {
            if (i) line += ',';
            line += event_token(r.events[i]);
        }
    }
    return line;
}

void write_run_log(std::ostream& out, const RunConfig& config,
                   const std::vector<LogRecord>& records) {
    out << kRunLogFormatLine << '\n';
    out << "# config " << config.header_string() << '\n';
    for (const LogRecord& r : records) out << record_line(r) << '\n';
}

ParsedRunLog parse_run_log(std::istream& in, const std::string& source_name) {
    ParsedRunLog parsed;
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line))
        throw ParseError(source_name, 1, "empty file (expected format header)");
    ++line_no;
    if (trim(line) != kRunLogFormatLine)
        throw ParseError(source_name, line_no,
                         "unsupported format header '" + std::string(trim(line)) + "' (expected '" +
                             kRunLogFormatLine + "')");

    if (!std::getline(in, line)) throw ParseError(source_name, 2, "missing config line");
    ++line_no;
    const std::string config_prefix = "# config ";
    if (line.rfind(config_prefix, 0) != 0)
        throw ParseError(source_name, line_no, "expected '# config ...' line");
    try {
        parsed.config = RunConfig::from_header_string(line.substr(config_prefix.size()));
        parsed.config.validate();
    } catch (const std::exception& e) {
        throw ParseError(source_name, line_no, e.what());
    }

    const auto sensing_bits = static_cast<std::size_t>(parsed.config.sensing_bits());
    std::int64_t expected_iteration = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 10)
            throw ParseError(source_name, line_no,
                             "expected 10 tab-separated fields, got " +
                                 std::to_string(fields.size()));
        LogRecord r;
        try {
            r.iteration = parse_int64(fields[0], "iteration");
            int vals[4];
            parse_four(fields[1], "commanded actuation", vals);
            r.commanded = Actuation{vals[0], vals[1], vals[2], vals[3]};
            parse_four(fields[2], "effective displacement", vals);
            r.effective = EffectiveDisplacement{vals[0], vals[1], vals[2], vals[3]};
            if (fields[3] != "0" && fields[3] != "1")
                throw std::invalid_argument("chose_undo must be 0 or 1");
            r.chose_undo = fields[3] == "1";
            r.sensing = BitVec::from_hex(fields[4], sensing_bits);
            r.motivation = BitVec::from_hex(fields[5], 5);
            if (fields[6].size() != 3)
                throw std::invalid_argument("closure code must be 3 digits");
            const auto code =
                ClosureCode::from_int(static_cast<int>(parse_int64(fields[6], "closure code")));
            if (!code) throw std::invalid_argument("invalid closure code '" + fields[6] + "'");
            r.code = *code;
            r.focus = parse_number(fields[7], "focus");
            if (fields[8] != "0" && fields[8] != "1")
                throw std::invalid_argument("game_completed must be 0 or 1");
            r.game_completed = fields[8] == "1";
            if (fields[9] != "-")
                for (const auto& token : split(fields[9], ','))
                    r.events.push_back(event_from_token(token));
        } catch (const std::invalid_argument& e) {
            throw ParseError(source_name, line_no, e.what());
        }
        if (r.iteration != expected_iteration)
            throw ParseError(source_name, line_no,
                             "iteration out of sequence: expected " +
                                 std::to_string(expected_iteration) + ", got " +
                                 std::to_string(r.iteration));
        ++expected_iteration;
        parsed.records.push_back(std::move(r));
    }

    if (static_cast<std::int64_t>(parsed.records.size()) != parsed.config.iterations)
        throw ParseError(source_name, line_no,
                         "record count " + std::to_string(parsed.records.size()) +
                             " does not match configured iterations " +
                             std::to_string(parsed.config.iterations) + " (truncated file?)");
    return parsed;
}

}  // namespace feedgame
