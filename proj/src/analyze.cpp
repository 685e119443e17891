#include "feedgame/analyze.hpp"

#include <fstream>
#include <sstream>

#include "feedgame/pipeline.hpp"
#include "feedgame/serialization.hpp"
#include "feedgame/text.hpp"

namespace feedgame {

RunMetrics analyze_log_stream(std::istream& in, const std::string& source_name) {
    ParsedRunLog parsed = parse_run_log(in, source_name);
    ClosurePipeline pipeline(parsed.config);
    for (const LogRecord& record : parsed.records) {
        const std::vector<RepEvent> events =
            pipeline.advance(record.iteration, record.sensing, record.motivation, record.effective);
        // Header is two lines; record i sits on line i + 2.
        const int line_no = static_cast<int>(record.iteration) + 2;
        if (pipeline.last_code() != record.code)
            throw ParseError(source_name, line_no,
                             "closure code mismatch: log has " + record.code.str() +
                                 ", replay computes " + pipeline.last_code().str());
        if (events != record.events)
            throw ParseError(source_name, line_no,
                             "representation events diverge from replay at iteration " +
                                 std::to_string(record.iteration));
    }
    return pipeline.finalize(parsed.config.iterations);
}

RunMetrics analyze_network_stream(std::istream& in, const std::string& source_name) {
    ParsedNetwork parsed = parse_network(in, source_name);
    RunMetrics m;
    m.iterations = 0;
    m.arc_histogram = arc_status_histogram(parsed.net);
    m.num_nodes = static_cast<std::int64_t>(parsed.net.nodes().size());
    m.num_arcs = static_cast<std::int64_t>(parsed.net.arcs().size());
    if (auto it = m.arc_histogram.find(223); it != m.arc_histogram.end()) m.facts = it->second;
    m.clustering_final = clustering_coefficient(parsed.net);
    m.subnets = motivation_subnets(parsed.net);
    return m;
}

RunMetrics analyze_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string first_line;
    if (!std::getline(in, first_line)) throw ParseError(path.string(), 1, "empty file");
    in.seekg(0);
    const std::string_view header = trim(first_line);
    if (header == kRunLogFormatLine) return analyze_log_stream(in, path.string());
    if (header == kNetworkFormatLine) return analyze_network_stream(in, path.string());
    throw ParseError(path.string(), 1,
                     "unrecognized format header '" + std::string(header) + "'");
}

}  // namespace feedgame
