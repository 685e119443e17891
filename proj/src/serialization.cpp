#include "feedgame/serialization.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "feedgame/text.hpp"

namespace feedgame {

namespace {

const char* node_status_name(NodeStatus s) {
    return s == NodeStatus::Potential ? "potential" : "affective";
}

const char* arc_status_name(ArcStatus s) {
    switch (s) {
        case ArcStatus::NotFrequent: return "notfrequent";
        case ArcStatus::Frequent: return "frequent";
        case ArcStatus::Codifiable: return "codifiable";
    }
    return "?";
}

NodeStatus node_status_from(const std::string& s) {
    if (s == "potential") return NodeStatus::Potential;
    if (s == "affective") return NodeStatus::Affective;
    throw std::invalid_argument("unknown node status '" + s + "'");
}

ArcStatus arc_status_from(const std::string& s) {
    if (s == "notfrequent") return ArcStatus::NotFrequent;
    if (s == "frequent") return ArcStatus::Frequent;
    if (s == "codifiable") return ArcStatus::Codifiable;
    throw std::invalid_argument("unknown arc status '" + s + "'");
}

}  // namespace

std::string code_str(int code) {
    std::string s = std::to_string(code);
    while (s.size() < 3) s.insert(s.begin(), '0');
    return s;
}

void write_network(std::ostream& out, const RunConfig& config, const RepresentationNetwork& net) {
    out << kNetworkFormatLine << '\n';
    out << "# config " << config.header_string() << '\n';
    for (const Node& node : net.nodes()) {
        out << "node " << node.id << ' ' << (node.kind == PatternKind::Exact ? "exact" : "mask")
            << ' ' << node.bits.to_hex() << ' ' << node_status_name(node.status) << ' '
            << node.hit_count << ' ' << node.created_at << ' ';
        if (node.kind == PatternKind::Mask)
            out << MotivationLedger::bits_string(node.motivation);
        else
            out << '-';
        out << '\n';
    }
    for (const Arc& arc : net.arcs()) {
        out << "arc " << arc.source << ' ' << arc.target << ' ' << arc.frequency;
        for (const auto& per_actuator : arc.counts)
            for (std::int64_t c : per_actuator) out << ' ' << c;
        out << ' ' << arc_status_name(arc.status) << ' ' << arc.created_at << '\n';
    }
}

ParsedNetwork parse_network(std::istream& in, const std::string& source_name) {
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line))
        throw ParseError(source_name, 1, "empty file (expected format header)");
    ++line_no;
    if (trim(line) != kNetworkFormatLine)
        throw ParseError(source_name, line_no,
                         "unsupported format header '" + std::string(trim(line)) + "' (expected '" +
                             kNetworkFormatLine + "')");

    if (!std::getline(in, line)) throw ParseError(source_name, 2, "missing config line");
    ++line_no;
    const std::string config_prefix = "# config ";
    if (line.rfind(config_prefix, 0) != 0)
        throw ParseError(source_name, line_no, "expected '# config ...' line");

    RunConfig config;
    try {
        config = RunConfig::from_header_string(line.substr(config_prefix.size()));
        config.validate();
    } catch (const std::exception& e) {
        throw ParseError(source_name, line_no, e.what());
    }
    const auto sensing_bits = static_cast<std::size_t>(config.sensing_bits());

    std::vector<Node> nodes;
    std::vector<Arc> arcs;
    bool saw_arc = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::istringstream fields{line};
        std::string tag;
        fields >> tag;
        try {
            if (tag == "node") {
                if (saw_arc) throw std::invalid_argument("node line after arc lines");
                Node node;
                std::string kind, hex, status, motivation;
                if (!(fields >> node.id >> kind >> hex >> status >> node.hit_count >>
                      node.created_at >> motivation))
                    throw std::invalid_argument("malformed node line");
                if (kind == "exact")
                    node.kind = PatternKind::Exact;
                else if (kind == "mask")
                    node.kind = PatternKind::Mask;
                else
                    throw std::invalid_argument("unknown node kind '" + kind + "'");
                node.bits = BitVec::from_hex(hex, sensing_bits);
                node.status = node_status_from(status);
                if (node.kind == PatternKind::Mask) {
                    if (motivation.size() != 5)
                        throw std::invalid_argument("mask node needs a 5-bit motivation");
                    node.motivation = 0;
                    for (std::size_t i = 0; i < 5; ++i)
                        if (motivation[i] == '1')
                            node.motivation |= static_cast<std::uint8_t>(1u << i);
                } else {
                    node.motivation = 0xff;
                }
                if (node.id != static_cast<int>(nodes.size()))
                    throw std::invalid_argument("node ids must appear in order from 0");
                nodes.push_back(std::move(node));
            } else if (tag == "arc") {
                saw_arc = true;
                Arc arc;
                if (!(fields >> arc.source >> arc.target >> arc.frequency))
                    throw std::invalid_argument("malformed arc line");
                for (auto& per_actuator : arc.counts)
                    for (std::int64_t& c : per_actuator)
                        if (!(fields >> c)) throw std::invalid_argument("arc needs 12 counts");
                std::string status;
                if (!(fields >> status >> arc.created_at))
                    throw std::invalid_argument("malformed arc line");
                arc.status = arc_status_from(status);
                arcs.push_back(arc);
            } else {
                throw std::invalid_argument("unknown line tag '" + tag + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(source_name, line_no, e.what());
        }
    }

    try {
        return ParsedNetwork{config,
                             RepresentationNetwork::from_parts(config.thresholds, std::move(nodes),
                                                               std::move(arcs))};
    } catch (const std::invalid_argument& e) {
        throw ParseError(source_name, line_no, e.what());
    }
}

nlohmann::json metrics_to_json(const RunMetrics& m) {
    nlohmann::json j;
    j["format"] = "feedgame-metrics";
    j["version"] = 1;
    j["iterations"] = m.iterations;
    j["num_nodes"] = m.num_nodes;
    j["num_arcs"] = m.num_arcs;
    j["facts"] = m.facts;
    nlohmann::json histogram = nlohmann::json::object();
    for (const auto& [code, count] : m.arc_histogram) histogram[code_str(code)] = count;
    j["arc_histogram"] = std::move(histogram);
    if (m.att)
        j["att"] = *m.att;
    else
        j["att"] = nullptr;
    j["loop_total"] = m.tables.loop_total;
    j["transition_total"] = m.tables.transition_total;
    nlohmann::json loops = nlohmann::json::object();
    for (const auto& [code, rel] : m.tables.loops) loops[code_str(code)] = rel;
    j["loops"] = std::move(loops);
    nlohmann::json transitions = nlohmann::json::object();
    for (const auto& [pair, rel] : m.tables.transitions)
        transitions[code_str(pair.first) + "-" + code_str(pair.second)] = rel;
    j["transitions"] = std::move(transitions);
    j["clustering"] = m.clustering_final;
    nlohmann::json ctl = nlohmann::json::array();
    for (const auto& [iter, value] : m.clustering_timeline)
        ctl.push_back(nlohmann::json::array({iter, value}));
    j["clustering_timeline"] = std::move(ctl);
    nlohmann::json ftl = nlohmann::json::array();
    for (const auto& [iter, value] : m.facts_timeline)
        ftl.push_back(nlohmann::json::array({iter, value}));
    j["facts_timeline"] = std::move(ftl);
    nlohmann::json subnets = nlohmann::json::array();
    for (const SubnetInfo& s : m.subnets) {
        subnets.push_back({{"motivation", MotivationLedger::bits_string(s.motivation)},
                           {"mask_node", s.mask_node},
                           {"nodes", s.node_count},
                           {"arcs", s.arc_count},
                           {"clustering", s.clustering}});
    }
    j["subnets"] = std::move(subnets);
    return j;
}

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace

std::string metrics_tables_text(const RunMetrics& m) {
    std::ostringstream out;
    out << "loops (relative frequency)\n";
    std::vector<std::pair<int, double>> loops(m.tables.loops.begin(), m.tables.loops.end());
    std::sort(loops.begin(), loops.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [code, rel] : loops)
        out << "  " << code_str(code) << "-" << code_str(code) << "  " << fixed4(rel) << '\n';
    out << "  total  " << fixed4(m.tables.loop_total) << '\n';

    out << "transitions (relative frequency)\n";
    std::vector<std::pair<std::pair<int, int>, double>> trans(m.tables.transitions.begin(),
                                                              m.tables.transitions.end());
    std::sort(trans.begin(), trans.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [pair, rel] : trans)
        out << "  " << code_str(pair.first) << "-" << code_str(pair.second) << "  " << fixed4(rel)
            << '\n';
    out << "  total  " << fixed4(m.tables.transition_total) << '\n';

    out << "arcs of final representation by closure state\n";
    std::vector<std::pair<int, std::int64_t>> hist(m.arc_histogram.begin(), m.arc_histogram.end());
    std::sort(hist.begin(), hist.end(),
              [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [code, count] : hist) out << "  " << code_str(code) << "  " << count << '\n';
    out << "  num.arcs  " << m.num_arcs << '\n';
    out << "facts: " << m.facts << '\n';
    if (m.att)
        out << "average time per transition: " << fixed2(*m.att) << '\n';
    else
        out << "average time per transition: undefined (no transitions)\n";
    out << "clustering coefficient: " << fixed4(m.clustering_final) << '\n';
    return out.str();
}

void write_dynamics_rows(std::ostream& out, const DynamicsNetwork& dynamics) {
    out << "# feedgame-dynamics v1\n";
    out << "# from\tto\tcount\trelative_frequency\n";
    for (const auto& row : dynamics.export_rows())
        out << code_str(row.from) << '\t' << code_str(row.to) << '\t' << row.count << '\t'
            << format_number(row.relative_frequency) << '\n';
}

}  // namespace feedgame
