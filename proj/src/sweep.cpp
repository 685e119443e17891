#include "feedgame/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

#include "feedgame/runner.hpp"
#include "feedgame/serialization.hpp"
#include "feedgame/text.hpp"

namespace feedgame {

std::string policy_label(const FocusPolicy& policy) {
    if (policy.mode == FocusPolicy::Mode::Variable) return "var";
    return "f" + format_number(policy.fixed_value);
}

std::vector<PolicySpec> default_policy_set() {
    std::vector<PolicySpec> policies;
    for (double v : {0.0, 0.25, 0.5, 0.75}) {
        FocusPolicy p = FocusPolicy::fixed(v);
        policies.push_back(PolicySpec{policy_label(p), p});
    }
    FocusPolicy var = FocusPolicy::variable();
    policies.push_back(PolicySpec{policy_label(var), var});
    return policies;
}

Aggregate aggregate_of(const std::vector<double>& values) {
    Aggregate a;
    a.n = static_cast<int>(values.size());
    if (a.n == 0) return a;
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / a.n;
    if (a.n >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - a.mean) * (v - a.mean);
        a.stddev = std::sqrt(ss / (a.n - 1));
    }
    return a;
}

namespace {

PolicyStats aggregate_policy(const std::vector<RunMetrics>& runs) {
    PolicyStats stats;
    auto collect = [&](const char* name, auto getter) {
        std::vector<double> values;
        for (const RunMetrics& m : runs) {
            if (auto v = getter(m)) values.push_back(*v);
        }
        stats.scalars[name] = aggregate_of(values);
    };
    using Opt = std::optional<double>;
    collect("loop_total", [](const RunMetrics& m) { return Opt(m.tables.loop_total); });
    collect("transition_total",
            [](const RunMetrics& m) { return Opt(m.tables.transition_total); });
    collect("att", [](const RunMetrics& m) { return m.att; });
    collect("facts", [](const RunMetrics& m) { return Opt(static_cast<double>(m.facts)); });
    collect("clustering", [](const RunMetrics& m) { return Opt(m.clustering_final); });
    collect("num_nodes", [](const RunMetrics& m) { return Opt(static_cast<double>(m.num_nodes)); });
    collect("num_arcs", [](const RunMetrics& m) { return Opt(static_cast<double>(m.num_arcs)); });
    collect("subnets", [](const RunMetrics& m) {
        std::int64_t nontrivial = 0;
        for (const SubnetInfo& s : m.subnets)
            if (s.node_count > 1) ++nontrivial;
        return Opt(static_cast<double>(nontrivial));
    });

    // Per-cell tables: a run without the cell contributes 0, so means are
    // comparable across policies.
    std::set<int> loop_keys;
    std::set<std::pair<int, int>> transition_keys;
    std::set<int> arc_keys;
    for (const RunMetrics& m : runs) {
        for (const auto& [k, v] : m.tables.loops) loop_keys.insert(k);
        for (const auto& [k, v] : m.tables.transitions) transition_keys.insert(k);
        for (const auto& [k, v] : m.arc_histogram) arc_keys.insert(k);
    }
    for (int key : loop_keys) {
        std::vector<double> values;
        for (const RunMetrics& m : runs) {
            auto it = m.tables.loops.find(key);
            values.push_back(it == m.tables.loops.end() ? 0.0 : it->second);
        }
        stats.loops[key] = aggregate_of(values);
    }
    for (const auto& key : transition_keys) {
        std::vector<double> values;
        for (const RunMetrics& m : runs) {
            auto it = m.tables.transitions.find(key);
            values.push_back(it == m.tables.transitions.end() ? 0.0 : it->second);
        }
        stats.transitions[key] = aggregate_of(values);
    }
    for (int key : arc_keys) {
        std::vector<double> values;
        for (const RunMetrics& m : runs) {
            auto it = m.arc_histogram.find(key);
            values.push_back(it == m.arc_histogram.end() ? 0.0
                                                         : static_cast<double>(it->second));
        }
        stats.arcs[key] = aggregate_of(values);
    }
    return stats;
}

}  // namespace

SweepReport run_sweep(const RunConfig& base, const std::vector<PolicySpec>& policies,
                      const std::vector<std::uint64_t>& seeds, int threads) {
    if (policies.empty()) throw UsageError("sweep needs at least one policy");
    if (seeds.empty()) throw UsageError("sweep needs at least one seed");

    SweepReport report;
    report.base = base;
    report.seeds = seeds;
    report.policies = policies;

    struct Cell {
        RunMetrics metrics;
        bool ok = false;
        std::string error;
    };
    const std::size_t total = policies.size() * seeds.size();
    std::vector<Cell> cells(total);

    auto work = [&](std::size_t index) {
        const std::size_t p = index / seeds.size();
        const std::size_t s = index % seeds.size();
        RunConfig cfg = base;
        cfg.policy = policies[p].policy;
        cfg.seed = seeds[s];
        try {
            cells[index].metrics = run(cfg).metrics;
            cells[index].ok = true;
        } catch (const std::exception& e) {
            cells[index].error = e.what();
        }
    };

    const int worker_count = std::max(1, std::min<int>(threads, static_cast<int>(total)));
    if (worker_count == 1) {
        for (std::size_t i = 0; i < total; ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w)
            workers.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= total) return;
                    work(i);
                }
            });
        for (auto& t : workers) t.join();
    }

    for (std::size_t p = 0; p < policies.size(); ++p) {
        std::vector<RunMetrics> runs;
        for (std::size_t s = 0; s < seeds.size(); ++s) {
            const Cell& cell = cells[p * seeds.size() + s];
            if (cell.ok)
                runs.push_back(cell.metrics);
            else
                report.failures.push_back(policies[p].label + "/seed=" + std::to_string(seeds[s]) +
                                          ": " + cell.error);
        }
        report.stats[policies[p].label] = aggregate_policy(runs);
    }
    return report;
}

namespace {

nlohmann::json aggregate_to_json(const Aggregate& a) {
    return {{"mean", a.mean}, {"std", a.stddev}, {"n", a.n}};
}

Aggregate aggregate_from_json(const nlohmann::json& j) {
    Aggregate a;
    a.mean = j.at("mean").get<double>();
    a.stddev = j.at("std").get<double>();
    a.n = j.at("n").get<int>();
    return a;
}

}  // namespace

nlohmann::json report_to_json(const SweepReport& report) {
    nlohmann::json j;
    j["format"] = "feedgame-sweep-report";
    j["version"] = 1;
    j["config"] = report.base.header_string();
    j["seeds"] = report.seeds;
    nlohmann::json policies = nlohmann::json::array();
    for (const PolicySpec& p : report.policies)
        policies.push_back({{"label", p.label}, {"policy", p.policy.serialize()}});
    j["policies"] = std::move(policies);
    j["failures"] = report.failures;
    nlohmann::json stats = nlohmann::json::object();
    for (const auto& [label, policy_stats] : report.stats) {
        nlohmann::json s;
        for (const auto& [name, agg] : policy_stats.scalars) s[name] = aggregate_to_json(agg);
        nlohmann::json loops = nlohmann::json::object();
        for (const auto& [code, agg] : policy_stats.loops)
            loops[code_str(code)] = aggregate_to_json(agg);
        s["loops"] = std::move(loops);
        nlohmann::json transitions = nlohmann::json::object();
        for (const auto& [pair, agg] : policy_stats.transitions)
            transitions[code_str(pair.first) + "-" + code_str(pair.second)] =
                aggregate_to_json(agg);
        s["transitions"] = std::move(transitions);
        nlohmann::json arcs = nlohmann::json::object();
        for (const auto& [code, agg] : policy_stats.arcs)
            arcs[code_str(code)] = aggregate_to_json(agg);
        s["arcs"] = std::move(arcs);
        stats[label] = std::move(s);
    }
    j["stats"] = std::move(stats);
    return j;
}

SweepReport report_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "feedgame-sweep-report" || j.value("version", 0) != 1)
        throw std::invalid_argument("not a feedgame-sweep-report v1 document");
    SweepReport report;
    report.base = RunConfig::from_header_string(j.at("config").get<std::string>());
    report.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& p : j.at("policies"))
        report.policies.push_back(PolicySpec{p.at("label").get<std::string>(),
                                             FocusPolicy::parse(p.at("policy").get<std::string>())});
    report.failures = j.at("failures").get<std::vector<std::string>>();
    for (const auto& [label, s] : j.at("stats").items()) {
        PolicyStats stats;
        for (const auto& [name, agg] : s.items()) {
            if (name == "loops") {
                for (const auto& [code, a] : agg.items())
                    stats.loops[static_cast<int>(parse_int64(code, "loop code"))] =
                        aggregate_from_json(a);
            } else if (name == "transitions") {
                for (const auto& [pair_key, a] : agg.items()) {
                    const auto parts = split(pair_key, '-');
                    if (parts.size() != 2)
                        throw std::invalid_argument("bad transition key '" + pair_key + "'");
                    stats.transitions[{static_cast<int>(parse_int64(parts[0], "transition code")),
                                       static_cast<int>(parse_int64(parts[1], "transition code"))}] =
                        aggregate_from_json(a);
                }
            } else if (name == "arcs") {
                for (const auto& [code, a] : agg.items())
                    stats.arcs[static_cast<int>(parse_int64(code, "arc code"))] =
                        aggregate_from_json(a);
            } else {
                stats.scalars[name] = aggregate_from_json(agg);
            }
        }
        report.stats[label] = std::move(stats);
    }
    return report;
}

std::string report_tables_text(const SweepReport& report) {
    std::ostringstream out;
    auto cell2 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%6.2f", v);
        return std::string(buf);
    };
    auto cell0 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%6.0f", v);
        return std::string(buf);
    };

    std::vector<std::string> labels;
    for (const PolicySpec& p : report.policies) labels.push_back(p.label);

    auto header = [&](const std::string& title) {
        out << title << '\n' << "         ";
        for (const auto& label : labels) out << ' ' << label;
        out << '\n';
    };

    // Rows sorted by the first policy's mean, descending, like the paper's
    // tables; only rows reaching 0.01 somewhere are shown.
    header("loops (mean relative frequency per policy)");
    std::set<int> loop_keys;
    for (const auto& [label, stats] : report.stats)
        for (const auto& [k, agg] : stats.loops)
            if (agg.mean >= 0.01) loop_keys.insert(k);
    std::vector<int> loop_rows(loop_keys.begin(), loop_keys.end());
    auto loop_mean = [&](const std::string& label, int key) {
        auto pit = report.stats.find(label);
        if (pit == report.stats.end()) return 0.0;
        auto it = pit->second.loops.find(key);
        return it == pit->second.loops.end() ? 0.0 : it->second.mean;
    };
    std::sort(loop_rows.begin(), loop_rows.end(), [&](int a, int b) {
        return loop_mean(labels.front(), a) > loop_mean(labels.front(), b);
    });
    for (int key : loop_rows) {
        out << code_str(key) << "-" << code_str(key) << "  ";
        for (const auto& label : labels) out << cell2(loop_mean(label, key));
        out << '\n';
    }
    out << "total    ";
    for (const auto& label : labels)
        out << cell2(report.stats.at(label).scalars.at("loop_total").mean);
    out << "\n\n";

    header("transitions (mean relative frequency per policy)");
    std::set<std::pair<int, int>> transition_keys;
    for (const auto& [label, stats] : report.stats)
        for (const auto& [k, agg] : stats.transitions)
            if (agg.mean >= 0.01) transition_keys.insert(k);
    auto transition_mean = [&](const std::string& label, const std::pair<int, int>& key) {
        auto pit = report.stats.find(label);
        if (pit == report.stats.end()) return 0.0;
        auto it = pit->second.transitions.find(key);
        return it == pit->second.transitions.end() ? 0.0 : it->second.mean;
    };
    std::vector<std::pair<int, int>> transition_rows(transition_keys.begin(),
                                                     transition_keys.end());
    std::sort(transition_rows.begin(), transition_rows.end(),
              [&](const auto& a, const auto& b) {
                  return transition_mean(labels.front(), a) > transition_mean(labels.front(), b);
              });
    for (const auto& key : transition_rows) {
        out << code_str(key.first) << "-" << code_str(key.second) << "  ";
        for (const auto& label : labels) out << cell2(transition_mean(label, key));
        out << '\n';
    }
    out << "total    ";
    for (const auto& label : labels)
        out << cell2(report.stats.at(label).scalars.at("transition_total").mean);
    out << "\n\n";

    header("arcs of final representation (mean count per policy)");
    std::set<int> arc_keys;
    for (const auto& [label, stats] : report.stats)
        for (const auto& [k, agg] : stats.arcs) arc_keys.insert(k);
    auto arc_mean = [&](const std::string& label, int key) {
        auto pit = report.stats.find(label);
        if (pit == report.stats.end()) return 0.0;
        auto it = pit->second.arcs.find(key);
        return it == pit->second.arcs.end() ? 0.0 : it->second.mean;
    };
    std::vector<int> arc_rows(arc_keys.begin(), arc_keys.end());
    std::sort(arc_rows.begin(), arc_rows.end(), [&](int a, int b) {
        return arc_mean(labels.front(), a) > arc_mean(labels.front(), b);
    });
    for (int key : arc_rows) {
        out << (key == 223 ? "223 facts" : code_str(key) + "      ") << "  ";
        for (const auto& label : labels) out << cell0(arc_mean(label, key));
        out << '\n';
    }
    out << "num.arcs   ";
    for (const auto& label : labels)
        out << cell0(report.stats.at(label).scalars.at("num_arcs").mean);
    out << "\n\n";

    out << "att        ";
    for (const auto& label : labels)
        out << cell2(report.stats.at(label).scalars.at("att").mean);
    out << '\n';
    out << "clustering ";
    for (const auto& label : labels) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%7.4f", report.stats.at(label).scalars.at("clustering").mean);
        out << buf;
    }
    out << '\n';
    return out.str();
}

}  // namespace feedgame
