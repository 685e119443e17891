#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "feedgame/analyze.hpp"
#include "feedgame/expect.hpp"
#include "feedgame/runner.hpp"
#include "feedgame/serialization.hpp"
#include "feedgame/sweep.hpp"
#include "feedgame/text.hpp"

namespace {

using namespace feedgame;

// Staged command-line values; applied over defaults and any --config file
// so explicit flags always win.
struct ConfigFlags {
    std::optional<std::string> config_file;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> iterations;
    std::optional<std::string> focus;
    std::optional<double> focus_high;
    std::optional<double> focus_low;
    std::optional<std::string> focus_high_set;
    std::optional<std::int64_t> theta_n;
    std::optional<std::int64_t> theta_f;
    std::optional<double> theta_p;
    std::optional<std::int64_t> theta_e;
    std::optional<int> world;
    std::optional<int> eye;
    std::optional<std::string> mouth;
    std::optional<std::int64_t> snapshot_every;
    std::optional<bool> include_zero_motivation;
    std::optional<std::string> rng;

    void register_options(CLI::App& app) {
        app.add_option("--config", config_file, "plain-text key = value config file");
        app.add_option("--seed", seed, "run seed");
        app.add_option("--iterations", iterations, "iterations per run (default 15000)");
        app.add_option("--focus", focus,
                       "focus policy: a fixed value in [0,1], 'var', or 'var:HIGH:LOW:SET'");
        app.add_option("--focus-high", focus_high, "variable policy: high focus value");
        app.add_option("--focus-low", focus_low, "variable policy: low focus value");
        app.add_option("--focus-high-set", focus_high_set,
                       "variable policy: comma-separated closure codes that get the high value");
        app.add_option("--theta-n", theta_n, "node promotion threshold (default 8)");
        app.add_option("--theta-f", theta_f, "arc frequency threshold (default 8)");
        app.add_option("--theta-p", theta_p, "codifiability probability threshold (default 0.5)");
        app.add_option("--theta-e", theta_e, "extraction period (default 500)");
        app.add_option("--world", world, "world side length (default 7)");
        app.add_option("--eye", eye, "eye side length, odd (default 5)");
        app.add_option("--mouth", mouth, "mouth position 'x,y' (default bottom centre)");
        app.add_option("--snapshot-every", snapshot_every,
                       "clustering snapshot cadence (default 500)");
        app.add_option("--include-zero-motivation", include_zero_motivation,
                       "also ledger the all-zero motivation (default off)");
        app.add_option("--rng", rng, "random generator name (default pcg32)");
    }

    RunConfig build() const {
        RunConfig cfg;
        if (config_file) cfg.apply_config_file(*config_file);
        if (seed) cfg.seed = *seed;
        if (iterations) cfg.iterations = *iterations;
        if (focus) cfg.apply_key_value("focus", *focus);
        if (focus_high) cfg.policy.high_value = *focus_high;
        if (focus_low) cfg.policy.low_value = *focus_low;
        if (focus_high_set) cfg.apply_key_value("focus_high_set", *focus_high_set);
        if (theta_n) cfg.thresholds.node_hits = *theta_n;
        if (theta_f) cfg.thresholds.arc_frequency = *theta_f;
        if (theta_p) cfg.thresholds.probability = *theta_p;
        if (theta_e) cfg.extraction_period = *theta_e;
        if (world) cfg.world_size = *world;
        if (eye) cfg.eye_size = *eye;
        if (mouth) cfg.apply_key_value("mouth", *mouth);
        if (snapshot_every) cfg.snapshot_every = *snapshot_every;
        if (include_zero_motivation) cfg.include_zero_motivation = *include_zero_motivation;
        if (rng) cfg.rng_name = *rng;
        cfg.validate();
        return cfg;
    }
};

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    for (const std::string& part : split(text, ',')) {
        const std::string_view sv = trim(part);
        if (sv.empty()) continue;
        const std::size_t dots = sv.find("..");
        if (dots != std::string_view::npos) {
            const std::int64_t lo = parse_int64(sv.substr(0, dots), "seed range start");
            const std::int64_t hi = parse_int64(sv.substr(dots + 2), "seed range end");
            if (hi < lo) throw UsageError("seed range end before start");
            for (std::int64_t s = lo; s <= hi; ++s)
                seeds.push_back(static_cast<std::uint64_t>(s));
        } else {
            seeds.push_back(static_cast<std::uint64_t>(parse_int64(sv, "seed")));
        }
    }
    if (seeds.empty()) throw UsageError("empty seed list");
    return seeds;
}

std::vector<PolicySpec> parse_policy_list(const std::string& text) {
    std::vector<PolicySpec> policies;
    for (const std::string& part : split(text, ',')) {
        const std::string token{trim(part)};
        if (token.empty()) continue;
        FocusPolicy policy;
        if (token == "var" || token == "variable")
            policy = FocusPolicy::variable();
        else if (token.find(':') != std::string::npos)
            policy = FocusPolicy::parse(token);
        else
            policy = FocusPolicy::fixed(parse_number(token, "focus value"));
        policies.push_back(PolicySpec{policy_label(policy), policy});
    }
    if (policies.empty()) throw UsageError("empty focus list");
    return policies;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

int do_run(const ConfigFlags& flags, const std::string& out_dir, bool quiet) {
    const RunConfig cfg = flags.build();
    const RunResult result = run(cfg);

    if (!out_dir.empty()) {
        const std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        {
            std::ostringstream log;
            write_run_log(log, cfg, result.records);
            write_file(dir / "runlog.txt", log.str());
        }
        {
            std::ostringstream net;
            write_network(net, cfg, result.pipeline.net());
            write_file(dir / "network.txt", net.str());
        }
        write_file(dir / "metrics.json", metrics_to_json(result.metrics).dump(2) + "\n");
        write_file(dir / "tables.txt", metrics_tables_text(result.metrics));
        {
            std::ostringstream dyn;
            write_dynamics_rows(dyn, result.pipeline.dynamics());
            write_file(dir / "dynamics.tsv", dyn.str());
        }
    }

    if (!quiet) {
        const RunMetrics& m = result.metrics;
        std::cout << "seed " << cfg.seed << "  policy " << cfg.policy.serialize() << "  iterations "
                  << cfg.iterations << "\n";
        std::cout << "nodes " << m.num_nodes << "  arcs " << m.num_arcs << "  facts " << m.facts
                  << "\n";
        std::cout << "loop_total " << format_number(m.tables.loop_total) << "  transition_total "
                  << format_number(m.tables.transition_total) << "\n";
        if (m.att) std::cout << "att " << format_number(*m.att) << "\n";
        std::cout << "clustering " << format_number(m.clustering_final) << "\n";
        if (!out_dir.empty()) std::cout << "outputs in " << out_dir << "\n";
    }
    return 0;
}

int do_sweep(const ConfigFlags& flags, const std::string& focus_list, const std::string& seed_list,
             int threads, const std::string& out_dir) {
    const RunConfig base = flags.build();
    const std::vector<PolicySpec> policies = parse_policy_list(focus_list);
    const std::vector<std::uint64_t> seeds = parse_seed_list(seed_list);
    const SweepReport report = run_sweep(base, policies, seeds, threads);

    const std::string tables = report_tables_text(report);
    if (!out_dir.empty()) {
        const std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
        write_file(dir / "tables.txt", tables);
    }
    std::cout << tables;
    if (!report.failures.empty()) {
        std::cerr << report.failures.size() << " run(s) failed:\n";
        for (const std::string& f : report.failures) std::cerr << "  " << f << "\n";
        return 2;
    }
    return 0;
}

int do_analyze(const std::string& input, const std::string& out_dir) {
    const RunMetrics metrics = analyze_file(input);
    const nlohmann::json j = metrics_to_json(metrics);
    if (!out_dir.empty()) {
        const std::filesystem::path dir(out_dir);
        std::filesystem::create_directories(dir);
        write_file(dir / "metrics.json", j.dump(2) + "\n");
        write_file(dir / "tables.txt", metrics_tables_text(metrics));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int do_compare(const ConfigFlags& flags, const std::string& report_path,
               const std::string& focus_list, const std::string& seed_list, int threads,
               const std::string& expect_path, const std::string& out_dir) {
    SweepReport report;
    if (!report_path.empty()) {
        std::ifstream in(report_path);
        if (!in) throw std::runtime_error("cannot open " + report_path);
        nlohmann::json j;
        try {
            in >> j;
            report = report_from_json(j);
        } catch (const std::exception& e) {
            throw ParseError(report_path, 0, e.what());
        }
    } else {
        report = run_sweep(flags.build(), parse_policy_list(focus_list),
                           parse_seed_list(seed_list), threads);
        if (!out_dir.empty()) {
            const std::filesystem::path dir(out_dir);
            std::filesystem::create_directories(dir);
            write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
            write_file(dir / "tables.txt", report_tables_text(report));
        }
    }

    if (expect_path.empty()) {
        std::cout << report_tables_text(report);
        return 0;
    }

    std::ifstream rules(expect_path);
    if (!rules) throw std::runtime_error("cannot open " + expect_path);
    const std::vector<ExpectationResult> results = evaluate_expectations(report, rules);
    int failed = 0;
    for (const ExpectationResult& r : results) {
        std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.rule << "   [" << r.detail << "]\n";
        if (!r.passed) ++failed;
    }
    std::cout << results.size() - static_cast<std::size_t>(failed) << "/" << results.size()
              << " expectations hold\n";
    return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"feedgame: deterministic feed-game simulator with a closure-mechanism agent"};
    app.require_subcommand(1);

    ConfigFlags run_flags;
    std::string run_out;
    bool run_quiet = false;
    CLI::App* cmd_run = app.add_subcommand("run", "run one game and write its artifacts");
    run_flags.register_options(*cmd_run);
    cmd_run->add_option("--out", run_out, "output directory");
    cmd_run->add_flag("--quiet", run_quiet, "suppress the stdout summary");

    ConfigFlags sweep_flags;
    std::string sweep_focus = "0,0.25,0.5,0.75,var";
    std::string sweep_seeds = "1..10";
    std::string sweep_out;
    int sweep_threads = 1;
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "run a policy x seed cross product and aggregate");
    sweep_flags.register_options(*cmd_sweep);
    cmd_sweep->add_option("--focus-list", sweep_focus, "comma-separated focus policies");
    cmd_sweep->add_option("--seeds", sweep_seeds, "seed list: '1..10' or '1,5,9'");
    cmd_sweep->add_option("--threads", sweep_threads, "parallel runs (default 1)");
    cmd_sweep->add_option("--out", sweep_out, "output directory");

    std::string analyze_input;
    std::string analyze_out;
    CLI::App* cmd_analyze =
        app.add_subcommand("analyze", "recompute metrics from a run log or network snapshot");
    cmd_analyze->add_option("input", analyze_input, "runlog.txt or network.txt")->required();
    cmd_analyze->add_option("--out", analyze_out, "output directory");

    ConfigFlags compare_flags;
    std::string compare_report;
    std::string compare_focus = "0,0.25,0.5,0.75,var";
    std::string compare_seeds = "1..10";
    std::string compare_expect;
    std::string compare_out;
    int compare_threads = 1;
    CLI::App* cmd_compare =
        app.add_subcommand("compare", "evaluate expectations against a sweep report");
    compare_flags.register_options(*cmd_compare);
    cmd_compare->add_option("--report", compare_report, "existing report.json (skips the sweep)");
    cmd_compare->add_option("--focus-list", compare_focus, "comma-separated focus policies");
    cmd_compare->add_option("--seeds", compare_seeds, "seed list: '1..10' or '1,5,9'");
    cmd_compare->add_option("--threads", compare_threads, "parallel runs (default 1)");
    cmd_compare->add_option("--expect", compare_expect, "expectation rules file");
    cmd_compare->add_option("--out", compare_out, "output directory for the sweep report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_run->parsed()) return do_run(run_flags, run_out, run_quiet);
        if (cmd_sweep->parsed())
            return do_sweep(sweep_flags, sweep_focus, sweep_seeds, sweep_threads, sweep_out);
        if (cmd_analyze->parsed()) return do_analyze(analyze_input, analyze_out);
        if (cmd_compare->parsed())
            return do_compare(compare_flags, compare_report, compare_focus, compare_seeds,
                              compare_threads, compare_expect, compare_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
