// psr2: atomicity-violation analyzer for single-file Solidity sources.
#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "psr2/metrics.hpp"
#include "psr2/report.hpp"

using namespace psr2;

namespace {

const std::map<std::string, Mode> kModes = {{"full", Mode::Full},         {"gsam-only", Mode::GsamOnly},
                                            {"gsam_only", Mode::GsamOnly}, {"scam-only", Mode::ScamOnly},
                                            {"scam_only", Mode::ScamOnly}};

struct CommonFlags {
    std::string mode = "full";
    std::string pattern = "all";
    int max_paths = 10000;
    int max_len = 256;
    std::string keywords;
    std::string threshold = "high";
    bool explicit_calls_only = false;
    unsigned jobs = 0;

    void attach(CLI::App* app) {
        app->add_option("--pattern", pattern, "Detectors to run")
            ->check(CLI::IsMember({"atomicity", "unchecked", "all"}))
            ->capture_default_str();
        app->add_option("--max-paths", max_paths, "Path budget per (function, variable)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--max-len", max_len, "Maximum walk length in labeled nodes")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        app->add_option("--keywords", keywords, "Role keyword file (role = [\"substr\", ...])")
            ->check(CLI::ExistingFile);
        app->add_option("--positive-threshold", threshold, "Lowest verdict counted as a finding")
            ->check(CLI::IsMember({"high", "medium"}))
            ->capture_default_str();
        app->add_option("-j,--jobs", jobs, "Worker threads (0: one per core)");
        app->add_flag("--explicit-calls-only", explicit_calls_only)->group("");
    }

    AnalysisConfig config() const {
        AnalysisConfig c;
        if (auto it = kModes.find(mode); it != kModes.end()) c.mode = it->second;
        c.atomicity = pattern != "unchecked";
        c.unchecked = pattern != "atomicity";
        c.bounds = {max_paths, max_len};
        c.keywords_path = keywords;
        c.positive_threshold = threshold == "medium" ? RiskLevel::Medium : RiskLevel::High;
        c.explicit_calls_only = explicit_calls_only;
        c.jobs = jobs;
        return c;
    }
};

int run_analyze(const CommonFlags& flags, const std::vector<std::string>& files, const std::string& format,
                bool verbose) {
    AnalysisConfig config = flags.config();
    config.inputs = files;
    config.verbose = verbose;
    auto results = analyze(config);
    bool error = false, positive = false;
    for (const auto& r : results) {
        for (const auto& e : r.errors) std::cerr << e << "\n";
        if (verbose)
            for (const auto& d : r.diagnostics) std::cerr << d << "\n";
        error = error || !r.ok;
        positive = positive || r.positive(config.positive_threshold);
    }
    std::cout << (format == "json" ? render_json(results, verbose) : render_text(results, verbose));
    if (error) return 2;
    return positive ? 1 : 0;
}

int run_bench(const CommonFlags& flags, const std::string& corpus, const std::string& labels_path,
              bool verdicts) {
    auto labels = load_labels(labels_path);
    std::vector<Mode> modes;
    if (flags.mode == "all") modes = {Mode::Full, Mode::GsamOnly, Mode::ScamOnly};
    else modes = {kModes.at(flags.mode)};
    std::vector<BenchResult> results;
    bool error = false;
    for (Mode m : modes) {
        AnalysisConfig config = flags.config();
        config.mode = m;
        results.push_back(bench(corpus, labels, config));
        for (const auto& e : results.back().errors) std::cerr << e << "\n";
        error = error || !results.back().errors.empty();
    }
    std::cout << render_table(results);
    if (verdicts)
        for (const auto& r : results) std::cout << "\n# " << to_string(r.mode) << "\n" << render_verdicts(r);
    return error ? 2 : 0;
}

int run_dump_cfg(const CommonFlags& flags, const std::string& file, const std::string& function) {
    auto a = load_analysis(file, keywords_for(flags.config()));
    bool found = false;
    for (const auto& f : a->repo.functions) {
        if (f.short_name != function && f.name != function) continue;
        if (found) std::cout << "\n";
        std::cout << dump_cfg(build_labeled_cfg(a->table, a->repo, f.id), a->repo);
        found = true;
    }
    if (!found) {
        std::cerr << a->file << ": error: no analysed function named '" << function << "'\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detects atomicity violations (reentrancy and unchecked external calls) in Solidity sources.\n"
                 "Input is one self-contained .sol file per path; flatten imports beforehand."};
    app.require_subcommand(1);

    CommonFlags analyze_flags, bench_flags, dump_flags;
    std::vector<std::string> files;
    std::string format = "text";
    bool verbose = false;
    auto* analyze_cmd = app.add_subcommand("analyze", "Analyze source files");
    analyze_cmd->add_option("files", files, "Solidity files")->required();
    analyze_cmd->add_option("--mode", analyze_flags.mode, "Analysis mode")
        ->check(CLI::IsMember({"full", "gsam-only", "scam-only", "gsam_only", "scam_only"}))
        ->capture_default_str();
    analyze_cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    analyze_cmd->add_flag("-v,--verbose", verbose, "Itemize low verdicts and print diagnostics");
    analyze_flags.attach(analyze_cmd);

    std::string corpus, labels;
    bool verdicts = false;
    auto* bench_cmd = app.add_subcommand("bench", "Score the analyzer on a labeled corpus");
    bench_cmd->add_option("--corpus", corpus, "Directory of .sol fixtures")->required()->check(CLI::ExistingDirectory);
    bench_cmd->add_option("--labels", labels, "Labels file")->required()->check(CLI::ExistingFile);
    bench_flags.mode = "all";
    bench_cmd->add_option("--mode", bench_flags.mode, "Mode, or all for the ablation table")
        ->check(CLI::IsMember({"all", "full", "gsam-only", "scam-only", "gsam_only", "scam_only"}))
        ->capture_default_str();
    bench_cmd->add_flag("--verdicts", verdicts, "Also print the per-file verdict vector");
    bench_flags.attach(bench_cmd);

    std::string cfg_file, function;
    auto* cfg_cmd = app.add_subcommand("dump-cfg", "Print the labeled CFG of a function");
    cfg_cmd->add_option("file", cfg_file, "Solidity file")->required();
    cfg_cmd->add_option("--function", function, "Function name or signature")->required();
    cfg_cmd->add_option("--keywords", dump_flags.keywords, "Role keyword file")->check(CLI::ExistingFile);

    std::string facts_file;
    auto* facts_cmd = app.add_subcommand("dump-facts", "Print the semantic repository as JSON");
    facts_cmd->add_option("file", facts_file, "Solidity file")->required();
    facts_cmd->add_option("--keywords", dump_flags.keywords, "Role keyword file")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze_cmd) return run_analyze(analyze_flags, files, format, verbose);
        if (*bench_cmd) return run_bench(bench_flags, corpus, labels, verdicts);
        if (*cfg_cmd) return run_dump_cfg(dump_flags, cfg_file, function);
        if (*facts_cmd) {
            auto a = load_analysis(facts_file, keywords_for(dump_flags.config()));
            std::cout << repository_json(*a).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
