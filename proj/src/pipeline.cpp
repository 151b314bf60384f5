#include "psr2/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "psr2/parser.hpp"

namespace psr2 {

namespace fs = std::filesystem;

std::string display_path(const std::string& path) {
    fs::path p(path);
    if (p.is_relative()) return p.lexically_normal().generic_string();
    std::error_code ec;
    fs::path cwd = fs::current_path(ec);
    if (ec) return p.generic_string();
    fs::path rel = p.lexically_proximate(cwd);
    return rel.generic_string();
}

std::unique_ptr<Analysis> load_analysis(const std::string& path, const KeywordSet& keywords) {
    std::ifstream in(path, std::ios::binary);
    std::string shown = display_path(path);
    if (!in) throw std::runtime_error(shown + ": error: cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    auto a = std::make_unique<Analysis>();
    a->file = shown;
    a->table = resolve_symbols(parse_source(buf.str(), shown));
    a->repo = build_repository(a->table, keywords);
    return a;
}

bool FileResult::positive(RiskLevel threshold) const {
    return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.verdict >= threshold; });
}

namespace {

Finding finding_of(const EvidenceReport& r, const SemanticRepository& repo) {
    Finding f;
    f.verdict = r.verdict;
    f.rule = r.rule;
    f.function = repo.functions.at(r.function).short_name;
    f.signature = repo.functions.at(r.function).name;
    f.variable = r.variable >= 0 ? repo.variables.at(r.variable).name : "";
    f.context = r.context;
    f.evidence = r.evidence;
    if (r.call_fact >= 0) {
        const CallFact& c = repo.calls.at(r.call_fact);
        f.call_kind = to_string(c.kind);
        f.call_target = c.target_text;
    }
    return f;
}

}  // namespace

FileResult analyze_file(const std::string& path, const AnalysisConfig& config, const KeywordSet& keywords) {
    FileResult out;
    out.file = display_path(path);
    try {
        auto a = load_analysis(path, keywords);
        GsamOptions g{config.bounds, config.atomicity, config.unchecked};
        GraphOutput graph = collect_graph_output(a->repo, build_all_cfgs(a->table, a->repo), g);
        FusionOutput fused = fuse(graph, a->repo, FuseOptions{config.mode, config.explicit_calls_only});
        for (const auto& r : fused.verdicts) out.findings.push_back(finding_of(r, a->repo));
        if (config.verbose)
            for (const auto& r : fused.low) out.low.push_back(finding_of(r, a->repo));
        out.suppressed_low = fused.suppressed;
        out.truncated = graph.truncated;
        for (const auto& d : graph.diagnostics) out.diagnostics.push_back(out.file + ":" + d);
        if (graph.truncated) out.diagnostics.push_back(out.file + ": path enumeration truncated by bounds");
    } catch (const std::exception& e) {
        out.ok = false;
        out.errors.push_back(e.what());
    }
    return out;
}

KeywordSet keywords_for(const AnalysisConfig& config) {
    if (config.keywords_path.empty()) return KeywordSet::defaults();
    return load_keywords(config.keywords_path);
}

std::vector<FileResult> analyze(const AnalysisConfig& config) {
    KeywordSet keywords = keywords_for(config);
    std::vector<FileResult> results(config.inputs.size());
    unsigned workers = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(config.inputs.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < config.inputs.size();)
            results[i] = analyze_file(config.inputs[i], config, keywords);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return results;
}

}  // namespace psr2
