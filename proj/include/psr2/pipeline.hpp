#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "psr2/fdm.hpp"

namespace psr2 {

struct AnalysisConfig {
    std::vector<std::string> inputs;
    Mode mode = Mode::Full;
    bool atomicity = true;
    bool unchecked = true;
    PathBounds bounds;
    RiskLevel positive_threshold = RiskLevel::High;
    std::string keywords_path;          // empty: built-in defaults
    bool verbose = false;
    bool explicit_calls_only = false;
    unsigned jobs = 0;                  // 0: hardware concurrency
};

// Parsed, resolved and profiled file. The repository points into `table`,
// so the two travel together.
struct Analysis {
    std::string file;
    SymbolTable table;
    SemanticRepository repo;
};

// Path as shown in reports: relative to the working directory when possible.
std::string display_path(const std::string& path);

// Throws FrontendError or std::runtime_error (I/O).
std::unique_ptr<Analysis> load_analysis(const std::string& path, const KeywordSet& keywords);

struct Finding {
    RiskLevel verdict = RiskLevel::Low;
    Rule rule = Rule::AtomicityViolation;
    std::string function;     // bare name
    std::string signature;
    std::string variable;
    std::optional<ContextAnnotation> context;
    std::vector<EvidenceItem> evidence;
    std::string call_kind;
    std::string call_target;
};

struct FileResult {
    std::string file;
    bool ok = true;                      // false when the file failed to load
    std::vector<Finding> findings;       // High / Medium
    std::vector<Finding> low;            // filled only when verbose
    int suppressed_low = 0;
    bool truncated = false;
    std::vector<std::string> errors;
    std::vector<std::string> diagnostics;

    // Any finding at or above `threshold`.
    bool positive(RiskLevel threshold) const;
};

FileResult analyze_file(const std::string& path, const AnalysisConfig& config, const KeywordSet& keywords);

// Files are processed concurrently; results keep the input order.
std::vector<FileResult> analyze(const AnalysisConfig& config);

KeywordSet keywords_for(const AnalysisConfig& config);

}  // namespace psr2
