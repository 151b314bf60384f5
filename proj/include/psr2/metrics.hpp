#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psr2/pipeline.hpp"

namespace psr2 {

struct MetricsSummary {
    int tp = 0, fp = 0, fn = 0, tn = 0;
    // Undefined ratios (zero denominator) stay empty and print as null.
    std::optional<double> precision, recall, f1, fpr, specificity;

    static MetricsSummary from_counts(int tp, int fp, int fn, int tn);
};

enum class SampleClass { Vulnerable, Safe };

struct CorpusLabel {
    std::string path;   // relative to the corpus directory
    SampleClass cls = SampleClass::Safe;
    std::vector<std::pair<std::string, std::string>> expected;   // (rule, function)
};

class MissingLabel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// `path<TAB>class<TAB>rule,function;...` per line; `#` comments and blank
// lines are skipped. Throws std::runtime_error on malformed lines.
std::vector<CorpusLabel> parse_labels(const std::string& text);
std::vector<CorpusLabel> load_labels(const std::string& path);

struct FileVerdict {
    std::string path;
    SampleClass expected = SampleClass::Safe;
    bool predicted = false;
    bool error = false;
};

struct BenchResult {
    Mode mode = Mode::Full;
    MetricsSummary summary;
    std::vector<FileVerdict> files;   // sorted by path
    std::vector<std::string> errors;
};

// Sorted `.sol` files directly inside `dir`.
std::vector<std::string> corpus_files(const std::string& dir);

// Per-file classification of every corpus file under `config` (inputs are
// replaced by the corpus files). Throws MissingLabel for an unlabeled file.
BenchResult bench(const std::string& corpus_dir, const std::vector<CorpusLabel>& labels, AnalysisConfig config);

std::string format_ratio(const std::optional<double>& r);
std::string render_table(const std::vector<BenchResult>& results);
// `path<TAB>positive|negative` per file.
std::string render_verdicts(const BenchResult& result);

}  // namespace psr2
