#include "psr2/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace psr2 {

namespace fs = std::filesystem;

MetricsSummary MetricsSummary::from_counts(int tp, int fp, int fn, int tn) {
    MetricsSummary m{tp, fp, fn, tn, {}, {}, {}, {}, {}};
    auto ratio = [](int num, int den) -> std::optional<double> {
        if (den <= 0) return std::nullopt;
        return static_cast<double>(num) / den;
    };
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    if (m.precision && m.recall && *m.precision + *m.recall > 0)
        m.f1 = 2 * *m.precision * *m.recall / (*m.precision + *m.recall);
    else if (m.precision && m.recall)
        m.f1 = 0.0;
    m.fpr = ratio(fp, fp + tn);
    m.specificity = ratio(tn, fp + tn);
    return m;
}

std::vector<CorpusLabel> parse_labels(const std::string& text) {
    std::vector<CorpusLabel> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw std::runtime_error("labels:" + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::string col;
        std::istringstream ls(line);
        while (std::getline(ls, col, '\t')) cols.push_back(col);
        if (cols.size() < 2 || cols.size() > 3) fail("expected path<TAB>class<TAB>expected");
        CorpusLabel l;
        l.path = cols[0];
        if (cols[1] == "vulnerable") l.cls = SampleClass::Vulnerable;
        else if (cols[1] == "safe") l.cls = SampleClass::Safe;
        else fail("unknown class '" + cols[1] + "'");
        if (cols.size() == 3) {
            std::istringstream es(cols[2]);
            std::string item;
            while (std::getline(es, item, ';')) {
                if (item.empty()) continue;
                auto comma = item.find(',');
                if (comma == std::string::npos) fail("expected rule,function in '" + item + "'");
                l.expected.emplace_back(item.substr(0, comma), item.substr(comma + 1));
            }
        }
        if ((l.cls == SampleClass::Safe) != l.expected.empty())
            fail("a sample is safe exactly when it has no expected findings");
        out.push_back(std::move(l));
    }
    return out;
}

std::vector<CorpusLabel> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": error: cannot open labels file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_labels(buf.str());
}

std::vector<std::string> corpus_files(const std::string& dir) {
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".sol") out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

BenchResult bench(const std::string& corpus_dir, const std::vector<CorpusLabel>& labels, AnalysisConfig config) {
    std::map<std::string, const CorpusLabel*> by_path;
    for (const auto& l : labels) by_path[fs::path(l.path).lexically_normal().generic_string()] = &l;

    BenchResult out;
    out.mode = config.mode;
    auto files = corpus_files(corpus_dir);
    config.inputs.clear();
    for (const auto& f : files) {
        if (!by_path.count(f)) throw MissingLabel(f + ": no entry in the labels file");
        config.inputs.push_back((fs::path(corpus_dir) / f).string());
    }
    auto results = analyze(config);
    int tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const FileResult& r = results[i];
        FileVerdict v{files[i], by_path[files[i]]->cls, r.positive(config.positive_threshold), !r.ok};
        if (!r.ok) {
            out.errors.insert(out.errors.end(), r.errors.begin(), r.errors.end());
        } else if (v.expected == SampleClass::Vulnerable) {
            (v.predicted ? tp : fn)++;
        } else {
            (v.predicted ? fp : tn)++;
        }
        out.files.push_back(v);
    }
    out.summary = MetricsSummary::from_counts(tp, fp, fn, tn);
    return out;
}

std::string format_ratio(const std::optional<double>& r) {
    if (!r) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *r);
    return buf;
}

std::string render_table(const std::vector<BenchResult>& results) {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %4s %4s %4s %4s %9s %9s %9s %9s\n", "mode", "tp", "fp", "fn", "tn",
                  "precision", "recall", "f1", "fpr");
    os << buf;
    for (const auto& r : results) {
        const MetricsSummary& m = r.summary;
        std::snprintf(buf, sizeof buf, "%-10s %4d %4d %4d %4d %9s %9s %9s %9s\n", to_string(r.mode), m.tp, m.fp, m.fn,
                      m.tn, format_ratio(m.precision).c_str(), format_ratio(m.recall).c_str(),
                      format_ratio(m.f1).c_str(), format_ratio(m.fpr).c_str());
        os << buf;
    }
    return os.str();
}

std::string render_verdicts(const BenchResult& result) {
    std::ostringstream os;
    for (const auto& f : result.files)
        os << f.path << "\t" << (f.error ? "error" : f.predicted ? "positive" : "negative") << "\n";
    return os.str();
}

}  // namespace psr2
