#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "psr2/metrics.hpp"
#include "psr2/report.hpp"
#include "../support.hpp"

using namespace psr2;
namespace fs = std::filesystem;

namespace {

AnalysisConfig config_for(std::vector<std::string> inputs, Mode mode = Mode::Full) {
    AnalysisConfig c;
    c.inputs = std::move(inputs);
    c.mode = mode;
    c.jobs = 1;
    return c;
}

FileResult run_one(const std::string& path, Mode mode = Mode::Full) {
    return analyze(config_for({path}, mode)).at(0);
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("text report for a high finding") {
    auto r = run_one(testing::corpus_path("dao_withdraw.sol"));
    REQUIRE(r.findings.size() == 1);
    auto text = render_text({r});
    CHECK(contains(text, "HIGH atomicity_violation in withdraw(uint256) on 'balances'"));
    CHECK(contains(text, "read  " + r.file + ":11:9"));
    CHECK(contains(text, "call  " + r.file + ":12:23"));
    CHECK(contains(text, "write " + r.file + ":13:9"));
    CHECK(contains(text, "tgt=user_input dep=true interm=true"));
    CHECK(contains(text, "1 finding (0 low suppressed)"));
}

TEST_CASE("text report without findings") {
    auto r = run_one(testing::corpus_path("safe_cei.sol"));
    CHECK(r.findings.empty());
    CHECK(render_text({r}) == "0 findings (0 low suppressed)\n");
    CHECK(render_text({}) == "0 findings (0 low suppressed)\n");
}

TEST_CASE("json report for a finding") {
    auto r = run_one(testing::corpus_path("dao_withdraw.sol"));
    auto j = file_json(r);
    CHECK(j["schema"] == 1);
    REQUIRE(j["findings"].size() == 1);
    const auto& f = j["findings"][0];
    for (const char* key : {"verdict", "rule", "variable", "evidence", "context", "function"}) {
        CAPTURE(key);
        CHECK(f.contains(key));
    }
    CHECK(f["verdict"] == "high");
    CHECK(f["rule"] == "atomicity_violation");
    CHECK(f["variable"] == "balances");
    CHECK(f["context"]["tgt"] == "user_input");
    CHECK(f["context"]["dep"] == true);
    CHECK(f["evidence"].size() == 3);
    CHECK(f["evidence"][1]["kind"] == "call");
    CHECK(f["evidence"][1]["line"] == 12);

    auto parsed = nlohmann::json::parse(render_json({r}));
    CHECK(parsed.is_object());
    auto both = nlohmann::json::parse(render_json({r, r}));
    CHECK(both.is_array());
    CHECK(both.size() == 2);
}

TEST_CASE("ablation findings carry no context") {
    auto r = run_one(testing::corpus_path("dao_withdraw.sol"), Mode::GsamOnly);
    REQUIRE_FALSE(r.findings.empty());
    CHECK(file_json(r)["findings"][0]["context"].is_null());
}

TEST_CASE("verbose output lists low verdicts") {
    auto c = config_for({testing::corpus_path("benign_guarded.sol")});
    c.verbose = true;
    auto r = analyze(c).at(0);
    CHECK(r.findings.empty());
    CHECK(r.suppressed_low == 1);
    REQUIRE(r.low.size() == 1);
    CHECK(file_json(r, true)["low"].size() == 1);
    CHECK(contains(render_text({r}, true), "LOW atomicity_violation"));
}

TEST_CASE("a missing file is an error result") {
    auto r = run_one("definitely/missing.sol");
    CHECK_FALSE(r.ok);
    REQUIRE(r.errors.size() == 1);
    CHECK(contains(r.errors[0], "missing.sol"));
    CHECK(file_json(r)["errors"].size() == 1);
}

TEST_CASE("a rejected file reports the frontend error") {
    auto r = run_one(testing::fixture_path("rejected/assembly.sol"));
    CHECK_FALSE(r.ok);
    REQUIRE(r.errors.size() == 1);
    CHECK(contains(r.errors[0], ":5:9: error: "));
}

TEST_CASE("positive threshold") {
    auto r = run_one(testing::corpus_path("constant_target.sol"));
    REQUIRE_FALSE(r.findings.empty());
    CHECK(r.findings[0].verdict == RiskLevel::Medium);
    CHECK_FALSE(r.positive(RiskLevel::High));
    CHECK(r.positive(RiskLevel::Medium));
}

TEST_CASE("results keep the input order") {
    std::vector<std::string> inputs;
    for (const auto& f : corpus_files(testing::source_dir() + "/corpus")) inputs.push_back(testing::corpus_path(f));
    auto c = config_for(inputs);
    c.jobs = 4;
    auto results = analyze(c);
    REQUIRE(results.size() == inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) CHECK(results[i].file == display_path(inputs[i]));
}

TEST_CASE("display paths") {
    CHECK(display_path("corpus/./dao_withdraw.sol") == "corpus/dao_withdraw.sol");
    auto abs = (fs::current_path() / "x" / "y.sol").string();
    CHECK(display_path(abs) == "x/y.sol");
}

TEST_CASE("metric formulas") {
    auto m = MetricsSummary::from_counts(2, 0, 0, 2);
    CHECK(*m.precision == 1.0);
    CHECK(*m.recall == 1.0);
    CHECK(*m.f1 == 1.0);
    CHECK(*m.fpr == 0.0);
    CHECK(*m.specificity == 1.0);

    auto none = MetricsSummary::from_counts(0, 0, 0, 0);
    CHECK_FALSE(none.precision);
    CHECK_FALSE(none.fpr);
    CHECK(format_ratio(none.precision) == "null");
    CHECK(format_ratio(0.5) == "0.5000");

    auto skew = MetricsSummary::from_counts(3, 1, 1, 5);
    CHECK(*skew.precision == doctest::Approx(0.75));
    CHECK(*skew.recall == doctest::Approx(0.75));
    CHECK(*skew.f1 == doctest::Approx(0.75));
    CHECK(*skew.fpr == doctest::Approx(1.0 / 6));
}

TEST_CASE("labels parsing") {
    auto labels = parse_labels(
        "# path\tclass\texpected\n"
        "\n"
        "a.sol\tvulnerable\tatomicity_violation,withdraw;unchecked_call,pay\n"
        "b.sol\tsafe\n");
    REQUIRE(labels.size() == 2);
    CHECK(labels[0].cls == SampleClass::Vulnerable);
    REQUIRE(labels[0].expected.size() == 2);
    CHECK(labels[0].expected[1] == std::pair<std::string, std::string>{"unchecked_call", "pay"});
    CHECK(labels[1].cls == SampleClass::Safe);
    CHECK(labels[1].expected.empty());

    CHECK_THROWS(parse_labels("a.sol\tmaybe\n"));
    CHECK_THROWS(parse_labels("a.sol\tvulnerable\n"));
    CHECK_THROWS(parse_labels("a.sol\tsafe\tatomicity_violation,f\n"));
    CHECK_THROWS(parse_labels("a.sol\n"));
}

TEST_CASE("bundled labels cover the corpus") {
    auto labels = load_labels(testing::corpus_path("labels.tsv"));
    CHECK(labels.size() == 20);
    int vulnerable = 0;
    for (const auto& l : labels) vulnerable += l.cls == SampleClass::Vulnerable;
    CHECK(vulnerable == 10);
}

TEST_CASE("an unlabeled corpus file is rejected") {
    auto dir = fs::temp_directory_path() / "psr2_unlabeled_corpus";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::copy_file(testing::corpus_path("dao_withdraw.sol"), dir / "dao_withdraw.sol");
    fs::copy_file(testing::corpus_path("safe_cei.sol"), dir / "extra.sol");
    auto labels = parse_labels("dao_withdraw.sol\tvulnerable\tatomicity_violation,withdraw\n");
    CHECK_THROWS_AS(bench(dir.string(), labels, AnalysisConfig{}), MissingLabel);
    fs::remove(dir / "extra.sol");
    auto r = bench(dir.string(), labels, AnalysisConfig{});
    CHECK(r.summary.tp == 1);
    CHECK(render_verdicts(r) == "dao_withdraw.sol\tpositive\n");
    fs::remove_all(dir);
}
