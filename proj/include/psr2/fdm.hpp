#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psr2/gsam.hpp"

namespace psr2 {

struct ContextAnnotation {
    CallTarget tgt = CallTarget::Stored;
    bool dep = false;
    bool interm = false;

    bool operator==(const ContextAnnotation&) const = default;
};

enum class RiskLevel { Low, Medium, High };

const char* to_string(RiskLevel r);   // "high" | "medium" | "low"

enum class Mode { Full, GsamOnly, ScamOnly };

const char* to_string(Mode m);        // "full" | "gsam_only" | "scam_only"

struct EvidenceItem {
    std::string kind;   // read | call | write
    SourceLoc loc;
};

struct EvidenceReport {
    RiskLevel verdict = RiskLevel::Low;
    Rule rule = Rule::AtomicityViolation;
    int function = -1;
    int variable = -1;
    int call_fact = -1;
    std::vector<int> path;
    std::optional<ContextAnnotation> context;   // absent in the ablation modes
    std::vector<EvidenceItem> evidence;
};

struct FusionOutput {
    std::vector<EvidenceReport> verdicts;   // High and Medium
    std::vector<EvidenceReport> low;        // Low-graded alerts, itemised on request
    int suppressed = 0;
    Mode mode = Mode::Full;
};

class DanglingFact : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Calls that can hand control to arbitrary code (send/transfer only forward a
// 2300 gas stipend).
bool yields_control(CallKind kind);

ContextAnnotation annotate_context(const SuspiciousPath& alert, const SemanticRepository& repo);

RiskLevel decide_level(const ContextAnnotation& c);
std::pair<RiskLevel, std::optional<EvidenceReport>> decide(const SuspiciousPath& alert, const ContextAnnotation& c);

struct FuseOptions {
    Mode mode = Mode::Full;
    // scam_only restricted to explicit low-level call syntax.
    bool explicit_calls_only = false;
};

FusionOutput fuse(const GraphOutput& graph, const SemanticRepository& repo, const FuseOptions& options = {});

}  // namespace psr2
