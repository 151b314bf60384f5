#include "psr2/fdm.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace psr2 {

namespace {

void check_ids(const SuspiciousPath& a, const SemanticRepository& repo) {
    auto bad = [](int id, std::size_t n) { return id < 0 || static_cast<std::size_t>(id) >= n; };
    if (bad(a.call_fact, repo.calls.size()))
        throw DanglingFact("alert references unknown call fact " + std::to_string(a.call_fact));
    if (bad(a.function, repo.functions.size()))
        throw DanglingFact("alert references unknown function " + std::to_string(a.function));
    if (bad(a.variable, repo.variables.size()))
        throw DanglingFact("alert references unknown variable " + std::to_string(a.variable));
    if (a.labels.size() != a.path.size() || a.locs.size() != a.path.size())
        throw DanglingFact("alert path and labels disagree");
    for (auto e : a.evidence)
        if (e >= a.path.size()) throw DanglingFact("alert evidence outside its path");
}

std::vector<EvidenceItem> evidence_of(const SuspiciousPath& a) {
    static const char* atomic[] = {"read", "call", "write"};
    static const char* unchecked[] = {"call", "write"};
    std::vector<EvidenceItem> out;
    for (std::size_t k = 0; k < a.evidence.size(); ++k)
        out.push_back({a.rule == Rule::AtomicityViolation ? atomic[k % 3] : unchecked[k % 2], a.locs[a.evidence[k]]});
    return out;
}

EvidenceReport report_of(const SuspiciousPath& a, RiskLevel level) {
    EvidenceReport r;
    r.verdict = level;
    r.rule = a.rule;
    r.function = a.function;
    r.variable = a.variable;
    r.call_fact = a.call_fact;
    r.path = a.path;
    r.evidence = evidence_of(a);
    return r;
}

std::size_t call_offset(const EvidenceReport& r) {
    for (const auto& e : r.evidence)
        if (e.kind == "call") return e.loc.byte_offset;
    return 0;
}

// Keeps one report per (function, variable): highest verdict, then the
// earliest call, then the atomicity rule.
std::vector<EvidenceReport> dedup(std::vector<EvidenceReport> in) {
    std::map<std::pair<int, int>, EvidenceReport> best;
    auto better = [](const EvidenceReport& a, const EvidenceReport& b) {
        if (a.verdict != b.verdict) return a.verdict > b.verdict;
        if (call_offset(a) != call_offset(b)) return call_offset(a) < call_offset(b);
        return a.rule == Rule::AtomicityViolation && b.rule != Rule::AtomicityViolation;
    };
    for (auto& r : in) {
        auto key = std::make_pair(r.function, r.variable);
        auto it = best.find(key);
        if (it == best.end()) best.emplace(key, std::move(r));
        else if (better(r, it->second)) it->second = std::move(r);
    }
    std::vector<EvidenceReport> out;
    for (auto& [k, r] : best) out.push_back(std::move(r));
    return out;
}

void order(std::vector<EvidenceReport>& v) {
    auto key = [](const EvidenceReport& r) {
        const SourceLoc& l = r.evidence.empty() ? SourceLoc{} : r.evidence.front().loc;
        return std::make_tuple(-static_cast<int>(r.verdict), l.line, l.column, r.function, static_cast<int>(r.rule),
                               r.variable);
    };
    std::stable_sort(v.begin(), v.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
}

bool explicit_kind(CallKind k) {
    return k == CallKind::LowLevelCall || k == CallKind::LowLevelDelegatecall || k == CallKind::LowLevelStaticcall ||
           k == CallKind::Send || k == CallKind::Transfer;
}

}  // namespace

const char* to_string(RiskLevel r) {
    switch (r) {
        case RiskLevel::High: return "high";
        case RiskLevel::Medium: return "medium";
        case RiskLevel::Low: return "low";
    }
    return "?";
}

const char* to_string(Mode m) {
    switch (m) {
        case Mode::Full: return "full";
        case Mode::GsamOnly: return "gsam_only";
        case Mode::ScamOnly: return "scam_only";
    }
    return "?";
}

bool yields_control(CallKind kind) { return kind != CallKind::Send && kind != CallKind::Transfer; }

ContextAnnotation annotate_context(const SuspiciousPath& a, const SemanticRepository& repo) {
    check_ids(a, repo);
    const CallFact& fact = repo.calls[a.call_fact];
    ContextAnnotation c;
    c.tgt = fact.tgt;
    if (a.rule == Rule::AtomicityViolation) {
        c.dep = fact.deps.count(a.variable) > 0;
        bool between = a.evidence.size() == 3 && a.evidence[0] < a.evidence[1] && a.evidence[1] < a.evidence[2] &&
                       a.labels[a.evidence[0]].kind == LabelKind::SLOAD &&
                       a.labels[a.evidence[0]].var == a.variable &&
                       a.labels[a.evidence[2]].kind == LabelKind::SSTORE && a.labels[a.evidence[2]].var == a.variable;
        c.interm = between && yields_control(fact.kind) && !lock_protected(a.labels, a.evidence[1]);
    } else {
        std::size_t m = a.evidence.empty() ? 0 : a.evidence[0];
        auto w = check_unchecked(a.labels, m, fact);
        c.dep = w.has_value();
        c.interm = w.has_value() && a.labels[w->second].kind == LabelKind::SSTORE;
    }
    return c;
}

RiskLevel decide_level(const ContextAnnotation& c) {
    if (c.dep && c.interm) return c.tgt == CallTarget::Fixed ? RiskLevel::Medium : RiskLevel::High;
    return RiskLevel::Low;
}

std::pair<RiskLevel, std::optional<EvidenceReport>> decide(const SuspiciousPath& alert, const ContextAnnotation& c) {
    RiskLevel level = decide_level(c);
    if (level == RiskLevel::Low) return {level, std::nullopt};
    EvidenceReport r = report_of(alert, level);
    r.context = c;
    return {level, r};
}

FusionOutput fuse(const GraphOutput& graph, const SemanticRepository& repo, const FuseOptions& options) {
    FusionOutput out;
    out.mode = options.mode;
    std::vector<EvidenceReport> all;

    switch (options.mode) {
        case Mode::Full:
            for (const auto& a : graph.alerts) {
                ContextAnnotation c = annotate_context(a, repo);
                auto [level, report] = decide(a, c);
                if (report) {
                    all.push_back(std::move(*report));
                } else {
                    EvidenceReport low = report_of(a, level);
                    low.context = c;
                    all.push_back(std::move(low));
                }
            }
            break;
        case Mode::GsamOnly:
            for (const auto& a : graph.alerts) {
                check_ids(a, repo);
                all.push_back(report_of(a, RiskLevel::High));
            }
            break;
        case Mode::ScamOnly:
            for (const auto& f : repo.calls) {
                if (options.explicit_calls_only && !explicit_kind(f.kind)) continue;
                for (int v : f.deps) {
                    auto it = repo.variables[v].accesses.find(f.enclosing_function);
                    if (it == repo.variables[v].accesses.end() || it->second == AccessKind::Read) continue;
                    EvidenceReport r;
                    r.verdict = RiskLevel::High;
                    r.function = f.enclosing_function;
                    r.variable = v;
                    r.call_fact = f.id;
                    r.evidence = {{"call", f.loc}};
                    all.push_back(std::move(r));
                    break;
                }
            }
            break;
    }

    for (auto& r : dedup(std::move(all))) {
        if (r.verdict == RiskLevel::Low) {
            ++out.suppressed;
            out.low.push_back(std::move(r));
        } else {
            out.verdicts.push_back(std::move(r));
        }
    }
    order(out.verdicts);
    order(out.low);
    return out;
}

}  // namespace psr2
