#include "psr2/report.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace psr2 {

namespace {

using nlohmann::json;

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

const char* yes(bool b) { return b ? "true" : "false"; }

void text_finding(std::ostringstream& os, const std::string& file, const Finding& f) {
    const SourceLoc& head = f.evidence.empty() ? SourceLoc{} : f.evidence.front().loc;
    os << file << ":" << head.line << ":" << head.column << ": " << upper(to_string(f.verdict)) << " "
       << to_string(f.rule) << " in " << f.signature;
    if (!f.variable.empty()) os << " on '" << f.variable << "'";
    os << "\n";
    for (const auto& e : f.evidence) {
        std::string kind = e.kind;
        kind.resize(5, ' ');
        os << "  " << kind << " " << file << ":" << e.loc.line << ":" << e.loc.column << "\n";
    }
    if (!f.call_kind.empty()) os << "  call  " << f.call_kind << " -> " << f.call_target << "\n";
    if (f.context)
        os << "  tgt=" << to_string(f.context->tgt) << " dep=" << yes(f.context->dep)
           << " interm=" << yes(f.context->interm) << "\n";
}

json finding_json(const Finding& f) {
    json j;
    j["verdict"] = to_string(f.verdict);
    j["rule"] = to_string(f.rule);
    j["function"] = f.function;
    j["variable"] = f.variable.empty() ? json(nullptr) : json(f.variable);
    if (f.context)
        j["context"] = {{"tgt", to_string(f.context->tgt)}, {"dep", f.context->dep}, {"interm", f.context->interm}};
    else
        j["context"] = nullptr;
    j["evidence"] = json::array();
    for (const auto& e : f.evidence) j["evidence"].push_back({{"kind", e.kind}, {"line", e.loc.line}, {"col", e.loc.column}});
    return j;
}

}  // namespace

std::string render_text(const std::vector<FileResult>& results, bool verbose) {
    std::ostringstream os;
    std::size_t total = 0;
    int suppressed = 0;
    for (const auto& r : results) {
        for (const auto& f : r.findings) text_finding(os, r.file, f);
        if (verbose)
            for (const auto& f : r.low) text_finding(os, r.file, f);
        total += r.findings.size();
        suppressed += r.suppressed_low;
    }
    os << total << (total == 1 ? " finding" : " findings") << " (" << suppressed << " low suppressed)\n";
    return os.str();
}

json file_json(const FileResult& r, bool verbose) {
    json j;
    j["schema"] = 1;
    j["file"] = r.file;
    j["findings"] = json::array();
    for (const auto& f : r.findings) j["findings"].push_back(finding_json(f));
    j["suppressed_low"] = r.suppressed_low;
    j["errors"] = r.errors;
    if (verbose) {
        j["low"] = json::array();
        for (const auto& f : r.low) j["low"].push_back(finding_json(f));
    }
    return j;
}

std::string render_json(const std::vector<FileResult>& results, bool verbose) {
    json out;
    if (results.size() == 1) {
        out = file_json(results.front(), verbose);
    } else {
        out = json::array();
        for (const auto& r : results) out.push_back(file_json(r, verbose));
    }
    return out.dump(2) + "\n";
}

json repository_json(const Analysis& a) {
    const SemanticRepository& repo = a.repo;
    json j;
    j["schema"] = 1;
    j["file"] = a.file;
    j["functions"] = json::array();
    for (const auto& f : repo.functions)
        j["functions"].push_back({{"id", f.id},
                                  {"name", f.name},
                                  {"role", to_string(f.role)},
                                  {"contract", f.contract},
                                  {"constructor", f.is_constructor}});
    j["variables"] = json::array();
    for (const auto& v : repo.variables) {
        json acc = json::object();
        for (const auto& [fid, kind] : v.accesses) acc[std::to_string(fid)] = to_string(kind);
        const char* mut = v.mutability == VarMutability::Constant    ? "constant"
                          : v.mutability == VarMutability::Immutable ? "immutable"
                                                                     : "mutable";
        j["variables"].push_back({{"id", v.id},
                                  {"name", v.name},
                                  {"type", v.type.str()},
                                  {"mutability", mut},
                                  {"contract", v.contract},
                                  {"accesses", acc}});
    }
    j["calls"] = json::array();
    for (const auto& c : repo.calls)
        j["calls"].push_back({{"id", c.id},
                              {"line", c.loc.line},
                              {"col", c.loc.column},
                              {"kind", to_string(c.kind)},
                              {"tgt", to_string(c.tgt)},
                              {"deps", c.deps},
                              {"returns_checked_hint", c.returns_checked_hint},
                              {"function", c.enclosing_function},
                              {"target", c.target_text},
                              {"inlined_from", c.inlined_from < 0 ? json(nullptr) : json(c.inlined_from)}});
    json kw = json::object();
    for (const auto& g : repo.keywords.groups) kw[to_string(g.role)] = g.substrings;
    j["keywords"] = kw;
    return j;
}

}  // namespace psr2
