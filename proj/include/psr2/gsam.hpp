#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psr2/cfg.hpp"
#include "psr2/scam.hpp"

namespace psr2 {

enum class LabelKind { SLOAD, SSTORE, CALL, CHECK, OTHER };

struct NodeLabel {
    LabelKind kind = LabelKind::OTHER;
    int var = -1;                // SLOAD / SSTORE
    int call = -1;               // CALL: call fact id
    std::vector<int> validates;  // CHECK: call facts whose result the condition tests

    static NodeLabel sload(int v) { return {LabelKind::SLOAD, v, -1, {}}; }
    static NodeLabel sstore(int v) { return {LabelKind::SSTORE, v, -1, {}}; }
    static NodeLabel call_of(int c) { return {LabelKind::CALL, -1, c, {}}; }
    static NodeLabel check(std::vector<int> v = {}) { return {LabelKind::CHECK, -1, -1, std::move(v)}; }
    static NodeLabel other() { return {}; }

    bool operator==(const NodeLabel&) const = default;
};

struct CfgNode {
    int id = -1;
    NodeLabel label;
    SourceLoc loc;
};

struct LabeledCfg {
    int function = -1;
    std::vector<CfgNode> nodes;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> back_edges;
    int entry = 0;
    std::vector<int> exits;
    std::vector<std::string> diagnostics;

    std::vector<std::vector<int>> successors() const;
    bool is_exit(int n) const;
};

// Labels of one raw node in evaluation order.
std::vector<NodeLabel> label_node(const RawNode& node, const SymbolTable& table, const SemanticRepository& repo,
                                  int function);

LabeledCfg simplify(const RawCfg& raw, const SymbolTable& table, const SemanticRepository& repo, int function);

// Raw CFG + simplification for function `function` of the repository.
LabeledCfg build_labeled_cfg(const SymbolTable& table, const SemanticRepository& repo, int function);

struct PathBounds {
    int max_paths = 10000;
    int max_len = 256;
};

struct PathSet {
    std::vector<std::vector<int>> paths;   // node ids, entry to exit
    bool truncated = false;
};

class InvalidVariable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Entry-to-exit walks satisfying `keep`, depth-first with edges in order; each
// back edge is taken at most once per walk.
PathSet enumerate_paths(const LabeledCfg& cfg, const std::function<bool(const std::vector<int>&)>& keep,
                        const PathBounds& bounds);

// Walks holding at least one SLOAD(s) and one SSTORE(s).
PathSet enumerate_dependent_paths(const LabeledCfg& cfg, int s, const PathBounds& bounds);

struct AtomicityWitness {
    std::size_t i, m, j;   // 0-based positions of SLOAD(s), CALL, SSTORE(s)
    bool operator==(const AtomicityWitness&) const = default;
};

// First triple i < m < j: smallest j, then m, then i.
std::optional<AtomicityWitness> check_atomicity(std::span<const NodeLabel> path, int s);

// Call kinds whose failure is reported through a return value.
bool returns_status(CallKind kind);

// (m, j): the first SSTORE after the call at m, when the call's result is not
// validated by a CHECK in between.
std::optional<std::pair<std::size_t, std::size_t>> check_unchecked(std::span<const NodeLabel> path, std::size_t m,
                                                                   const CallFact& fact);

// The call at m runs inside a lock: some g is loaded, checked and stored
// before the call and stored again after it.
bool lock_protected(std::span<const NodeLabel> path, std::size_t m);

enum class Rule { AtomicityViolation, UncheckedCall };

const char* to_string(Rule r);

struct SuspiciousPath {
    Rule rule = Rule::AtomicityViolation;
    int function = -1;
    std::vector<int> path;
    std::vector<NodeLabel> labels;       // parallel to path
    std::vector<SourceLoc> locs;         // parallel to path
    int variable = -1;
    std::vector<std::size_t> evidence;   // positions in path: (read, call, write) or (call, write)
    int call_fact = -1;
};

struct GsamOptions {
    PathBounds bounds;
    bool atomicity = true;
    bool unchecked = true;
};

struct GraphOutput {
    std::vector<SuspiciousPath> alerts;
    bool truncated = false;
    std::vector<std::string> diagnostics;
};

GraphOutput collect_graph_output(const SemanticRepository& repo, const std::vector<LabeledCfg>& cfgs,
                                 const GsamOptions& options = {});

// Labeled CFGs of every analysed non-constructor function.
std::vector<LabeledCfg> build_all_cfgs(const SymbolTable& table, const SemanticRepository& repo);

std::string label_text(const NodeLabel& label, const SemanticRepository& repo);
std::string dump_cfg(const LabeledCfg& cfg, const SemanticRepository& repo);

}  // namespace psr2
