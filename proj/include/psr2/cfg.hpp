#pragma once

#include <string>
#include <utility>
#include <vector>

#include "psr2/ast.hpp"

namespace psr2 {

// Statement-level control flow graph of one function body.
struct RawNode {
    enum class Kind { Statement, Condition, Entry, Empty };

    Kind kind = Kind::Statement;
    const Stmt* stmt = nullptr;   // Statement, or the If/While/For owning a Condition
    const Expr* cond = nullptr;   // Condition (null for a `for` without condition)
    SourceLoc loc;
};

struct RawCfg {
    std::vector<RawNode> nodes;
    std::vector<std::pair<int, int>> edges;   // insertion (source) order
    std::vector<std::pair<int, int>> back_edges;
    int entry = 0;
    std::vector<int> exits;                   // ascending
    std::vector<std::string> diagnostics;     // pruned unreachable statements

    std::vector<int> successors(int n) const;
};

// require/assert get an extra exit (the failure branch) and fall through;
// return and revert end the walk. Unreachable statements are dropped.
RawCfg build_cfg(const std::vector<Stmt>& body);

// Back edges found by a depth-first search from `entry` following edges in order.
std::vector<std::pair<int, int>> find_back_edges(int node_count, const std::vector<std::pair<int, int>>& edges,
                                                 int entry);

}  // namespace psr2
