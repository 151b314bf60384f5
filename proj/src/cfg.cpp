#include "psr2/cfg.hpp"

#include <algorithm>
#include <functional>

namespace psr2 {

namespace {

struct Loop {
    int head;                    // continue target, -1 until known (for-post)
    std::vector<int> breaks;
    std::vector<int> continues;
};

class Builder {
public:
    RawCfg cfg;
    std::vector<bool> exit_flag;

    int add(RawNode n, const std::vector<int>& preds) {
        int id = static_cast<int>(cfg.nodes.size());
        cfg.nodes.push_back(n);
        exit_flag.push_back(false);
        for (int p : preds) edge(p, id);
        return id;
    }

    void edge(int a, int b) {
        if (std::find(cfg.edges.begin(), cfg.edges.end(), std::make_pair(a, b)) == cfg.edges.end())
            cfg.edges.emplace_back(a, b);
    }

    std::vector<int> block(const std::vector<Stmt>& stmts, std::vector<int> preds) {
        for (const auto& s : stmts) preds = stmt(s, preds);
        return preds;
    }

    std::vector<int> stmt(const Stmt& s, const std::vector<int>& preds) {
        switch (s.kind) {
            case StmtKind::VarDecl:
            case StmtKind::Assign:
            case StmtKind::ExprStmt:
            case StmtKind::Emit:
                return {add({RawNode::Kind::Statement, &s, nullptr, s.loc}, preds)};
            case StmtKind::Require: {
                int n = add({RawNode::Kind::Statement, &s, nullptr, s.loc}, preds);
                exit_flag[n] = true;
                if (s.op == "revert") return {};
                return {n};
            }
            case StmtKind::Return: {
                int n = add({RawNode::Kind::Statement, &s, nullptr, s.loc}, preds);
                exit_flag[n] = true;
                return {};
            }
            case StmtKind::If: {
                int c = add({RawNode::Kind::Condition, &s, &*s.cond, s.cond->loc}, preds);
                auto out = block(s.body, {c});
                auto other = s.has_else ? block(s.else_body, {c}) : std::vector<int>{c};
                out.insert(out.end(), other.begin(), other.end());
                return out;
            }
            case StmtKind::While: {
                int c = add({RawNode::Kind::Condition, &s, &*s.cond, s.cond->loc}, preds);
                loops_.push_back({c, {}, {}});
                auto body_out = block(s.body, {c});
                Loop loop = std::move(loops_.back());
                loops_.pop_back();
                for (int p : body_out) edge(p, c);
                for (int p : loop.continues) edge(p, c);
                std::vector<int> out{c};
                out.insert(out.end(), loop.breaks.begin(), loop.breaks.end());
                return out;
            }
            case StmtKind::For: {
                auto after_init = block(s.init, preds);
                int c = add({RawNode::Kind::Condition, &s, s.cond ? &*s.cond : nullptr, s.cond ? s.cond->loc : s.loc},
                            after_init);
                loops_.push_back({-1, {}, {}});
                auto body_out = block(s.body, {c});
                Loop loop = std::move(loops_.back());
                loops_.pop_back();
                body_out.insert(body_out.end(), loop.continues.begin(), loop.continues.end());
                auto post_out = block(s.post, body_out);
                for (int p : post_out) edge(p, c);
                std::vector<int> out;
                if (s.cond) out.push_back(c);
                out.insert(out.end(), loop.breaks.begin(), loop.breaks.end());
                return out;
            }
            case StmtKind::Block:
                return block(s.body, preds);
            case StmtKind::Break:
                if (!loops_.empty()) loops_.back().breaks.insert(loops_.back().breaks.end(), preds.begin(), preds.end());
                return {};
            case StmtKind::Continue:
                if (!loops_.empty()) {
                    Loop& l = loops_.back();
                    if (l.head >= 0)
                        for (int p : preds) edge(p, l.head);
                    else
                        l.continues.insert(l.continues.end(), preds.begin(), preds.end());
                }
                return {};
            case StmtKind::Placeholder:
                return preds;
        }
        return preds;
    }

private:
    std::vector<Loop> loops_;
};

}  // namespace

std::vector<int> RawCfg::successors(int n) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges)
        if (a == n) out.push_back(b);
    return out;
}

std::vector<std::pair<int, int>> find_back_edges(int node_count, const std::vector<std::pair<int, int>>& edges,
                                                 int entry) {
    std::vector<std::vector<int>> succ(node_count);
    for (const auto& [a, b] : edges) succ[a].push_back(b);
    std::vector<int> state(node_count, 0);   // 0 new, 1 on stack, 2 done
    std::vector<std::pair<int, int>> back;
    std::function<void(int)> dfs = [&](int n) {
        state[n] = 1;
        for (int m : succ[n]) {
            if (state[m] == 1) back.emplace_back(n, m);
            else if (state[m] == 0) dfs(m);
        }
        state[n] = 2;
    };
    if (entry >= 0 && entry < node_count) dfs(entry);
    std::sort(back.begin(), back.end());
    return back;
}

RawCfg build_cfg(const std::vector<Stmt>& body) {
    Builder b;
    auto tail = b.block(body, {});
    if (b.cfg.nodes.empty()) {
        RawCfg cfg;
        cfg.nodes.push_back({RawNode::Kind::Empty, nullptr, nullptr, {}});
        cfg.exits = {0};
        return cfg;
    }
    for (int t : tail) b.exit_flag[t] = true;

    RawCfg& raw = b.cfg;
    int n = static_cast<int>(raw.nodes.size());
    bool entry_has_pred = std::any_of(raw.edges.begin(), raw.edges.end(), [](auto& e) { return e.second == 0; });

    // Renumber: optional synthetic entry first, then reachable nodes in creation order.
    std::vector<std::vector<int>> succ(n);
    for (const auto& [a, c] : raw.edges) succ[a].push_back(c);
    std::vector<bool> reach(n, false);
    std::vector<int> stack{0};
    reach[0] = true;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : succ[x])
            if (!reach[y]) reach[y] = true, stack.push_back(y);
    }

    RawCfg out;
    std::vector<int> map(n, -1);
    if (entry_has_pred) out.nodes.push_back({RawNode::Kind::Entry, nullptr, nullptr, raw.nodes[0].loc});
    for (int i = 0; i < n; ++i) {
        if (!reach[i]) {
            const SourceLoc& l = raw.nodes[i].loc;
            out.diagnostics.push_back(std::to_string(l.line) + ":" + std::to_string(l.column) +
                                      ": unreachable statement pruned");
            continue;
        }
        map[i] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(raw.nodes[i]);
        if (b.exit_flag[i]) out.exits.push_back(map[i]);
    }
    if (entry_has_pred) out.edges.emplace_back(0, map[0]);
    for (const auto& [a, c] : raw.edges)
        if (map[a] >= 0 && map[c] >= 0) out.edges.emplace_back(map[a], map[c]);
    out.entry = 0;
    out.back_edges = find_back_edges(static_cast<int>(out.nodes.size()), out.edges, out.entry);
    return out;
}

}  // namespace psr2
