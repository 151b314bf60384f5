#pragma once

// Random labeled graphs and brute-force reference implementations used to
// cross-check path enumeration and the atomicity predicate.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "psr2/gsam.hpp"

namespace oracle {

using psr2::LabelKind;
using psr2::NodeLabel;

inline NodeLabel random_label(std::mt19937& rng, int vars) {
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0:
        case 1: return NodeLabel::sload(std::uniform_int_distribution<int>(0, vars - 1)(rng));
        case 2: return NodeLabel::sstore(std::uniform_int_distribution<int>(0, vars - 1)(rng));
        case 3: return NodeLabel::call_of(0);
        case 4: return NodeLabel::check();
        default: return NodeLabel::other();
    }
}

// Connected graph with node 0 as entry: every node gets one edge from an
// earlier node, plus a few random edges in either direction (loops).
inline psr2::LabeledCfg random_graph(std::mt19937& rng, int max_nodes = 12, int vars = 2) {
    psr2::LabeledCfg g;
    int n = std::uniform_int_distribution<int>(1, max_nodes)(rng);
    for (int i = 0; i < n; ++i) g.nodes.push_back({i, random_label(rng, vars), {}});
    std::set<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.insert({std::uniform_int_distribution<int>(0, i - 1)(rng), i});
    int extra = std::uniform_int_distribution<int>(0, std::min(5, n))(rng);
    for (int k = 0; k < extra && n > 1; ++k) {
        int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
        int b = std::uniform_int_distribution<int>(1, n - 1)(rng);
        if (a != b) edges.insert({a, b});
    }
    g.edges.assign(edges.begin(), edges.end());
    g.entry = 0;
    std::vector<int> out_degree(n, 0);
    for (auto& [a, b] : g.edges) ++out_degree[a];
    for (int i = 0; i < n; ++i)
        if (out_degree[i] == 0 || std::uniform_int_distribution<int>(0, 3)(rng) == 0) g.exits.push_back(i);
    g.back_edges = psr2::find_back_edges(n, g.edges, 0);
    return g;
}

// Back edges of a depth-first search from the entry, successors in edge order,
// computed with an explicit stack.
inline std::set<std::pair<int, int>> dfs_back_edges(const psr2::LabeledCfg& g) {
    int n = static_cast<int>(g.nodes.size());
    std::vector<std::vector<int>> succ(n);
    for (auto& [a, b] : g.edges) succ[a].push_back(b);
    std::vector<int> color(n, 0);
    std::set<std::pair<int, int>> back;
    std::vector<std::pair<int, std::size_t>> stack{{g.entry, 0}};
    color[g.entry] = 1;
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next == succ[node].size()) {
            color[node] = 2;
            stack.pop_back();
            continue;
        }
        int m = succ[node][next++];
        if (color[m] == 1) back.insert({node, m});
        else if (color[m] == 0) {
            color[m] = 1;
            stack.push_back({m, 0});
        }
    }
    return back;
}

// Every entry-to-exit walk (breadth first over partial walks) that uses each
// back edge at most once and has at most `max_len` nodes.
template <typename Keep>
std::set<std::vector<int>> all_walks(const psr2::LabeledCfg& g, Keep keep, int max_len) {
    auto back = dfs_back_edges(g);
    std::set<int> exits(g.exits.begin(), g.exits.end());
    std::set<std::vector<int>> out;
    std::deque<std::vector<int>> work{{g.entry}};
    while (!work.empty()) {
        std::vector<int> w = std::move(work.front());
        work.pop_front();
        if (exits.count(w.back()) && keep(w)) out.insert(w);
        if (static_cast<int>(w.size()) >= max_len) continue;
        for (auto& [a, b] : g.edges) {
            if (a != w.back()) continue;
            if (back.count({a, b})) {
                bool used = false;
                for (std::size_t k = 0; k + 1 < w.size(); ++k) used = used || (w[k] == a && w[k + 1] == b);
                if (used) continue;
            }
            auto next = w;
            next.push_back(b);
            work.push_back(std::move(next));
        }
    }
    return out;
}

// Atomicity witness by scanning every index triple in (j, m, i) order.
inline std::optional<psr2::AtomicityWitness> all_triples(const std::vector<NodeLabel>& p, int s) {
    for (std::size_t j = 0; j < p.size(); ++j)
        for (std::size_t m = 0; m < j; ++m)
            for (std::size_t i = 0; i < m; ++i)
                if (p[i].kind == LabelKind::SLOAD && p[i].var == s && p[m].kind == LabelKind::CALL &&
                    p[j].kind == LabelKind::SSTORE && p[j].var == s)
                    return psr2::AtomicityWitness{i, m, j};
    return std::nullopt;
}

inline std::vector<NodeLabel> labels_of(const psr2::LabeledCfg& g, const std::vector<int>& path) {
    std::vector<NodeLabel> out;
    for (int n : path) out.push_back(g.nodes[n].label);
    return out;
}

struct GraphCheck {
    bool enumeration_agrees = true;
    bool atomicity_agrees = true;
    std::size_t paths = 0;
};

// Cross-checks one random graph against the references for each variable.
inline GraphCheck check_graph(const psr2::LabeledCfg& g, int vars, int max_len = 40) {
    GraphCheck r;
    if (dfs_back_edges(g) != std::set<std::pair<int, int>>(g.back_edges.begin(), g.back_edges.end()))
        r.enumeration_agrees = false;
    psr2::PathBounds bounds{1000000, max_len};
    for (int s = 0; s < vars; ++s) {
        auto has = [&](const std::vector<int>& w) {
            bool load = false, store = false;
            for (int n : w) {
                load = load || (g.nodes[n].label.kind == LabelKind::SLOAD && g.nodes[n].label.var == s);
                store = store || (g.nodes[n].label.kind == LabelKind::SSTORE && g.nodes[n].label.var == s);
            }
            return load && store;
        };
        auto expected = all_walks(g, has, max_len);
        bool referenced = std::any_of(g.nodes.begin(), g.nodes.end(), [&](const psr2::CfgNode& n) {
            return (n.label.kind == LabelKind::SLOAD || n.label.kind == LabelKind::SSTORE) && n.label.var == s;
        });
        if (!referenced) continue;
        auto got = psr2::enumerate_dependent_paths(g, s, bounds);
        std::set<std::vector<int>> got_set(got.paths.begin(), got.paths.end());
        if (got.truncated || got_set.size() != got.paths.size() || got_set != expected) r.enumeration_agrees = false;
        for (const auto& p : got.paths) {
            ++r.paths;
            auto labels = labels_of(g, p);
            if (psr2::check_atomicity(labels, s) != all_triples(labels, s)) r.atomicity_agrees = false;
        }
    }
    return r;
}

}  // namespace oracle
