#include "psr2/gsam.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace psr2 {

namespace {

struct LabelCtx {
    const SymbolTable& table;
    const SemanticRepository& repo;
    const FunctionDescriptor& fd;
    const CallClassifier& cls;
};

struct BodyCtx {
    const ResolvedFunction& fn;
    const FunctionFlow& flow;
    const Expr* via;   // internal call being summarised, nullptr at top level
};

struct Micro {
    NodeLabel label;
    SourceLoc loc;
};

std::vector<int> validated_facts(const LabelCtx& lc, const BodyCtx& bc, const Expr& cond) {
    std::vector<int> out;
    std::set<int> locals = bc.flow.of(cond).locals;
    for (const auto& f : lc.repo.calls) {
        if (f.enclosing_function != lc.fd.id || f.via != bc.via) continue;
        bool hit = contains_node(cond, f.expr);
        for (int l : f.result_locals) hit = hit || locals.count(l);
        if (hit) out.push_back(f.id);
    }
    return out;
}

void label_atomic(const LabelCtx& lc, const BodyCtx& bc, const Stmt* stmt, const Expr* cond, bool inline_calls,
                  std::vector<Micro>& out);

void label_body(const LabelCtx& lc, const BodyCtx& bc, const std::vector<Stmt>& body, std::vector<Micro>& out) {
    for (const auto& s : body) {
        switch (s.kind) {
            case StmtKind::If:
            case StmtKind::While:
                label_atomic(lc, bc, &s, &*s.cond, false, out);
                label_body(lc, bc, s.body, out);
                label_body(lc, bc, s.else_body, out);
                break;
            case StmtKind::For:
                label_body(lc, bc, s.init, out);
                if (s.cond) label_atomic(lc, bc, &s, &*s.cond, false, out);
                label_body(lc, bc, s.body, out);
                label_body(lc, bc, s.post, out);
                break;
            case StmtKind::Block:
                label_body(lc, bc, s.body, out);
                break;
            case StmtKind::Break:
            case StmtKind::Continue:
            case StmtKind::Placeholder:
                break;
            default:
                label_atomic(lc, bc, &s, nullptr, false, out);
                break;
        }
    }
}

void label_atomic(const LabelCtx& lc, const BodyCtx& bc, const Stmt* stmt, const Expr* cond, bool inline_calls,
                  std::vector<Micro>& out) {
    const ResolvedContract& c = lc.table.contracts[lc.fd.contract_index];
    SourceLoc here = cond ? cond->loc : stmt->loc;
    AccessSet acc = cond ? expression_accesses(*cond) : statement_accesses(*stmt);

    for (int r : acc.reads) {
        if (c.state_vars[r].mutability != VarMutability::Mutable) continue;
        out.push_back({NodeLabel::sload(lc.repo.variable_id(lc.fd.contract_index, r)), here});
    }

    std::vector<CallSite> sites;
    auto add_sites = [&](const Expr& e) {
        auto s = lc.cls.sites(e, bc.fn);
        sites.insert(sites.end(), s.begin(), s.end());
    };
    if (cond) add_sites(*cond);
    else
        for (const auto& e : stmt->exprs) add_sites(e);

    if (inline_calls) {
        for (const auto& site : sites) {
            if (site.external || site.callee < 0) continue;
            const ResolvedFunction& callee = c.functions[site.callee];
            FunctionFlow flow(callee);
            label_body(lc, BodyCtx{callee, flow, site.expr}, callee.def.body, out);
        }
    }
    for (const auto& site : sites) {
        if (!site.external) continue;
        int id = lc.repo.find_fact(lc.fd.id, bc.via, site.expr);
        if (id >= 0) out.push_back({NodeLabel::call_of(id), site.expr->loc});
    }

    const Expr* checked = cond;
    if (!cond && stmt->kind == StmtKind::Require && stmt->op != "revert" && !stmt->exprs.empty())
        checked = &stmt->exprs[0];
    if (checked) out.push_back({NodeLabel::check(validated_facts(lc, bc, *checked)), here});

    for (int w : acc.writes) out.push_back({NodeLabel::sstore(lc.repo.variable_id(lc.fd.contract_index, w)), here});
}

std::vector<Micro> label_raw(const RawNode& node, const SymbolTable& table, const SemanticRepository& repo,
                             int function) {
    std::vector<Micro> out;
    const FunctionDescriptor& fd = repo.functions.at(function);
    const ResolvedContract& c = table.contracts[fd.contract_index];
    const ResolvedFunction& fn = c.functions[fd.function_index];
    bool atomic = node.kind == RawNode::Kind::Statement ||
                  (node.kind == RawNode::Kind::Condition && node.cond != nullptr);
    if (atomic) {
        CallClassifier cls(table, c);
        FunctionFlow flow(fn);
        LabelCtx lc{table, repo, fd, cls};
        label_atomic(lc, BodyCtx{fn, flow, nullptr}, node.stmt, node.cond, true, out);
    }
    if (out.empty()) out.push_back({NodeLabel::other(), node.loc});
    return out;
}

bool eligible_call(const NodeLabel& l, const SemanticRepository& repo) {
    return l.kind == LabelKind::CALL && returns_status(repo.calls.at(l.call).kind);
}

}  // namespace

std::vector<std::vector<int>> LabeledCfg::successors() const {
    std::vector<std::vector<int>> succ(nodes.size());
    for (const auto& [a, b] : edges) succ[a].push_back(b);
    return succ;
}

bool LabeledCfg::is_exit(int n) const { return std::find(exits.begin(), exits.end(), n) != exits.end(); }

std::vector<NodeLabel> label_node(const RawNode& node, const SymbolTable& table, const SemanticRepository& repo,
                                  int function) {
    std::vector<NodeLabel> out;
    for (auto& m : label_raw(node, table, repo, function)) out.push_back(std::move(m.label));
    return out;
}

LabeledCfg simplify(const RawCfg& raw, const SymbolTable& table, const SemanticRepository& repo, int function) {
    LabeledCfg cfg;
    cfg.function = function;
    cfg.diagnostics = raw.diagnostics;
    std::vector<int> first(raw.nodes.size()), last(raw.nodes.size());
    for (std::size_t i = 0; i < raw.nodes.size(); ++i) {
        auto micro = label_raw(raw.nodes[i], table, repo, function);
        first[i] = static_cast<int>(cfg.nodes.size());
        for (auto& m : micro) {
            int id = static_cast<int>(cfg.nodes.size());
            if (id > first[i]) cfg.edges.emplace_back(id - 1, id);
            cfg.nodes.push_back({id, std::move(m.label), m.loc});
        }
        last[i] = static_cast<int>(cfg.nodes.size()) - 1;
    }
    for (const auto& [a, b] : raw.edges) cfg.edges.emplace_back(last[a], first[b]);
    std::sort(cfg.edges.begin(), cfg.edges.end());
    cfg.edges.erase(std::unique(cfg.edges.begin(), cfg.edges.end()), cfg.edges.end());
    cfg.entry = first[raw.entry];
    for (int e : raw.exits) cfg.exits.push_back(last[e]);
    std::sort(cfg.exits.begin(), cfg.exits.end());
    cfg.back_edges = find_back_edges(static_cast<int>(cfg.nodes.size()), cfg.edges, cfg.entry);
    return cfg;
}

LabeledCfg build_labeled_cfg(const SymbolTable& table, const SemanticRepository& repo, int function) {
    const FunctionDescriptor& fd = repo.functions.at(function);
    const ResolvedFunction& fn = table.contracts[fd.contract_index].functions[fd.function_index];
    return simplify(build_cfg(fn.def.body), table, repo, function);
}

std::vector<LabeledCfg> build_all_cfgs(const SymbolTable& table, const SemanticRepository& repo) {
    std::vector<LabeledCfg> out;
    for (const auto& f : repo.functions)
        if (!f.is_constructor) out.push_back(build_labeled_cfg(table, repo, f.id));
    return out;
}

PathSet enumerate_paths(const LabeledCfg& cfg, const std::function<bool(const std::vector<int>&)>& keep,
                        const PathBounds& bounds) {
    PathSet out;
    if (cfg.nodes.empty()) return out;
    auto succ = cfg.successors();
    std::set<std::pair<int, int>> back(cfg.back_edges.begin(), cfg.back_edges.end());
    std::set<std::pair<int, int>> used;
    std::vector<int> path;
    bool stop = false;

    std::function<void(int)> dfs = [&](int n) {
        path.push_back(n);
        if (cfg.is_exit(n) && keep(path)) {
            if (static_cast<int>(out.paths.size()) >= bounds.max_paths) {
                out.truncated = true;
                stop = true;
            } else {
                out.paths.push_back(path);
            }
        }
        for (int m : succ[n]) {
            if (stop) break;
            std::pair<int, int> e{n, m};
            bool is_back = back.count(e) > 0;
            if (is_back && used.count(e)) continue;
            if (static_cast<int>(path.size()) >= bounds.max_len) {
                out.truncated = true;
                continue;
            }
            if (is_back) used.insert(e);
            dfs(m);
            if (is_back) used.erase(e);
        }
        path.pop_back();
    };
    dfs(cfg.entry);
    return out;
}

PathSet enumerate_dependent_paths(const LabeledCfg& cfg, int s, const PathBounds& bounds) {
    bool known = std::any_of(cfg.nodes.begin(), cfg.nodes.end(), [&](const CfgNode& n) {
        return (n.label.kind == LabelKind::SLOAD || n.label.kind == LabelKind::SSTORE) && n.label.var == s;
    });
    if (!known) throw InvalidVariable("variable " + std::to_string(s) + " does not occur in the graph");
    return enumerate_paths(
        cfg,
        [&](const std::vector<int>& p) {
            bool load = false, store = false;
            for (int n : p) {
                const NodeLabel& l = cfg.nodes[n].label;
                load = load || (l.kind == LabelKind::SLOAD && l.var == s);
                store = store || (l.kind == LabelKind::SSTORE && l.var == s);
            }
            return load && store;
        },
        bounds);
}

std::optional<AtomicityWitness> check_atomicity(std::span<const NodeLabel> path, int s) {
    // The earliest SLOAD enables the earliest call after it, which in turn
    // enables the earliest SSTORE after that; this triple minimises j, m, i.
    std::size_t k = path.size(), i = 0;
    while (i < k && !(path[i].kind == LabelKind::SLOAD && path[i].var == s)) ++i;
    std::size_t m = i + 1;
    while (m < k && path[m].kind != LabelKind::CALL) ++m;
    std::size_t j = m + 1;
    while (j < k && !(path[j].kind == LabelKind::SSTORE && path[j].var == s)) ++j;
    if (j >= k) return std::nullopt;
    return AtomicityWitness{i, m, j};
}

bool returns_status(CallKind kind) {
    switch (kind) {
        case CallKind::LowLevelCall:
        case CallKind::LowLevelDelegatecall:
        case CallKind::LowLevelStaticcall:
        case CallKind::Send:
            return true;
        default:
            return false;
    }
}

std::optional<std::pair<std::size_t, std::size_t>> check_unchecked(std::span<const NodeLabel> path, std::size_t m,
                                                                   const CallFact& fact) {
    if (m >= path.size() || path[m].kind != LabelKind::CALL || !returns_status(fact.kind)) return std::nullopt;
    std::size_t j = m + 1;
    bool validated = false;
    for (; j < path.size() && path[j].kind != LabelKind::SSTORE; ++j) {
        const auto& v = path[j].validates;
        if (path[j].kind == LabelKind::CHECK && std::find(v.begin(), v.end(), fact.id) != v.end()) validated = true;
    }
    if (j >= path.size()) return std::nullopt;
    if (validated && fact.returns_checked_hint) return std::nullopt;
    return std::make_pair(m, j);
}

bool lock_protected(std::span<const NodeLabel> path, std::size_t m) {
    std::set<int> candidates;
    for (std::size_t d = m + 1; d < path.size(); ++d)
        if (path[d].kind == LabelKind::SSTORE) candidates.insert(path[d].var);
    for (int g : candidates) {
        int stage = 0;   // 0: want SLOAD(g), 1: want CHECK, 2: want SSTORE(g)
        for (std::size_t a = 0; a < m && stage < 3; ++a) {
            const NodeLabel& l = path[a];
            if (stage == 0 && l.kind == LabelKind::SLOAD && l.var == g) stage = 1;
            else if (stage == 1 && l.kind == LabelKind::CHECK) stage = 2;
            else if (stage == 2 && l.kind == LabelKind::SSTORE && l.var == g) stage = 3;
        }
        if (stage == 3) return true;
    }
    return false;
}

const char* to_string(Rule r) {
    return r == Rule::AtomicityViolation ? "atomicity_violation" : "unchecked_call";
}

GraphOutput collect_graph_output(const SemanticRepository& repo, const std::vector<LabeledCfg>& cfgs,
                                 const GsamOptions& options) {
    GraphOutput out;
    using Key = std::tuple<int, int, int, std::vector<std::size_t>>;
    std::set<Key> seen;

    auto emit = [&](const LabeledCfg& cfg, Rule rule, const std::vector<int>& path, int var,
                    std::vector<std::size_t> evidence, int call) {
        std::vector<std::size_t> where;
        for (auto e : evidence) where.push_back(cfg.nodes[path[e]].loc.byte_offset);
        if (!seen.insert({static_cast<int>(rule), cfg.function, var, where}).second) return;
        SuspiciousPath sp;
        sp.rule = rule;
        sp.function = cfg.function;
        sp.path = path;
        for (int n : path) {
            sp.labels.push_back(cfg.nodes[n].label);
            sp.locs.push_back(cfg.nodes[n].loc);
        }
        sp.variable = var;
        sp.evidence = std::move(evidence);
        sp.call_fact = call;
        out.alerts.push_back(std::move(sp));
    };
    auto labels_of = [](const LabeledCfg& cfg, const std::vector<int>& path) {
        std::vector<NodeLabel> l;
        for (int n : path) l.push_back(cfg.nodes[n].label);
        return l;
    };

    for (const auto& cfg : cfgs) {
        out.diagnostics.insert(out.diagnostics.end(), cfg.diagnostics.begin(), cfg.diagnostics.end());
        if (options.atomicity) {
            std::set<int> loads, stores;
            for (const auto& n : cfg.nodes) {
                if (n.label.kind == LabelKind::SLOAD) loads.insert(n.label.var);
                if (n.label.kind == LabelKind::SSTORE) stores.insert(n.label.var);
            }
            for (int s : loads) {
                if (!stores.count(s)) continue;
                PathSet ps = enumerate_dependent_paths(cfg, s, options.bounds);
                out.truncated = out.truncated || ps.truncated;
                for (const auto& p : ps.paths) {
                    auto labels = labels_of(cfg, p);
                    if (auto w = check_atomicity(labels, s))
                        emit(cfg, Rule::AtomicityViolation, p, s, {w->i, w->m, w->j}, labels[w->m].call);
                }
            }
        }
        if (options.unchecked) {
            bool any = std::any_of(cfg.nodes.begin(), cfg.nodes.end(),
                                   [&](const CfgNode& n) { return eligible_call(n.label, repo); });
            if (!any) continue;
            PathSet ps = enumerate_paths(
                cfg,
                [&](const std::vector<int>& p) {
                    return std::any_of(p.begin(), p.end(),
                                       [&](int n) { return eligible_call(cfg.nodes[n].label, repo); });
                },
                options.bounds);
            out.truncated = out.truncated || ps.truncated;
            for (const auto& p : ps.paths) {
                auto labels = labels_of(cfg, p);
                for (std::size_t m = 0; m < labels.size(); ++m) {
                    if (!eligible_call(labels[m], repo)) continue;
                    if (auto w = check_unchecked(labels, m, repo.calls.at(labels[m].call)))
                        emit(cfg, Rule::UncheckedCall, p, labels[w->second].var, {w->first, w->second},
                             labels[m].call);
                }
            }
        }
    }

    auto key = [](const SuspiciousPath& a) {
        std::vector<std::size_t> where;
        for (auto e : a.evidence) where.push_back(a.locs[e].byte_offset);
        return std::make_tuple(a.function, static_cast<int>(a.rule), a.variable, where);
    };
    std::stable_sort(out.alerts.begin(), out.alerts.end(),
                     [&](const SuspiciousPath& a, const SuspiciousPath& b) { return key(a) < key(b); });
    return out;
}

std::string label_text(const NodeLabel& label, const SemanticRepository& repo) {
    auto var = [&](int v) { return v >= 0 && v < static_cast<int>(repo.variables.size()) ? repo.variables[v].name : "?"; };
    switch (label.kind) {
        case LabelKind::SLOAD: return "SLOAD(" + var(label.var) + ")";
        case LabelKind::SSTORE: return "SSTORE(" + var(label.var) + ")";
        case LabelKind::CALL: {
            std::string kind = label.call >= 0 && label.call < static_cast<int>(repo.calls.size())
                                   ? to_string(repo.calls[label.call].kind)
                                   : "?";
            return "CALL(" + std::to_string(label.call) + ":" + kind + ")";
        }
        case LabelKind::CHECK: return "CHECK";
        case LabelKind::OTHER: return "OTHER";
    }
    return "?";
}

std::string dump_cfg(const LabeledCfg& cfg, const SemanticRepository& repo) {
    std::ostringstream os;
    if (cfg.function >= 0) os << "function " << repo.functions.at(cfg.function).name << "\n";
    os << "entry " << cfg.entry << "\n";
    for (const auto& n : cfg.nodes)
        os << "node " << n.id << " " << label_text(n.label, repo) << " " << n.loc.line << ":" << n.loc.column << "\n";
    for (const auto& [a, b] : cfg.edges) os << "edge " << a << " " << b << "\n";
    for (int e : cfg.exits) os << "exit " << e << "\n";
    for (const auto& d : cfg.diagnostics) os << "note " << d << "\n";
    return os.str();
}

}  // namespace psr2
