#include "psr2/scam.hpp"

#include "psr2/printer.hpp"

namespace psr2 {

namespace {

void collect_accesses(const std::vector<Stmt>& stmts, AccessSet& out) {
    auto merge = [&](const AccessSet& a) {
        for (int r : a.reads) out.add_read(r);
        for (int w : a.writes) out.add_write(w);
    };
    for (const auto& s : stmts) {
        switch (s.kind) {
            case StmtKind::If:
            case StmtKind::While:
                merge(expression_accesses(*s.cond));
                break;
            case StmtKind::For:
                if (s.cond) merge(expression_accesses(*s.cond));
                break;
            case StmtKind::Block:
            case StmtKind::Break:
            case StmtKind::Continue:
            case StmtKind::Placeholder:
                break;
            default:
                merge(statement_accesses(s));
                break;
        }
        collect_accesses(s.init, out);
        collect_accesses(s.body, out);
        collect_accesses(s.else_body, out);
        collect_accesses(s.post, out);
    }
}

void bound_locals(const Expr& lhs, std::set<int>& out) {
    if (lhs.kind == ExprKind::TupleExpr) {
        for (const auto& c : lhs.args) bound_locals(c, out);
        return;
    }
    if (lhs.kind == ExprKind::Identifier && lhs.binding.kind == Binding::Kind::Local) out.insert(lhs.binding.index);
}

// Locals that receive the result of `call` when it is the whole right-hand side.
std::set<int> result_locals(const Stmt& stmt, const Expr* call) {
    std::set<int> out;
    if (stmt.kind == StmtKind::VarDecl && !stmt.exprs.empty() && &stmt.exprs[0] == call) {
        for (const auto& d : stmt.decls)
            if (!d.name.empty()) out.insert(d.local_id);
    } else if (stmt.kind == StmtKind::Assign && stmt.op == "=" && &stmt.exprs[1] == call) {
        bound_locals(stmt.exprs[0], out);
    }
    return out;
}

bool checked_in(const std::vector<Stmt>& body, const FunctionFlow& flow, const Expr* call,
                const std::set<int>& results) {
    bool checked = false;
    walk_guarded(body, [&](const GuardedExpr& g) {
        if (checked || !g.is_condition) return;
        if (contains_node(*g.expr, call)) {
            checked = true;
            return;
        }
        for (int l : flow.of(*g.expr).locals)
            if (results.count(l)) checked = true;
    });
    return checked;
}

// Rewrites callee-side origins in terms of the caller: each parameter of the
// callee is replaced by the origins of the matching argument at `via`.
Origins substitute(const Origins& inner, const Expr& via, const FunctionFlow& caller) {
    Origins out;
    out.state = inner.state;
    out.sender = inner.sender;
    for (int p : inner.params) {
        std::size_t arg = static_cast<std::size_t>(p) + 1;
        if (arg < via.args.size()) out.merge(caller.of(via.args[arg]));
    }
    out.locals.clear();
    return out;
}

Origins guard_origins(const GuardedExpr& g, const FunctionFlow& flow) {
    Origins o;
    for (const Expr* e : g.guards) o.merge(flow.of(*e));
    return o;
}

class FactBuilder {
public:
    FactBuilder(const SymbolTable& table, const std::vector<FunctionDescriptor>& functions,
                const std::vector<VariableDescriptor>& vars)
        : table_(table), functions_(functions), vars_(vars) {
        for (const auto& v : vars) var_of_[{v.contract_index, v.state_index}] = v.id;
    }

    std::vector<CallFact> run() {
        for (const auto& fd : functions_) {
            const ResolvedContract& c = table_.contracts[fd.contract_index];
            CallClassifier cls(table_, c);
            const ResolvedFunction& fn = c.functions[fd.function_index];
            FunctionFlow flow(fn);
            walk_guarded(fn.def.body, [&](const GuardedExpr& g) {
                for (const auto& site : cls.sites(*g.expr, fn)) {
                    if (site.external)
                        add_direct(fd, cls, fn, flow, g, site);
                    else if (site.callee >= 0)
                        add_inlined(fd, cls, flow, g, site);
                }
            });
        }
        return std::move(facts_);
    }

private:
    std::set<int> var_ids(int ci, const std::set<int>& state) const {
        std::set<int> out;
        for (int s : state) out.insert(var_of_.at({ci, s}));
        return out;
    }

    CallTarget classify(int ci, const Origins& o) const {
        if (!o.params.empty() || o.sender) return CallTarget::UserInput;
        for (int s : o.state) {
            const VariableDescriptor& v = vars_[var_of_.at({ci, s})];
            if (v.mutability != VarMutability::Mutable) continue;
            for (const auto& [f, kind] : v.accesses)
                if (kind != AccessKind::Read && !functions_[f].is_constructor) return CallTarget::Stored;
        }
        return CallTarget::Fixed;
    }

    Origins target_origins(const CallClassifier& cls, const CallSite& site, const FunctionFlow& flow) const {
        Origins o;
        for (const Expr* t : cls.target_exprs(site)) o.merge(flow.of(*t));
        return o;
    }

    std::string target_text(const CallClassifier& cls, const CallSite& site) const {
        std::string out;
        for (const Expr* t : cls.target_exprs(site)) {
            if (!out.empty()) out += ", ";
            out += print(*t);
        }
        return out;
    }

    void add_direct(const FunctionDescriptor& fd, const CallClassifier& cls, const ResolvedFunction& fn,
                    const FunctionFlow& flow, const GuardedExpr& g, const CallSite& site) {
        CallFact f;
        f.id = static_cast<int>(facts_.size());
        f.loc = site.expr->loc;
        f.kind = site.kind;
        f.tgt = classify(fd.contract_index, target_origins(cls, site, flow));
        f.deps = compute_dependency_set(table_, fd.contract_index, fn, g, site, vars_);
        f.enclosing_function = fd.id;
        f.target_text = target_text(cls, site);
        f.expr = site.expr;
        f.result_locals = result_locals(*g.stmt, site.expr);
        f.returns_checked_hint = checked_in(fn.def.body, flow, site.expr, f.result_locals);
        facts_.push_back(std::move(f));
    }

    // External calls of an internal callee, seen from the caller at `via`.
    void add_inlined(const FunctionDescriptor& fd, const CallClassifier& cls, const FunctionFlow& caller_flow,
                     const GuardedExpr& at, const CallSite& via) {
        const ResolvedContract& c = cls.contract();
        const ResolvedFunction& callee = c.functions[via.callee];
        if (!callee.def.has_body) return;
        FunctionFlow flow(callee);
        Origins caller_guards = guard_origins(at, caller_flow);
        walk_guarded(callee.def.body, [&](const GuardedExpr& g) {
            for (const auto& site : cls.sites(*g.expr, callee)) {
                if (!site.external) continue;
                Origins used = flow.of(*site.expr);
                used.merge(guard_origins(g, flow));
                Origins deps = substitute(used, *via.expr, caller_flow);
                deps.merge(caller_guards);

                CallFact f;
                f.id = static_cast<int>(facts_.size());
                f.loc = site.expr->loc;
                f.kind = site.kind;
                f.tgt = classify(fd.contract_index, substitute(target_origins(cls, site, flow), *via.expr, caller_flow));
                f.deps = var_ids(fd.contract_index, deps.state);
                f.enclosing_function = fd.id;
                f.target_text = target_text(cls, site);
                f.inlined_from = function_id(fd.contract_index, via.callee);
                f.via = via.expr;
                f.expr = site.expr;
                f.result_locals = result_locals(*g.stmt, site.expr);
                f.returns_checked_hint = checked_in(callee.def.body, flow, site.expr, f.result_locals);
                facts_.push_back(std::move(f));
            }
        });
    }

    int function_id(int ci, int fi) const {
        for (const auto& f : functions_)
            if (f.contract_index == ci && f.function_index == fi) return f.id;
        return -1;
    }

    const SymbolTable& table_;
    const std::vector<FunctionDescriptor>& functions_;
    const std::vector<VariableDescriptor>& vars_;
    std::map<std::pair<int, int>, int> var_of_;
    std::vector<CallFact> facts_;
};

}  // namespace

const char* to_string(AccessKind kind) {
    switch (kind) {
        case AccessKind::Read: return "read";
        case AccessKind::Write: return "write";
        case AccessKind::RW: return "RW";
    }
    return "?";
}

const char* to_string(CallTarget t) {
    switch (t) {
        case CallTarget::Fixed: return "fixed";
        case CallTarget::Stored: return "stored";
        case CallTarget::UserInput: return "user_input";
    }
    return "?";
}

int SemanticRepository::variable_id(int contract_index, int state_index) const {
    auto it = var_index_.find({contract_index, state_index});
    return it == var_index_.end() ? -1 : it->second;
}

int SemanticRepository::function_id(int contract_index, int function_index) const {
    auto it = fn_index_.find({contract_index, function_index});
    return it == fn_index_.end() ? -1 : it->second;
}

int SemanticRepository::find_fact(int function, const Expr* via, const Expr* expr) const {
    for (const auto& f : calls)
        if (f.enclosing_function == function && f.via == via && f.expr == expr) return f.id;
    return -1;
}

bool analysed_contract(const ResolvedContract& c) { return c.kind == ContractKind::Contract && c.is_leaf; }

std::vector<FunctionDescriptor> profile_functions(const SymbolTable& table, const KeywordSet& keywords) {
    std::vector<FunctionDescriptor> out;
    for (std::size_t ci = 0; ci < table.contracts.size(); ++ci) {
        const ResolvedContract& c = table.contracts[ci];
        if (!analysed_contract(c)) continue;
        for (std::size_t fi = 0; fi < c.functions.size(); ++fi) {
            const FunctionDef& def = c.functions[fi].def;
            if (!def.has_body) continue;
            FunctionDescriptor d;
            d.id = static_cast<int>(out.size());
            d.name = def.signature();
            d.role = assign_role(d.name, keywords);
            d.short_name = def.name;
            d.contract = c.name;
            d.contract_index = static_cast<int>(ci);
            d.function_index = static_cast<int>(fi);
            d.is_constructor = def.kind == FunctionKind::Constructor;
            out.push_back(std::move(d));
        }
    }
    return out;
}

std::vector<VariableDescriptor> profile_state_vars(const SymbolTable& table,
                                                   const std::vector<FunctionDescriptor>& functions) {
    std::vector<VariableDescriptor> out;
    std::map<std::pair<int, int>, int> index;
    for (std::size_t ci = 0; ci < table.contracts.size(); ++ci) {
        const ResolvedContract& c = table.contracts[ci];
        if (!analysed_contract(c)) continue;
        for (std::size_t si = 0; si < c.state_vars.size(); ++si) {
            const StateVarDecl& s = c.state_vars[si];
            VariableDescriptor v;
            v.id = static_cast<int>(out.size());
            v.name = s.name;
            v.type = s.type;
            v.mutability = s.mutability;
            v.contract = c.name;
            v.contract_index = static_cast<int>(ci);
            v.state_index = static_cast<int>(si);
            v.loc = s.loc;
            index[{v.contract_index, v.state_index}] = v.id;
            out.push_back(std::move(v));
        }
    }
    for (const auto& fd : functions) {
        const ResolvedFunction& fn = table.contracts[fd.contract_index].functions[fd.function_index];
        AccessSet acc;
        collect_accesses(fn.def.body, acc);
        for (int r : acc.reads) out[index.at({fd.contract_index, r})].accesses[fd.id] = AccessKind::Read;
        for (int w : acc.writes) {
            auto& slot = out[index.at({fd.contract_index, w})].accesses;
            auto it = slot.find(fd.id);
            slot[fd.id] = it == slot.end() ? AccessKind::Write : AccessKind::RW;
        }
    }
    return out;
}

std::set<int> compute_dependency_set(const SymbolTable& table, int contract_index, const ResolvedFunction& fn,
                                     const GuardedExpr& guarded, const CallSite& site,
                                     const std::vector<VariableDescriptor>& vars) {
    (void)table;
    FunctionFlow flow(fn);
    Origins o = flow.of(*site.expr);
    o.merge(guard_origins(guarded, flow));
    std::set<int> out;
    for (const auto& v : vars)
        if (v.contract_index == contract_index && o.state.count(v.state_index)) out.insert(v.id);
    return out;
}

std::vector<CallFact> extract_call_facts(const SymbolTable& table, const std::vector<FunctionDescriptor>& functions,
                                         const std::vector<VariableDescriptor>& vars) {
    return FactBuilder(table, functions, vars).run();
}

SemanticRepository build_repository(const SymbolTable& table, const KeywordSet& keywords) {
    SemanticRepository repo;
    repo.keywords = keywords;
    repo.functions = profile_functions(table, keywords);
    repo.variables = profile_state_vars(table, repo.functions);
    repo.calls = extract_call_facts(table, repo.functions, repo.variables);
    for (const auto& v : repo.variables) repo.var_index_[{v.contract_index, v.state_index}] = v.id;
    for (const auto& f : repo.functions) repo.fn_index_[{f.contract_index, f.function_index}] = f.id;
    return repo;
}

}  // namespace psr2
