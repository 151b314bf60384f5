#include "psr2/resolver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_set>

namespace psr2 {

namespace {

const std::unordered_set<std::string> kBuiltins = {
    "msg",     "block",     "tx",        "abi",    "this",   "super",        "now",
    "gasleft", "keccak256", "sha256",    "ripemd160", "ecrecover", "addmod", "mulmod",
    "selfdestruct", "blockhash", "require", "assert", "revert", "type"};

struct ContractCtx {
    const SymbolTable& table;
    const ResolvedContract& contract;
    const std::vector<const ModifierDef*>& modifiers;
};

class BodyResolver {
public:
    BodyResolver(const ContractCtx& ctx, std::vector<LocalInfo>& locals, bool in_constructor)
        : ctx_(ctx), locals_(locals), in_constructor_(in_constructor) {}

    void bind_params(const std::vector<Param>& params) { params_ = &params; }

    void push() { scopes_.emplace_back(); }
    void pop() { scopes_.pop_back(); }

    int declare(const std::string& name, const TypeName& type, const SourceLoc& loc) {
        int id = static_cast<int>(locals_.size());
        locals_.push_back(LocalInfo{name, type, loc});
        if (!name.empty()) scopes_.back()[name] = id;
        return id;
    }

    void block(std::vector<Stmt>& stmts, bool allow_placeholder) {
        push();
        for (auto& s : stmts) stmt(s, allow_placeholder);
        pop();
    }

    void stmt(Stmt& s, bool allow_placeholder) {
        switch (s.kind) {
            case StmtKind::VarDecl:
                for (auto& e : s.exprs) expr(e);
                for (auto& d : s.decls) {
                    check_type(d.type, d.loc);
                    d.local_id = declare(d.name, d.type, d.loc);
                }
                break;
            case StmtKind::Assign:
                expr(s.exprs[1]);
                expr(s.exprs[0]);
                check_lvalue(s.exprs[0]);
                break;
            case StmtKind::ExprStmt:
            case StmtKind::Return:
            case StmtKind::Require:
            case StmtKind::Emit:
                for (auto& e : s.exprs) expr(e);
                break;
            case StmtKind::Block:
                block(s.body, allow_placeholder);
                break;
            case StmtKind::If:
                expr(*s.cond);
                block(s.body, allow_placeholder);
                block(s.else_body, allow_placeholder);
                break;
            case StmtKind::While:
                expr(*s.cond);
                block(s.body, allow_placeholder);
                break;
            case StmtKind::For:
                push();
                for (auto& i : s.init) stmt(i, false);
                if (s.cond) expr(*s.cond);
                for (auto& p : s.post) stmt(p, false);
                block(s.body, allow_placeholder);
                pop();
                break;
            case StmtKind::Break:
            case StmtKind::Continue:
                break;
            case StmtKind::Placeholder:
                if (!allow_placeholder) throw ResolveError(s.loc, "placeholder '_' outside a modifier body");
                break;
        }
    }

    void expr(Expr& e) {
        switch (e.kind) {
            case ExprKind::Identifier:
                e.binding = lookup(e.text, e.loc, -1);
                return;
            case ExprKind::FunctionCall: {
                Expr& callee = e.args[0];
                if (callee.kind == ExprKind::Identifier)
                    callee.binding = lookup(callee.text, callee.loc, static_cast<int>(e.args.size()) - 1);
                else
                    expr(callee);
                for (std::size_t i = 1; i < e.args.size(); ++i) expr(e.args[i]);
                for (auto& o : e.options) expr(o.value);
                if (callee.kind == ExprKind::MemberAccess && (callee.text == "push" || callee.text == "pop"))
                    check_lvalue(callee.args[0]);
                return;
            }
            case ExprKind::UnaryOp:
                expr(e.args[0]);
                if (e.text == "++" || e.text == "--" || e.text == "delete") check_lvalue(e.args[0]);
                return;
            default:
                for (auto& a : e.args) expr(a);
                for (auto& o : e.options) expr(o.value);
                return;
        }
    }

private:
    Binding lookup(const std::string& name, const SourceLoc& loc, int arity) {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return {Binding::Kind::Local, found->second};
        }
        if (params_) {
            for (std::size_t i = 0; i < params_->size(); ++i)
                if ((*params_)[i].name == name) return {Binding::Kind::Param, static_cast<int>(i)};
        }
        const ResolvedContract& c = ctx_.contract;
        if (int v = c.find_state_var(name); v >= 0) return {Binding::Kind::StateVar, v};
        int by_name = -1;
        for (std::size_t i = 0; i < c.functions.size(); ++i) {
            const FunctionDef& f = c.functions[i].def;
            if (f.name != name || f.kind != FunctionKind::Function) continue;
            if (arity < 0 || static_cast<int>(f.params.size()) == arity) return {Binding::Kind::Function, static_cast<int>(i)};
            if (by_name < 0) by_name = static_cast<int>(i);
        }
        if (by_name >= 0) return {Binding::Kind::Function, by_name};
        for (std::size_t i = 0; i < c.events.size(); ++i)
            if (c.events[i].name == name) return {Binding::Kind::Event, static_cast<int>(i)};
        for (std::size_t i = 0; i < ctx_.table.contracts.size(); ++i)
            if (ctx_.table.contracts[i].name == name) return {Binding::Kind::Contract, static_cast<int>(i)};
        if (kBuiltins.count(name)) return {Binding::Kind::Builtin, -1};
        throw ResolveError(loc, "undeclared identifier '" + name + "'");
    }

    void check_type(const TypeName& t, const SourceLoc& loc) const {
        if (t.kind == TypeName::Kind::UserDefined && !ctx_.table.is_contract_type(t.name))
            throw ResolveError(loc, "undeclared type '" + t.name + "'");
        for (const auto& i : t.inner) check_type(i, loc);
    }

    void check_lvalue(const Expr& e) {
        if (e.kind == ExprKind::TupleExpr) {
            for (const auto& c : e.args)
                if (c.kind != ExprKind::Empty) check_lvalue(c);
            return;
        }
        const Expr* root = lvalue_root(e);
        if (!root) throw ResolveError(e.loc, "expression is not assignable");
        const Binding& b = root->binding;
        if (b.kind == Binding::Kind::StateVar) {
            const StateVarDecl& v = ctx_.contract.state_vars[b.index];
            if (v.mutability == VarMutability::Constant)
                throw ResolveError(e.loc, "cannot assign to constant '" + v.name + "'");
            if (v.mutability == VarMutability::Immutable && !in_constructor_)
                throw ResolveError(e.loc, "immutable '" + v.name + "' assigned outside the constructor");
        } else if (b.kind != Binding::Kind::Local && b.kind != Binding::Kind::Param) {
            throw ResolveError(e.loc, "expression is not assignable");
        }
    }

    const ContractCtx& ctx_;
    std::vector<LocalInfo>& locals_;
    bool in_constructor_;
    const std::vector<Param>* params_ = nullptr;
    std::vector<std::map<std::string, int>> scopes_;
};

// Replaces every Placeholder in `stmts` with a block holding `inner`.
void splice_placeholder(std::vector<Stmt>& stmts, const std::vector<Stmt>& inner, const SourceLoc& loc) {
    for (auto& s : stmts) {
        if (s.kind == StmtKind::Placeholder) {
            Stmt b;
            b.kind = StmtKind::Block;
            b.loc = loc;
            b.body = inner;
            s = std::move(b);
            continue;
        }
        splice_placeholder(s.body, inner, loc);
        splice_placeholder(s.else_body, inner, loc);
    }
}

std::vector<std::string> linearize(const SourceUnit& unit, const ContractDef& c) {
    std::vector<std::string> order;
    std::set<std::string> visiting;
    std::function<void(const ContractDef&)> visit = [&](const ContractDef& cur) {
        if (std::find(order.begin(), order.end(), cur.name) != order.end()) return;
        if (!visiting.insert(cur.name).second)
            throw ResolveError(cur.loc, "cyclic inheritance involving '" + cur.name + "'");
        for (const auto& base : cur.bases) {
            auto it = std::find_if(unit.contracts.begin(), unit.contracts.end(),
                                   [&](const ContractDef& d) { return d.name == base; });
            if (it == unit.contracts.end())
                throw ResolveError(cur.loc, "undeclared base contract '" + base + "'");
            visit(*it);
        }
        order.push_back(cur.name);
    };
    visit(c);
    return order;
}

}  // namespace

int ResolvedContract::find_state_var(const std::string& n) const {
    for (std::size_t i = 0; i < state_vars.size(); ++i)
        if (state_vars[i].name == n) return static_cast<int>(i);
    return -1;
}

const ResolvedContract* SymbolTable::find(const std::string& n) const {
    for (const auto& c : contracts)
        if (c.name == n) return &c;
    return nullptr;
}

const Expr* lvalue_root(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Identifier:
            return &e;
        case ExprKind::IndexAccess:
        case ExprKind::MemberAccess:
            return lvalue_root(e.args[0]);
        default:
            return nullptr;
    }
}

SymbolTable resolve_symbols(const SourceUnit& unit) {
    SymbolTable table;
    table.file = unit.file;

    std::map<std::string, const ContractDef*> by_name;
    for (const auto& c : unit.contracts) {
        if (!by_name.emplace(c.name, &c).second)
            throw ResolveError(c.loc, "duplicate contract name '" + c.name + "'");
        ResolvedContract rc;
        rc.name = c.name;
        rc.kind = c.kind;
        table.contracts.push_back(std::move(rc));
    }

    std::map<std::string, std::set<std::string>> ancestors;
    for (std::size_t ci = 0; ci < unit.contracts.size(); ++ci) {
        const ContractDef& c = unit.contracts[ci];
        auto lin = linearize(unit, c);
        ancestors[c.name] = std::set<std::string>(lin.begin(), lin.end() - 1);
        table.contracts[ci].linearization = std::move(lin);
        for (const auto& base : c.bases)
            table.contracts[std::distance(unit.contracts.data(), by_name.at(base))].is_leaf = false;
    }
    auto is_ancestor = [&](const std::string& a, const std::string& of) { return ancestors[of].count(a) > 0; };

    // Most-derived definition wins; two unrelated definitions are ambiguous.
    auto pick = [&](const std::vector<std::string>& definers, const SourceLoc& loc, const std::string& what) {
        std::vector<std::string> remaining;
        for (const auto& d : definers) {
            bool shadowed = std::any_of(definers.begin(), definers.end(),
                                        [&](const std::string& o) { return o != d && is_ancestor(d, o); });
            if (!shadowed) remaining.push_back(d);
        }
        if (remaining.size() > 1)
            throw ResolveError(loc, "ambiguous inherited member '" + what + "' defined in both '" + remaining[0] +
                                        "' and '" + remaining[1] + "' without an override");
        return remaining.front();
    };

    for (std::size_t ci = 0; ci < unit.contracts.size(); ++ci) {
        const ContractDef& c = unit.contracts[ci];
        ResolvedContract& rc = table.contracts[ci];

        std::map<std::string, std::vector<std::string>> fn_definers;
        std::map<std::string, std::vector<std::string>> mod_definers;
        for (const auto& name : rc.linearization) {
            const ContractDef& base = *by_name.at(name);
            for (const auto& v : base.state_vars) {
                if (rc.find_state_var(v.name) >= 0)
                    throw ResolveError(v.loc, "state variable '" + v.name + "' shadows an inherited declaration");
                rc.state_vars.push_back(v);
                rc.state_var_origin.push_back(name);
            }
            for (const auto& e : base.events) rc.events.push_back(e);
            for (const auto& f : base.functions) {
                if (c.kind == ContractKind::Contract && !f.has_body) continue;
                if (f.kind == FunctionKind::Constructor && name != c.name) continue;
                fn_definers[f.signature()].push_back(name);
            }
            for (const auto& m : base.modifiers) mod_definers[m.name].push_back(name);
        }

        std::vector<const ModifierDef*> modifiers;
        for (const auto& [mname, definers] : mod_definers) {
            const ContractDef& owner = *by_name.at(pick(definers, c.loc, mname));
            for (const auto& m : owner.modifiers)
                if (m.name == mname) modifiers.push_back(&m);
        }

        std::vector<const FunctionDef*> chosen;
        for (const auto& name : rc.linearization) {
            for (const auto& f : by_name.at(name)->functions) {
                auto it = fn_definers.find(f.signature());
                if (it == fn_definers.end()) continue;
                if (f.kind == FunctionKind::Constructor && name != c.name) continue;
                if (pick(it->second, f.loc, f.signature()) != name) continue;
                if (c.kind == ContractKind::Contract && !f.has_body) continue;
                chosen.push_back(&f);
                ResolvedFunction rf;
                rf.def = f;
                rf.def.body.clear();
                rf.declared_in = name;
                rc.functions.push_back(std::move(rf));
            }
        }

        if (c.kind == ContractKind::Interface) continue;

        ContractCtx ctx{table, rc, modifiers};
        for (std::size_t fi = 0; fi < chosen.size(); ++fi) {
            const FunctionDef& src = *chosen[fi];
            ResolvedFunction& rf = rc.functions[fi];
            bool ctor = src.kind == FunctionKind::Constructor;

            BodyResolver body_resolver(ctx, rf.locals, ctor);
            body_resolver.bind_params(src.params);
            body_resolver.push();
            for (const auto& r : src.returns)
                if (!r.name.empty()) body_resolver.declare(r.name, r.type, r.loc);
            std::vector<Stmt> body = src.body;
            body_resolver.block(body, false);

            // Innermost modifier last in the list; wrap from the inside out.
            for (auto it = src.modifiers_applied.rbegin(); it != src.modifiers_applied.rend(); ++it) {
                if (table.is_contract_type(it->name)) continue;
                auto mod = std::find_if(modifiers.begin(), modifiers.end(),
                                        [&](const ModifierDef* m) { return m->name == it->name; });
                if (mod == modifiers.end()) throw ResolveError(it->loc, "undeclared modifier '" + it->name + "'");
                const ModifierDef& m = **mod;
                if (m.params.size() != it->args.size())
                    throw ResolveError(it->loc, "wrong number of arguments for modifier '" + m.name + "'");

                std::vector<Expr> args = it->args;
                for (auto& a : args) body_resolver.expr(a);

                BodyResolver mod_resolver(ctx, rf.locals, ctor);
                mod_resolver.push();
                std::vector<Stmt> wrapped;
                for (std::size_t pi = 0; pi < m.params.size(); ++pi) {
                    Stmt bind;
                    bind.kind = StmtKind::VarDecl;
                    bind.loc = it->loc;
                    LocalDecl d{m.params[pi].name, m.params[pi].type, m.params[pi].loc, -1};
                    d.local_id = mod_resolver.declare(d.name, d.type, d.loc);
                    bind.decls.push_back(std::move(d));
                    bind.exprs.push_back(std::move(args[pi]));
                    wrapped.push_back(std::move(bind));
                }
                std::vector<Stmt> mod_body = m.body;
                mod_resolver.block(mod_body, true);
                splice_placeholder(mod_body, body, it->loc);
                for (auto& s : mod_body) wrapped.push_back(std::move(s));
                body = std::move(wrapped);
            }
            rf.def.body = std::move(body);
        }
    }
    return table;
}

}  // namespace psr2
