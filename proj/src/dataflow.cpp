#include "psr2/dataflow.hpp"

#include <algorithm>
#include <unordered_set>

namespace psr2 {

namespace {

const std::unordered_set<std::string> kImplicitCallbackNames = {"safeTransferFrom", "_safeMint", "safeMint",
                                                                "onERC721Received"};

struct Def {
    std::vector<int> targets;
    const Expr* rhs;
};

void collect_defs(const std::vector<Stmt>& stmts, std::vector<Def>& defs);

void lvalue_locals(const Expr& lhs, std::vector<int>& out) {
    if (lhs.kind == ExprKind::TupleExpr) {
        for (const auto& c : lhs.args) lvalue_locals(c, out);
        return;
    }
    const Expr* root = lvalue_root(lhs);
    if (root && root->binding.kind == Binding::Kind::Local) out.push_back(root->binding.index);
}

void collect_def(const Stmt& s, std::vector<Def>& defs) {
    switch (s.kind) {
        case StmtKind::VarDecl:
            if (!s.exprs.empty()) {
                Def d{{}, &s.exprs[0]};
                for (const auto& l : s.decls)
                    if (l.local_id >= 0 && !l.name.empty()) d.targets.push_back(l.local_id);
                defs.push_back(std::move(d));
            }
            break;
        case StmtKind::Assign: {
            Def d{{}, &s.exprs[1]};
            lvalue_locals(s.exprs[0], d.targets);
            if (!d.targets.empty()) defs.push_back(std::move(d));
            break;
        }
        default:
            collect_defs(s.body, defs);
            collect_defs(s.else_body, defs);
            collect_defs(s.init, defs);
            collect_defs(s.post, defs);
            break;
    }
}

void collect_defs(const std::vector<Stmt>& stmts, std::vector<Def>& defs) {
    for (const auto& s : stmts) collect_def(s, defs);
}

bool is_builtin(const Expr& e, const char* name) {
    return e.kind == ExprKind::Identifier && e.binding.kind == Binding::Kind::Builtin && e.text == name;
}

enum class Mode { Read, Write, ReadWrite };

void walk_access(const Expr& e, Mode mode, AccessSet& out) {
    switch (e.kind) {
        case ExprKind::Identifier:
            if (e.binding.kind == Binding::Kind::StateVar) {
                if (mode != Mode::Write) out.add_read(e.binding.index);
                if (mode != Mode::Read) out.add_write(e.binding.index);
            }
            return;
        case ExprKind::IndexAccess:
            walk_access(e.args[0], mode, out);
            walk_access(e.args[1], Mode::Read, out);
            return;
        case ExprKind::MemberAccess:
            walk_access(e.args[0], mode, out);
            return;
        case ExprKind::FunctionCall: {
            const Expr& callee = e.args[0];
            if (callee.kind == ExprKind::MemberAccess && (callee.text == "push" || callee.text == "pop") &&
                lvalue_root(callee.args[0]))
                walk_access(callee.args[0], Mode::ReadWrite, out);
            else
                walk_access(callee, Mode::Read, out);
            for (std::size_t i = 1; i < e.args.size(); ++i) walk_access(e.args[i], Mode::Read, out);
            for (const auto& o : e.options) walk_access(o.value, Mode::Read, out);
            return;
        }
        case ExprKind::UnaryOp:
            if (e.text == "++" || e.text == "--")
                walk_access(e.args[0], Mode::ReadWrite, out);
            else if (e.text == "delete")
                walk_access(e.args[0], Mode::Write, out);
            else
                walk_access(e.args[0], Mode::Read, out);
            return;
        case ExprKind::TupleExpr:
            for (const auto& a : e.args) walk_access(a, mode, out);
            return;
        default:
            for (const auto& a : e.args) walk_access(a, Mode::Read, out);
            for (const auto& o : e.options) walk_access(o.value, Mode::Read, out);
            return;
    }
}

bool always_exits(const std::vector<Stmt>& body) {
    if (body.empty()) return false;
    const Stmt& last = body.back();
    return last.kind == StmtKind::Return || (last.kind == StmtKind::Require && last.op == "revert");
}

void walk_stmts(const std::vector<Stmt>& stmts, std::vector<const Expr*> guards,
                const std::function<void(const GuardedExpr&)>& visit) {
    for (const auto& s : stmts) {
        switch (s.kind) {
            case StmtKind::VarDecl:
            case StmtKind::Assign:
            case StmtKind::ExprStmt:
            case StmtKind::Return:
            case StmtKind::Emit:
                for (const auto& e : s.exprs) visit({&e, &s, guards, false});
                break;
            case StmtKind::Require:
                for (std::size_t i = 0; i < s.exprs.size(); ++i)
                    visit({&s.exprs[i], &s, guards, i == 0 && s.op != "revert"});
                if (s.op != "revert" && !s.exprs.empty()) guards.push_back(&s.exprs[0]);
                break;
            case StmtKind::If: {
                visit({&*s.cond, &s, guards, true});
                auto inner = guards;
                inner.push_back(&*s.cond);
                walk_stmts(s.body, inner, visit);
                walk_stmts(s.else_body, inner, visit);
                if (!s.has_else && always_exits(s.body)) guards.push_back(&*s.cond);
                break;
            }
            case StmtKind::While: {
                visit({&*s.cond, &s, guards, true});
                auto inner = guards;
                inner.push_back(&*s.cond);
                walk_stmts(s.body, inner, visit);
                break;
            }
            case StmtKind::For: {
                walk_stmts(s.init, guards, visit);
                auto inner = guards;
                if (s.cond) {
                    visit({&*s.cond, &s, guards, true});
                    inner.push_back(&*s.cond);
                }
                walk_stmts(s.body, inner, visit);
                walk_stmts(s.post, inner, visit);
                break;
            }
            case StmtKind::Block:
                walk_stmts(s.body, guards, visit);
                break;
            case StmtKind::Break:
            case StmtKind::Continue:
            case StmtKind::Placeholder:
                break;
        }
    }
}

}  // namespace

void Origins::merge(const Origins& o) {
    state.insert(o.state.begin(), o.state.end());
    params.insert(o.params.begin(), o.params.end());
    locals.insert(o.locals.begin(), o.locals.end());
    sender = sender || o.sender;
}

FunctionFlow::FunctionFlow(const ResolvedFunction& fn) : locals_(fn.locals.size()) {
    std::vector<Def> defs;
    collect_defs(fn.def.body, defs);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& d : defs) {
            Origins o = of(*d.rhs);
            for (int t : d.targets) {
                Origins& cur = locals_[t];
                auto before = std::make_tuple(cur.state.size(), cur.params.size(), cur.locals.size(), cur.sender);
                cur.merge(o);
                if (before != std::make_tuple(cur.state.size(), cur.params.size(), cur.locals.size(), cur.sender))
                    changed = true;
            }
        }
    }
}

Origins FunctionFlow::of(const Expr& e) const {
    Origins o;
    collect(e, o);
    return o;
}

void FunctionFlow::collect(const Expr& e, Origins& out) const {
    if (e.kind == ExprKind::Identifier) {
        switch (e.binding.kind) {
            case Binding::Kind::StateVar: out.state.insert(e.binding.index); break;
            case Binding::Kind::Param: out.params.insert(e.binding.index); break;
            case Binding::Kind::Local:
                out.locals.insert(e.binding.index);
                out.merge(locals_.at(e.binding.index));
                break;
            default: break;
        }
        return;
    }
    if (e.kind == ExprKind::MemberAccess && ((is_builtin(e.args[0], "msg") && e.text == "sender") ||
                                             (is_builtin(e.args[0], "tx") && e.text == "origin"))) {
        out.sender = true;
        return;
    }
    for (const auto& a : e.args) collect(a, out);
    for (const auto& o : e.options) collect(o.value, out);
}

void AccessSet::add_read(int v) {
    if (std::find(reads.begin(), reads.end(), v) == reads.end()) reads.push_back(v);
}

void AccessSet::add_write(int v) {
    if (std::find(writes.begin(), writes.end(), v) == writes.end()) writes.push_back(v);
}

AccessSet expression_accesses(const Expr& e) {
    AccessSet out;
    walk_access(e, Mode::Read, out);
    return out;
}

AccessSet statement_accesses(const Stmt& s) {
    AccessSet out;
    switch (s.kind) {
        case StmtKind::Assign:
            if (s.op == "=") {
                walk_access(s.exprs[1], Mode::Read, out);
                walk_access(s.exprs[0], Mode::Write, out);
            } else {
                walk_access(s.exprs[0], Mode::ReadWrite, out);
                walk_access(s.exprs[1], Mode::Read, out);
            }
            break;
        default:
            for (const auto& e : s.exprs) walk_access(e, Mode::Read, out);
            break;
    }
    return out;
}

const char* to_string(CallKind kind) {
    switch (kind) {
        case CallKind::LowLevelCall: return "low_level_call";
        case CallKind::LowLevelDelegatecall: return "low_level_delegatecall";
        case CallKind::LowLevelStaticcall: return "low_level_staticcall";
        case CallKind::Send: return "send";
        case CallKind::Transfer: return "transfer";
        case CallKind::ExternalMember: return "external_member";
        case CallKind::ImplicitCallback: return "implicit_callback";
    }
    return "?";
}

void for_each_expr(const Expr& e, const std::function<void(const Expr&)>& visit) {
    visit(e);
    for (const auto& a : e.args) for_each_expr(a, visit);
    for (const auto& o : e.options) for_each_expr(o.value, visit);
}

bool contains_node(const Expr& haystack, const Expr* needle) {
    bool found = false;
    for_each_expr(haystack, [&](const Expr& x) { found = found || &x == needle; });
    return found;
}

void walk_guarded(const std::vector<Stmt>& body, const std::function<void(const GuardedExpr&)>& visit) {
    walk_stmts(body, {}, visit);
}

CallClassifier::CallClassifier(const SymbolTable& table, const ResolvedContract& contract)
    : table_(table), contract_(contract), receiver_helper_(contract.functions.size(), false) {
    for (std::size_t i = 0; i < contract.functions.size(); ++i) {
        bool forwards = false;
        walk_guarded(contract.functions[i].def.body, [&](const GuardedExpr& g) {
            for_each_expr(*g.expr, [&](const Expr& x) {
                if (x.kind == ExprKind::FunctionCall && x.args[0].kind == ExprKind::MemberAccess &&
                    x.args[0].text == "onERC721Received")
                    forwards = true;
            });
        });
        receiver_helper_[i] = forwards;
    }
}

std::optional<TypeName> CallClassifier::static_type(const Expr& e, const ResolvedFunction& fn) const {
    switch (e.kind) {
        case ExprKind::Identifier:
            switch (e.binding.kind) {
                case Binding::Kind::StateVar: return contract_.state_vars[e.binding.index].type;
                case Binding::Kind::Param: return fn.def.params[e.binding.index].type;
                case Binding::Kind::Local: return fn.locals[e.binding.index].type;
                case Binding::Kind::Builtin:
                    if (e.text == "this") return TypeName{TypeName::Kind::UserDefined, contract_.name, {}, false, ""};
                    return std::nullopt;
                default: return std::nullopt;
            }
        case ExprKind::IndexAccess: {
            auto base = static_type(e.args[0], fn);
            if (!base) return std::nullopt;
            if (base->kind == TypeName::Kind::Mapping) return base->inner[1];
            if (base->kind == TypeName::Kind::Array) return base->inner[0];
            return std::nullopt;
        }
        case ExprKind::FunctionCall: {
            const Expr& callee = e.args[0];
            if (callee.kind == ExprKind::Identifier && callee.binding.kind == Binding::Kind::Contract)
                return TypeName{TypeName::Kind::UserDefined, callee.text, {}, false, ""};
            if (callee.kind == ExprKind::ElementaryTypeExpr &&
                (callee.text == "address" || callee.text == "payable"))
                return TypeName{TypeName::Kind::Elementary, "address", {}, callee.text == "payable", ""};
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

bool CallClassifier::is_contract_typed(const Expr& e, const ResolvedFunction& fn) const {
    auto t = static_type(e, fn);
    return t && t->kind == TypeName::Kind::UserDefined && table_.is_contract_type(t->name);
}

std::vector<CallSite> CallClassifier::sites(const Expr& e, const ResolvedFunction& fn) const {
    std::vector<CallSite> out;
    walk(e, fn, out);
    return out;
}

void CallClassifier::walk(const Expr& e, const ResolvedFunction& fn, std::vector<CallSite>& out) const {
    for (const auto& a : e.args) walk(a, fn, out);
    for (const auto& o : e.options) walk(o.value, fn, out);

    if (e.kind == ExprKind::LowLevelCall) {
        CallSite s{&e, true, CallKind::LowLevelCall, -1};
        if (e.text == "delegatecall") s.kind = CallKind::LowLevelDelegatecall;
        else if (e.text == "staticcall") s.kind = CallKind::LowLevelStaticcall;
        else if (e.text == "send") s.kind = CallKind::Send;
        else if (e.text == "transfer") s.kind = CallKind::Transfer;
        out.push_back(s);
        return;
    }
    if (e.kind != ExprKind::FunctionCall) return;
    const Expr& callee = e.args[0];
    if (callee.kind == ExprKind::MemberAccess && is_contract_typed(callee.args[0], fn)) {
        bool implicit = kImplicitCallbackNames.count(callee.text) > 0;
        out.push_back({&e, true, implicit ? CallKind::ImplicitCallback : CallKind::ExternalMember, -1});
        return;
    }
    if (callee.kind == ExprKind::Identifier && callee.binding.kind == Binding::Kind::Function) {
        int g = callee.binding.index;
        bool implicit = kImplicitCallbackNames.count(callee.text) > 0 || receiver_helper_[g];
        out.push_back({&e, implicit, CallKind::ImplicitCallback, g});
    }
}

std::vector<const Expr*> CallClassifier::target_exprs(const CallSite& site) const {
    const Expr& e = *site.expr;
    std::vector<const Expr*> out;
    auto arg = [&](std::size_t i) -> const Expr* { return i + 1 < e.args.size() ? &e.args[i + 1] : nullptr; };
    auto all_args = [&] {
        for (std::size_t i = 1; i < e.args.size(); ++i) out.push_back(&e.args[i]);
    };

    if (e.kind == ExprKind::LowLevelCall) {
        out.push_back(&e.args[0]);
        return out;
    }
    const Expr& callee = e.args[0];
    std::string name = callee.text;
    if (site.kind != CallKind::ImplicitCallback) {
        out.push_back(&callee.args[0]);
        return out;
    }
    // Implicit callbacks hand control to the token recipient, not the token contract.
    const Expr* pick = nullptr;
    if (name == "safeTransferFrom") pick = arg(1);
    else if (name == "_safeMint" || name == "safeMint") pick = arg(0);
    else if (name == "onERC721Received" && callee.kind == ExprKind::MemberAccess) pick = &callee.args[0];
    else if (site.callee >= 0) {
        const auto& params = contract_.functions[site.callee].def.params;
        for (std::size_t i = 0; i < params.size() && !pick; ++i)
            if (params[i].name == "to" || params[i].name == "recipient" || params[i].name == "receiver")
                pick = arg(i);
    }
    if (pick) out.push_back(pick);
    else all_args();
    return out;
}

}  // namespace psr2
