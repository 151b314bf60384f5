#pragma once

// Plain recursive AST walks written independently of src/ so the property
// tests do not reuse the code they check.

#include <functional>
#include <map>
#include <set>

#include "psr2/resolver.hpp"

namespace oracle {

using psr2::Expr;
using psr2::ExprKind;
using psr2::Stmt;
using psr2::StmtKind;

inline void each_expr(const Expr& e, const std::function<void(const Expr&)>& f) {
    f(e);
    for (const auto& a : e.args) each_expr(a, f);
    for (const auto& o : e.options) each_expr(o.value, f);
}

inline void each_stmt(const std::vector<Stmt>& body, const std::function<void(const Stmt&)>& f) {
    for (const auto& s : body) {
        f(s);
        each_stmt(s.init, f);
        each_stmt(s.post, f);
        each_stmt(s.body, f);
        each_stmt(s.else_body, f);
    }
}

inline void each_expr_in(const std::vector<Stmt>& body, const std::function<void(const Expr&)>& f) {
    each_stmt(body, [&](const Stmt& s) {
        if (s.cond) each_expr(*s.cond, f);
        for (const auto& e : s.exprs) each_expr(e, f);
    });
}

// Read / write flags per state variable index for one function body.
struct Use {
    bool read = false;
    bool write = false;
};

class AccessOracle {
public:
    std::map<int, Use> uses;

    void body(const std::vector<Stmt>& b) {
        each_stmt(b, [&](const Stmt& s) {
            if (s.cond) rvalue(*s.cond);
            if (s.kind == StmtKind::Assign) {
                lvalue(s.exprs[0], s.op != "=");
                rvalue(s.exprs[1]);
                return;
            }
            for (const auto& e : s.exprs) rvalue(e);
        });
    }

private:
    // Marks the storage root of an l-value; indices along the way are reads.
    void lvalue(const Expr& e, bool also_read) {
        switch (e.kind) {
            case ExprKind::Identifier:
                if (e.binding.kind == psr2::Binding::Kind::StateVar) {
                    uses[e.binding.index].write = true;
                    if (also_read) uses[e.binding.index].read = true;
                }
                return;
            case ExprKind::IndexAccess:
                lvalue(e.args[0], also_read);
                if (e.args.size() > 1) rvalue(e.args[1]);
                return;
            case ExprKind::MemberAccess: lvalue(e.args[0], also_read); return;
            case ExprKind::TupleExpr:
                for (const auto& c : e.args) lvalue(c, also_read);
                return;
            default: rvalue(e);
        }
    }

    void rvalue(const Expr& e) {
        switch (e.kind) {
            case ExprKind::Identifier:
                if (e.binding.kind == psr2::Binding::Kind::StateVar) uses[e.binding.index].read = true;
                return;
            case ExprKind::UnaryOp:
                if (e.text == "++" || e.text == "--") return lvalue(e.args[0], true);
                if (e.text == "delete") return lvalue(e.args[0], false);
                break;
            case ExprKind::FunctionCall: {
                const Expr& callee = e.callee();
                if (callee.kind == ExprKind::MemberAccess && (callee.text == "push" || callee.text == "pop")) {
                    lvalue(callee.args[0], true);
                    for (std::size_t i = 1; i < e.args.size(); ++i) rvalue(e.args[i]);
                    return;
                }
                break;
            }
            default: break;
        }
        for (const auto& a : e.args) rvalue(a);
        for (const auto& o : e.options) rvalue(o.value);
    }
};

}  // namespace oracle
