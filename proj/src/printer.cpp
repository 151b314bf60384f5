#include "psr2/printer.hpp"

#include <sstream>

namespace psr2 {

namespace {

std::string join_exprs(const std::vector<Expr>& xs, std::size_t from = 0) {
    std::string out;
    for (std::size_t i = from; i < xs.size(); ++i) {
        if (i > from) out += ", ";
        out += print(xs[i]);
    }
    return out;
}

std::string options_str(const std::vector<CallOption>& opts) {
    if (opts.empty()) return "";
    std::string out = "{";
    for (std::size_t i = 0; i < opts.size(); ++i) {
        if (i) out += ", ";
        out += opts[i].name + ": " + print(opts[i].value);
    }
    return out + "}";
}

std::string param_str(const Param& p) {
    std::string out = p.type.str();
    if (!p.location.empty()) out += " " + p.location;
    if (p.indexed) out += " indexed";
    if (!p.name.empty()) out += " " + p.name;
    return out;
}

std::string params_str(const std::vector<Param>& ps) {
    std::string out = "(";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) out += ", ";
        out += param_str(ps[i]);
    }
    return out + ")";
}

class Printer {
public:
    std::string str() const { return out_.str(); }

    void unit(const SourceUnit& u) {
        if (!u.pragma.empty()) out_ << "pragma solidity " << u.pragma << ";\n\n";
        for (const auto& c : u.contracts) contract(c);
    }

private:
    void indent() { out_ << std::string(depth_ * 4, ' '); }

    void contract(const ContractDef& c) {
        out_ << (c.kind == ContractKind::Interface ? "interface " : "contract ") << c.name;
        for (std::size_t i = 0; i < c.bases.size(); ++i) out_ << (i ? ", " : " is ") << c.bases[i];
        out_ << " {\n";
        ++depth_;
        for (const auto& v : c.state_vars) {
            indent();
            out_ << v.type.str() << " " << to_string(v.visibility);
            if (v.mutability == VarMutability::Constant) out_ << " constant";
            if (v.mutability == VarMutability::Immutable) out_ << " immutable";
            out_ << " " << v.name;
            if (v.initializer) out_ << " = " << print(*v.initializer);
            out_ << ";\n";
        }
        for (const auto& e : c.events) {
            indent();
            out_ << "event " << e.name << params_str(e.params) << ";\n";
        }
        for (const auto& m : c.modifiers) {
            indent();
            out_ << "modifier " << m.name << params_str(m.params) << " ";
            block(m.body);
            out_ << "\n";
        }
        for (const auto& f : c.functions) function(f);
        --depth_;
        out_ << "}\n\n";
    }

    void function(const FunctionDef& f) {
        indent();
        switch (f.kind) {
            case FunctionKind::Constructor: out_ << "constructor"; break;
            case FunctionKind::Receive: out_ << "receive"; break;
            case FunctionKind::Fallback: out_ << "fallback"; break;
            case FunctionKind::Function: out_ << "function " << f.name; break;
        }
        out_ << params_str(f.params) << " " << to_string(f.visibility);
        if (f.mutability != StateMutability::NonPayable) out_ << " " << to_string(f.mutability);
        if (f.is_virtual) out_ << " virtual";
        if (f.is_override) out_ << " override";
        for (const auto& m : f.modifiers_applied) {
            out_ << " " << m.name;
            if (!m.args.empty()) out_ << "(" << join_exprs(m.args) << ")";
        }
        if (!f.returns.empty()) out_ << " returns " << params_str(f.returns);
        if (!f.has_body) {
            out_ << ";\n";
            return;
        }
        out_ << " ";
        block(f.body);
        out_ << "\n";
    }

    void block(const std::vector<Stmt>& stmts) {
        out_ << "{\n";
        ++depth_;
        for (const auto& s : stmts) {
            indent();
            stmt(s);
            out_ << "\n";
        }
        --depth_;
        indent();
        out_ << "}";
    }

    std::string decl_str(const LocalDecl& d) { return d.name.empty() ? "" : d.type.str() + " " + d.name; }

    // Statement text without a trailing semicolon; used for for-headers.
    std::string simple(const Stmt& s) {
        switch (s.kind) {
            case StmtKind::VarDecl: {
                std::string out;
                if (s.tuple_decl) {
                    out = "(";
                    for (std::size_t i = 0; i < s.decls.size(); ++i) {
                        if (i) out += ", ";
                        out += decl_str(s.decls[i]);
                    }
                    out += ")";
                } else {
                    out = decl_str(s.decls[0]);
                }
                if (!s.exprs.empty()) out += " = " + print(s.exprs[0]);
                return out;
            }
            case StmtKind::Assign:
                return print(s.exprs[0]) + " " + s.op + " " + print(s.exprs[1]);
            case StmtKind::ExprStmt:
                return print(s.exprs[0]);
            case StmtKind::Require:
                return s.op + "(" + join_exprs(s.exprs) + ")";
            default:
                return "";
        }
    }

    void stmt(const Stmt& s) {
        switch (s.kind) {
            case StmtKind::VarDecl:
            case StmtKind::Assign:
            case StmtKind::ExprStmt:
            case StmtKind::Require:
                out_ << simple(s) << ";";
                break;
            case StmtKind::Return:
                out_ << "return";
                if (!s.exprs.empty()) out_ << " " << print(s.exprs[0]);
                out_ << ";";
                break;
            case StmtKind::Emit:
                out_ << "emit " << print(s.exprs[0]) << ";";
                break;
            case StmtKind::Break: out_ << "break;"; break;
            case StmtKind::Continue: out_ << "continue;"; break;
            case StmtKind::Placeholder: out_ << "_;"; break;
            case StmtKind::Block:
                block(s.body);
                break;
            case StmtKind::If:
                out_ << "if (" << print(*s.cond) << ") ";
                block(s.body);
                if (s.has_else) {
                    out_ << " else ";
                    block(s.else_body);
                }
                break;
            case StmtKind::While:
                out_ << "while (" << print(*s.cond) << ") ";
                block(s.body);
                break;
            case StmtKind::For:
                out_ << "for (" << (s.init.empty() ? "" : simple(s.init[0])) << "; "
                     << (s.cond ? print(*s.cond) : "") << "; " << (s.post.empty() ? "" : simple(s.post[0]))
                     << ") ";
                block(s.body);
                break;
        }
    }

    std::ostringstream out_;
    int depth_ = 0;
};

bool eq_type(const TypeName& a, const TypeName& b) {
    if (a.kind != b.kind || a.name != b.name || a.payable != b.payable || a.array_length != b.array_length ||
        a.inner.size() != b.inner.size())
        return false;
    for (std::size_t i = 0; i < a.inner.size(); ++i)
        if (!eq_type(a.inner[i], b.inner[i])) return false;
    return true;
}

template <class T, class F>
bool eq_list(const std::vector<T>& a, const std::vector<T>& b, F eq) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!eq(a[i], b[i])) return false;
    return true;
}

bool eq_expr(const Expr& a, const Expr& b) { return structurally_equal(a, b); }
bool eq_stmt(const Stmt& a, const Stmt& b) { return structurally_equal(a, b); }

bool eq_param(const Param& a, const Param& b) {
    return a.name == b.name && eq_type(a.type, b.type) && a.location == b.location && a.indexed == b.indexed;
}

bool eq_decl(const LocalDecl& a, const LocalDecl& b) {
    return a.name == b.name && (a.name.empty() || eq_type(a.type, b.type));
}

}  // namespace

std::string print(const Expr& e) {
    switch (e.kind) {
        case ExprKind::Identifier:
        case ExprKind::Literal:
        case ExprKind::ElementaryTypeExpr:
            return e.text;
        case ExprKind::Empty:
            return "";
        case ExprKind::MemberAccess:
            return print(e.args[0]) + "." + e.text;
        case ExprKind::IndexAccess:
            return print(e.args[0]) + "[" + print(e.args[1]) + "]";
        case ExprKind::FunctionCall:
            return print(e.args[0]) + options_str(e.options) + "(" + join_exprs(e.args, 1) + ")";
        case ExprKind::LowLevelCall:
            return print(e.args[0]) + "." + e.text + options_str(e.options) + "(" + join_exprs(e.args, 1) + ")";
        case ExprKind::BinaryOp:
            return "(" + print(e.args[0]) + " " + e.text + " " + print(e.args[1]) + ")";
        case ExprKind::UnaryOp:
            if (e.postfix) return "(" + print(e.args[0]) + ")" + e.text;
            return e.text + (e.text == "delete" ? " " : "") + "(" + print(e.args[0]) + ")";
        case ExprKind::Conditional:
            return "(" + print(e.args[0]) + " ? " + print(e.args[1]) + " : " + print(e.args[2]) + ")";
        case ExprKind::TupleExpr:
            return "(" + join_exprs(e.args) + ")";
    }
    return "";
}

std::string print(const SourceUnit& unit) {
    Printer p;
    p.unit(unit);
    return p.str();
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.text != b.text || a.postfix != b.postfix) return false;
    if (a.kind == ExprKind::Literal && a.literal != b.literal) return false;
    if (!eq_list(a.args, b.args, eq_expr)) return false;
    return eq_list(a.options, b.options, [](const CallOption& x, const CallOption& y) {
        return x.name == y.name && structurally_equal(x.value, y.value);
    });
}

bool structurally_equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind || a.op != b.op || a.has_else != b.has_else || a.tuple_decl != b.tuple_decl) return false;
    if (a.cond.has_value() != b.cond.has_value()) return false;
    if (a.cond && !structurally_equal(*a.cond, *b.cond)) return false;
    return eq_list(a.exprs, b.exprs, eq_expr) && eq_list(a.body, b.body, eq_stmt) &&
           eq_list(a.else_body, b.else_body, eq_stmt) && eq_list(a.init, b.init, eq_stmt) &&
           eq_list(a.post, b.post, eq_stmt) && eq_list(a.decls, b.decls, eq_decl);
}

bool structurally_equal(const SourceUnit& a, const SourceUnit& b) {
    auto eq_fn = [](const FunctionDef& x, const FunctionDef& y) {
        return x.name == y.name && x.kind == y.kind && x.visibility == y.visibility &&
               x.mutability == y.mutability && x.is_virtual == y.is_virtual && x.is_override == y.is_override &&
               x.has_body == y.has_body && eq_list(x.params, y.params, eq_param) &&
               eq_list(x.returns, y.returns, eq_param) && eq_list(x.body, y.body, eq_stmt) &&
               eq_list(x.modifiers_applied, y.modifiers_applied, [](const auto& m, const auto& n) {
                   return m.name == n.name && eq_list(m.args, n.args, eq_expr);
               });
    };
    auto eq_var = [](const StateVarDecl& x, const StateVarDecl& y) {
        if (x.name != y.name || !eq_type(x.type, y.type) || x.mutability != y.mutability ||
            x.visibility != y.visibility || x.initializer.has_value() != y.initializer.has_value())
            return false;
        return !x.initializer || structurally_equal(*x.initializer, *y.initializer);
    };
    auto eq_contract = [&](const ContractDef& x, const ContractDef& y) {
        return x.name == y.name && x.kind == y.kind && x.bases == y.bases &&
               eq_list(x.state_vars, y.state_vars, eq_var) && eq_list(x.functions, y.functions, eq_fn) &&
               eq_list(x.modifiers, y.modifiers,
                       [](const ModifierDef& m, const ModifierDef& n) {
                           return m.name == n.name && eq_list(m.params, n.params, eq_param) &&
                                  eq_list(m.body, n.body, eq_stmt);
                       }) &&
               eq_list(x.events, y.events, [](const EventDef& m, const EventDef& n) {
                   return m.name == n.name && eq_list(m.params, n.params, eq_param);
               });
    };
    return a.pragma == b.pragma && eq_list(a.contracts, b.contracts, eq_contract);
}

}  // namespace psr2
