#include "psr2/parser.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace psr2 {

namespace {

const std::unordered_set<std::string_view> kLowLevelMembers = {"call", "delegatecall",
                                                               "staticcall", "send"};

const std::unordered_set<std::string_view> kAssignOps = {"=",  "+=", "-=", "*=",  "/=",  "%=",
                                                         "|=", "&=", "^=", "<<=", ">>="};

const std::unordered_set<std::string_view> kDataLocations = {"memory", "storage", "calldata"};

const std::unordered_set<std::string_view> kUnits = {"wei",     "gwei",  "ether", "seconds",
                                                     "minutes", "hours", "days",  "weeks"};

int binary_precedence(const Token& t) {
    static const std::map<std::string, int, std::less<>> table = {
        {"||", 1}, {"&&", 2}, {"==", 3}, {"!=", 3}, {"<", 4},  {">", 4},  {"<=", 4},
        {">=", 4}, {"|", 5},  {"^", 6},  {"&", 7},  {"<<", 8}, {">>", 8}, {"+", 9},
        {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}, {"**", 11},
    };
    if (t.kind != TokenKind::Punct) return 0;
    auto it = table.find(t.text);
    return it == table.end() ? 0 : it->second;
}

std::string canonical_elementary(const std::string& word) {
    if (word == "uint") return "uint256";
    if (word == "int") return "int256";
    if (word == "byte") return "bytes1";
    return word;
}

class Parser {
public:
    Parser(const std::vector<Token>& tokens, std::string file) : toks_(tokens), file_(std::move(file)) {
        SourceLoc eof_loc{file_, 1, 1, 0, 0};
        if (!toks_.empty()) {
            const SourceLoc& last = toks_.back().loc;
            eof_loc = SourceLoc{last.file, last.line, last.column + static_cast<int>(last.length),
                                last.end(), 0};
        }
        eof_ = Token{TokenKind::Eof, "", eof_loc};
    }

    SourceUnit unit() {
        SourceUnit unit;
        unit.file = file_;
        while (!at_end()) {
            if (peek().is_keyword("pragma")) {
                advance();
                const Token& text = expect_kind(TokenKind::PragmaText, "pragma text");
                expect(";");
                if (text.text.rfind("solidity", 0) == 0) unit.pragma = text.text.substr(8);
                while (!unit.pragma.empty() && unit.pragma.front() == ' ') unit.pragma.erase(0, 1);
            } else if (peek().is_keyword("contract") || peek().is_keyword("interface")) {
                unit.contracts.push_back(contract());
            } else {
                unsupported_or_expected("contract or interface definition");
            }
        }
        return unit;
    }

private:
    // -- token cursor ---------------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const {
        return pos_ + ahead < toks_.size() ? toks_[pos_ + ahead] : eof_;
    }
    bool at_end() const { return pos_ >= toks_.size(); }
    const Token& advance() {
        const Token& t = peek();
        if (!at_end()) ++pos_;
        return t;
    }
    const Token& previous() const { return toks_[pos_ - 1]; }

    bool accept(std::string_view punct) {
        if (peek().is_punct(punct)) {
            advance();
            return true;
        }
        return false;
    }

    bool accept_keyword(std::string_view kw) {
        if (peek().is_keyword(kw)) {
            advance();
            return true;
        }
        return false;
    }

    static std::string describe(const Token& t) {
        if (t.kind == TokenKind::Eof) return "end of input";
        return "'" + t.text + "'";
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(peek().loc, expected, describe(peek()));
    }

    // Constructs the subset rejects get a dedicated message at the keyword.
    [[noreturn]] void unsupported_or_expected(const std::string& expected) const {
        static const std::unordered_set<std::string_view> excluded = {
            "assembly", "library", "try", "catch", "import", "struct", "enum", "using",
            "abstract", "new", "do", "error"};
        const Token& t = peek();
        if ((t.kind == TokenKind::Keyword || t.kind == TokenKind::Identifier) && excluded.count(t.text))
            throw ParseError(t.loc, "construct inside the supported subset",
                             "unsupported '" + t.text + "'");
        fail(expected);
    }

    const Token& expect(std::string_view punct) {
        if (!peek().is_punct(punct)) fail("'" + std::string(punct) + "'");
        return advance();
    }

    const Token& expect_kind(TokenKind kind, const std::string& what) {
        if (peek().kind != kind) fail(what);
        return advance();
    }

    const Token& expect_identifier() { return expect_kind(TokenKind::Identifier, "identifier"); }

    SourceLoc from(const SourceLoc& start) const { return span(start, previous().loc); }

    // -- types ----------------------------------------------------------------

    bool starts_type(std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        if (t.kind == TokenKind::Keyword) return is_elementary_type(t.text) || t.text == "mapping";
        return t.kind == TokenKind::Identifier;
    }

    TypeName type_name() {
        TypeName type;
        const Token& t = peek();
        if (t.is_keyword("mapping")) {
            advance();
            expect("(");
            TypeName key = type_name();
            expect("=>");
            TypeName value = type_name();
            expect(")");
            type.kind = TypeName::Kind::Mapping;
            type.inner = {std::move(key), std::move(value)};
        } else if (t.kind == TokenKind::Keyword && is_elementary_type(t.text)) {
            advance();
            type.kind = TypeName::Kind::Elementary;
            type.name = canonical_elementary(t.text);
            if (type.name == "address" && accept_keyword("payable")) type.payable = true;
        } else if (t.kind == TokenKind::Identifier) {
            advance();
            type.kind = TypeName::Kind::UserDefined;
            type.name = t.text;
        } else {
            fail("type name");
        }
        while (peek().is_punct("[")) {
            advance();
            TypeName array;
            array.kind = TypeName::Kind::Array;
            if (!peek().is_punct("]")) array.array_length = expect_kind(TokenKind::Number, "array length").text;
            expect("]");
            array.inner.push_back(std::move(type));
            type = std::move(array);
        }
        return type;
    }

    std::vector<Param> param_list(bool allow_indexed) {
        std::vector<Param> params;
        expect("(");
        if (accept(")")) return params;
        do {
            Param p;
            SourceLoc start = peek().loc;
            p.type = type_name();
            if (peek().kind == TokenKind::Keyword && kDataLocations.count(peek().text))
                p.location = advance().text;
            if (allow_indexed && accept_keyword("indexed")) p.indexed = true;
            if (peek().kind == TokenKind::Identifier) p.name = advance().text;
            p.loc = from(start);
            params.push_back(std::move(p));
        } while (accept(","));
        expect(")");
        return params;
    }

    // -- contracts ------------------------------------------------------------

    ContractDef contract() {
        ContractDef c;
        SourceLoc start = peek().loc;
        c.kind = advance().text == "interface" ? ContractKind::Interface : ContractKind::Contract;
        c.name = expect_identifier().text;
        if (peek().is(TokenKind::Identifier, "is")) {
            advance();
            do {
                c.bases.push_back(expect_identifier().text);
                if (peek().is_punct("(")) fail("'{' or ','");   // base constructor args unsupported
            } while (accept(","));
        }
        expect("{");
        while (!peek().is_punct("}")) {
            if (at_end()) fail("'}'");
            member(c);
        }
        expect("}");
        c.loc = from(start);
        return c;
    }

    void member(ContractDef& c) {
        const Token& t = peek();
        if (t.is_keyword("function")) {
            c.functions.push_back(function(c.kind));
        } else if (t.is_keyword("constructor")) {
            c.functions.push_back(function(c.kind));
        } else if ((t.is(TokenKind::Identifier, "receive") || t.is(TokenKind::Identifier, "fallback")) &&
                   peek(1).is_punct("(")) {
            c.functions.push_back(function(c.kind));
        } else if (t.is_keyword("modifier")) {
            c.modifiers.push_back(modifier());
        } else if (t.is_keyword("event")) {
            c.events.push_back(event());
        } else if (starts_type()) {
            if (t.kind == TokenKind::Identifier && peek(1).is_punct("(")) unsupported_or_expected("state variable or function");
            c.state_vars.push_back(state_var());
        } else {
            unsupported_or_expected("contract member");
        }
    }

    StateVarDecl state_var() {
        StateVarDecl v;
        SourceLoc start = peek().loc;
        v.type = type_name();
        while (true) {
            const Token& t = peek();
            if (t.is_keyword("public")) v.visibility = Visibility::Public;
            else if (t.is_keyword("private")) v.visibility = Visibility::Private;
            else if (t.is_keyword("internal")) v.visibility = Visibility::Internal;
            else if (t.is_keyword("constant")) v.mutability = VarMutability::Constant;
            else if (t.is_keyword("immutable")) v.mutability = VarMutability::Immutable;
            else if (t.is_keyword("override")) {}
            else break;
            advance();
        }
        v.name = expect_identifier().text;
        if (accept("=")) v.initializer = expression();
        expect(";");
        v.loc = from(start);
        if (v.mutability == VarMutability::Constant && !v.initializer)
            throw ParseError(v.loc, "initializer for constant '" + v.name + "'", "';'");
        return v;
    }

    FunctionDef function(ContractKind owner) {
        FunctionDef f;
        SourceLoc start = peek().loc;
        const Token& head = advance();
        if (head.is_keyword("constructor")) {
            f.kind = FunctionKind::Constructor;
            f.name = "constructor";
        } else if (head.text == "receive" || head.text == "fallback") {
            f.kind = head.text == "receive" ? FunctionKind::Receive : FunctionKind::Fallback;
            f.name = head.text;
            f.visibility = Visibility::External;
        } else {
            const Token& name = peek();
            if (name.kind != TokenKind::Identifier) fail("function name");
            advance();
            f.name = name.text;
        }
        f.params = param_list(false);
        while (true) {
            const Token& t = peek();
            if (t.is_keyword("public")) f.visibility = Visibility::Public;
            else if (t.is_keyword("external")) f.visibility = Visibility::External;
            else if (t.is_keyword("internal")) f.visibility = Visibility::Internal;
            else if (t.is_keyword("private")) f.visibility = Visibility::Private;
            else if (t.is_keyword("payable")) f.mutability = StateMutability::Payable;
            else if (t.is_keyword("view")) f.mutability = StateMutability::View;
            else if (t.is_keyword("pure")) f.mutability = StateMutability::Pure;
            else if (t.is_keyword("virtual")) f.is_virtual = true;
            else if (t.is_keyword("override")) {
                f.is_override = true;
                advance();
                if (accept("(")) {
                    do expect_identifier();
                    while (accept(","));
                    expect(")");
                }
                continue;
            } else if (t.kind == TokenKind::Identifier) {
                ModifierInvocation m;
                SourceLoc mstart = t.loc;
                m.name = advance().text;
                if (accept("(")) {
                    if (!peek().is_punct(")")) {
                        do m.args.push_back(expression());
                        while (accept(","));
                    }
                    expect(")");
                }
                m.loc = from(mstart);
                f.modifiers_applied.push_back(std::move(m));
                continue;
            } else {
                break;
            }
            advance();
        }
        if (accept_keyword("returns")) f.returns = param_list(false);
        if (peek().is_punct(";")) {
            if (owner == ContractKind::Contract) fail("function body");
            advance();
        } else {
            f.has_body = true;
            f.body = block_body();
        }
        f.loc = from(start);
        return f;
    }

    ModifierDef modifier() {
        ModifierDef m;
        SourceLoc start = advance().loc;
        m.name = expect_identifier().text;
        if (peek().is_punct("(")) m.params = param_list(false);
        while (accept_keyword("virtual") || accept_keyword("override")) {}
        m.body = block_body();
        m.loc = from(start);
        return m;
    }

    EventDef event() {
        EventDef e;
        SourceLoc start = advance().loc;
        e.name = expect_identifier().text;
        e.params = param_list(true);
        accept_keyword("anonymous");
        expect(";");
        e.loc = from(start);
        return e;
    }

    // -- statements -----------------------------------------------------------

    std::vector<Stmt> block_body() {
        expect("{");
        std::vector<Stmt> stmts;
        while (!peek().is_punct("}")) {
            if (at_end()) fail("'}'");
            stmts.push_back(statement());
        }
        expect("}");
        return stmts;
    }

    Stmt block() {
        Stmt s;
        s.kind = StmtKind::Block;
        SourceLoc start = peek().loc;
        s.body = block_body();
        s.loc = from(start);
        return s;
    }

    // Wraps a non-block branch so every body is a statement list.
    std::vector<Stmt> branch() {
        if (peek().is_punct("{")) return block_body();
        std::vector<Stmt> out;
        out.push_back(statement());
        return out;
    }

    Stmt statement() {
        const Token& t = peek();
        SourceLoc start = t.loc;
        Stmt s;

        if (t.is_punct("{")) return block();
        if (t.is_keyword("unchecked") && peek(1).is_punct("{")) {
            advance();
            Stmt b = block();
            b.loc = from(start);
            return b;
        }
        if (t.is_keyword("if")) {
            advance();
            s.kind = StmtKind::If;
            expect("(");
            s.cond = expression();
            expect(")");
            s.body = branch();
            if (accept_keyword("else")) {
                s.has_else = true;
                s.else_body = branch();
            }
            s.loc = from(start);
            return s;
        }
        if (t.is_keyword("while")) {
            advance();
            s.kind = StmtKind::While;
            expect("(");
            s.cond = expression();
            expect(")");
            s.body = branch();
            s.loc = from(start);
            return s;
        }
        if (t.is_keyword("for")) {
            advance();
            s.kind = StmtKind::For;
            expect("(");
            if (!accept(";")) s.init.push_back(simple_statement());
            if (!peek().is_punct(";")) s.cond = expression();
            expect(";");
            if (!peek().is_punct(")")) s.post.push_back(simple_statement(false));
            expect(")");
            s.body = branch();
            s.loc = from(start);
            return s;
        }
        if (t.is_keyword("return")) {
            advance();
            s.kind = StmtKind::Return;
            if (!peek().is_punct(";")) s.exprs.push_back(expression());
            expect(";");
            s.loc = from(start);
            return s;
        }
        if (t.is(TokenKind::Identifier, "break") || t.is(TokenKind::Identifier, "continue") ||
            t.is_keyword("break") || t.is_keyword("continue")) {
            advance();
            s.kind = t.text == "break" ? StmtKind::Break : StmtKind::Continue;
            expect(";");
            s.loc = from(start);
            return s;
        }
        if (t.is_keyword("emit")) {
            advance();
            s.kind = StmtKind::Emit;
            Expr call = expression();
            if (call.kind != ExprKind::FunctionCall) throw ParseError(call.loc, "event invocation", "expression");
            s.exprs.push_back(std::move(call));
            expect(";");
            s.loc = from(start);
            return s;
        }
        if (t.is(TokenKind::Identifier, "_") && peek(1).is_punct(";")) {
            advance();
            advance();
            s.kind = StmtKind::Placeholder;
            s.loc = from(start);
            return s;
        }
        if (t.is(TokenKind::Identifier, "revert") && !peek(1).is_punct("(")) unsupported_or_expected("'('");
        return simple_statement();
    }

    bool starts_local_decl() const {
        const Token& t = peek();
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "mapping") return true;
            if (!is_elementary_type(t.text)) return false;
            return !peek(1).is_punct("(") && !peek(1).is_punct(".");
        }
        if (t.kind != TokenKind::Identifier) return false;
        const Token& n = peek(1);
        if (n.kind == TokenKind::Identifier) return true;
        if (n.kind == TokenKind::Keyword && kDataLocations.count(n.text)) return true;
        return n.is_punct("[") && peek(2).is_punct("]");
    }

    bool starts_tuple_decl() const {
        if (!peek().is_punct("(")) return false;
        std::size_t i = 1;
        while (peek(i).is_punct(",")) ++i;
        const Token& t = peek(i);
        if (t.kind == TokenKind::Keyword && is_elementary_type(t.text)) return !peek(i + 1).is_punct("(");
        if (t.kind == TokenKind::Identifier) {
            const Token& n = peek(i + 1);
            return n.kind == TokenKind::Identifier || (n.kind == TokenKind::Keyword && kDataLocations.count(n.text));
        }
        return false;
    }

    LocalDecl local_decl() {
        LocalDecl d;
        SourceLoc start = peek().loc;
        d.type = type_name();
        if (peek().kind == TokenKind::Keyword && kDataLocations.count(peek().text)) advance();
        d.name = expect_identifier().text;
        d.loc = from(start);
        return d;
    }

    // Declarations, assignments and expression statements. `terminated` is
    // false for the post clause of a for header.
    Stmt simple_statement(bool terminated = true) {
        Stmt s;
        SourceLoc start = peek().loc;
        if (starts_tuple_decl()) {
            s.kind = StmtKind::VarDecl;
            s.tuple_decl = true;
            advance();
            do {
                if (peek().is_punct(",") || peek().is_punct(")")) {
                    LocalDecl empty;
                    empty.loc = peek().loc;
                    s.decls.push_back(std::move(empty));
                } else {
                    s.decls.push_back(local_decl());
                }
            } while (accept(","));
            expect(")");
            expect("=");
            s.exprs.push_back(expression());
        } else if (starts_local_decl()) {
            s.kind = StmtKind::VarDecl;
            s.decls.push_back(local_decl());
            if (accept("=")) s.exprs.push_back(expression());
        } else {
            Expr e = expression();
            if (peek().kind == TokenKind::Punct && kAssignOps.count(peek().text)) {
                s.kind = StmtKind::Assign;
                s.op = advance().text;
                s.exprs.push_back(std::move(e));
                s.exprs.push_back(expression());
            } else if (e.kind == ExprKind::FunctionCall && e.callee().kind == ExprKind::Identifier &&
                       (e.callee().text == "require" || e.callee().text == "assert" ||
                        e.callee().text == "revert")) {
                s.kind = StmtKind::Require;
                s.op = e.callee().text;
                s.exprs.assign(e.args.begin() + 1, e.args.end());
            } else {
                s.kind = StmtKind::ExprStmt;
                s.exprs.push_back(std::move(e));
            }
        }
        if (terminated) expect(";");
        s.loc = from(start);
        return s;
    }

    // -- expressions ----------------------------------------------------------

    Expr expression() { return conditional(); }

    Expr conditional() {
        Expr cond = binary(1);
        if (!peek().is_punct("?")) return cond;
        advance();
        Expr e;
        e.kind = ExprKind::Conditional;
        Expr then = expression();
        expect(":");
        Expr otherwise = expression();
        e.loc = span(cond.loc, otherwise.loc);
        e.args = {std::move(cond), std::move(then), std::move(otherwise)};
        return e;
    }

    Expr binary(int min_prec) {
        Expr lhs = unary();
        while (true) {
            int prec = binary_precedence(peek());
            if (prec == 0 || prec < min_prec) return lhs;
            std::string op = advance().text;
            // ** is right associative
            Expr rhs = binary(op == "**" ? prec : prec + 1);
            Expr e;
            e.kind = ExprKind::BinaryOp;
            e.text = op;
            e.loc = span(lhs.loc, rhs.loc);
            e.args = {std::move(lhs), std::move(rhs)};
            lhs = std::move(e);
        }
    }

    Expr unary() {
        const Token& t = peek();
        if (t.is_punct("!") || t.is_punct("-") || t.is_punct("~") || t.is_punct("++") ||
            t.is_punct("--") || t.is_keyword("delete")) {
            SourceLoc start = t.loc;
            Expr e;
            e.kind = ExprKind::UnaryOp;
            e.text = advance().text;
            e.args.push_back(unary());
            e.loc = span(start, e.args[0].loc);
            return e;
        }
        return postfix(primary());
    }

    std::vector<CallOption> call_options() {
        std::vector<CallOption> opts;
        expect("{");
        do {
            CallOption o;
            o.name = expect_identifier().text;
            expect(":");
            o.value = expression();
            opts.push_back(std::move(o));
        } while (accept(","));
        expect("}");
        return opts;
    }

    Expr postfix(Expr e) {
        SourceLoc start = e.loc;
        std::vector<CallOption> pending_options;
        while (true) {
            const Token& t = peek();
            if (t.is_punct(".")) {
                advance();
                const Token& member = peek();
                if (member.kind != TokenKind::Identifier && member.kind != TokenKind::Keyword)
                    fail("member name");
                advance();
                Expr m;
                m.kind = ExprKind::MemberAccess;
                m.text = member.text;
                m.args.push_back(std::move(e));
                m.loc = from(start);
                e = std::move(m);
            } else if (t.is_punct("[")) {
                advance();
                Expr idx;
                idx.kind = ExprKind::IndexAccess;
                idx.args.push_back(std::move(e));
                if (peek().is_punct("]")) {
                    Expr empty;
                    empty.loc = peek().loc;
                    idx.args.push_back(std::move(empty));
                } else {
                    idx.args.push_back(expression());
                }
                expect("]");
                idx.loc = from(start);
                e = std::move(idx);
            } else if (t.is_punct("{") && peek(1).kind == TokenKind::Identifier && peek(2).is_punct(":")) {
                pending_options = call_options();
                if (!peek().is_punct("(")) fail("'(' after call options");
            } else if (t.is_punct("(")) {
                advance();
                std::vector<Expr> args;
                if (!peek().is_punct(")")) {
                    if (peek().is_punct("{")) unsupported_or_expected("positional arguments");
                    do args.push_back(expression());
                    while (accept(","));
                }
                expect(")");
                Expr call;
                bool low_level = e.kind == ExprKind::MemberAccess &&
                                 (kLowLevelMembers.count(e.text) || (e.text == "transfer" && args.size() == 1));
                if (low_level) {
                    call.kind = ExprKind::LowLevelCall;
                    call.text = e.text;
                    call.args.push_back(std::move(e.args[0]));
                } else {
                    call.kind = ExprKind::FunctionCall;
                    call.args.push_back(std::move(e));
                }
                for (auto& a : args) call.args.push_back(std::move(a));
                call.options = std::move(pending_options);
                pending_options.clear();
                call.loc = from(start);
                e = std::move(call);
            } else if (t.is_punct("++") || t.is_punct("--")) {
                advance();
                Expr u;
                u.kind = ExprKind::UnaryOp;
                u.text = t.text;
                u.postfix = true;
                u.args.push_back(std::move(e));
                u.loc = from(start);
                e = std::move(u);
            } else {
                return e;
            }
        }
    }

    Expr primary() {
        const Token& t = peek();
        SourceLoc start = t.loc;
        Expr e;
        switch (t.kind) {
            case TokenKind::Identifier:
                advance();
                e.kind = ExprKind::Identifier;
                e.text = t.text;
                e.loc = t.loc;
                return e;
            case TokenKind::Number:
                advance();
                e.kind = ExprKind::Literal;
                e.literal = LiteralKind::Number;
                e.text = t.text;
                if (peek().kind == TokenKind::Keyword && kUnits.count(peek().text))
                    e.text += " " + advance().text;
                e.loc = from(start);
                return e;
            case TokenKind::HexNumber:
                advance();
                e.kind = ExprKind::Literal;
                e.literal = LiteralKind::HexNumber;
                e.text = t.text;
                e.loc = t.loc;
                return e;
            case TokenKind::String:
                advance();
                e.kind = ExprKind::Literal;
                e.literal = LiteralKind::String;
                e.text = t.text;
                while (peek().kind == TokenKind::String) e.text += " " + advance().text;
                e.loc = from(start);
                return e;
            case TokenKind::Keyword:
                if (t.text == "true" || t.text == "false") {
                    advance();
                    e.kind = ExprKind::Literal;
                    e.literal = LiteralKind::Bool;
                    e.text = t.text;
                    e.loc = t.loc;
                    return e;
                }
                if (is_elementary_type(t.text) || t.text == "payable") {
                    advance();
                    e.kind = ExprKind::ElementaryTypeExpr;
                    e.text = t.text == "payable" ? "payable" : canonical_elementary(t.text);
                    e.loc = t.loc;
                    return e;
                }
                unsupported_or_expected("expression");
            case TokenKind::Punct:
                if (t.is_punct("(")) return tuple();
                fail("expression");
            default:
                fail("expression");
        }
    }

    Expr tuple() {
        SourceLoc start = advance().loc;
        Expr e;
        e.kind = ExprKind::TupleExpr;
        if (accept(")")) {
            e.loc = from(start);
            return e;
        }
        do {
            if (peek().is_punct(",") || peek().is_punct(")")) {
                Expr empty;
                empty.loc = peek().loc;
                e.args.push_back(std::move(empty));
            } else {
                e.args.push_back(expression());
            }
        } while (accept(","));
        expect(")");
        if (e.args.size() == 1) return std::move(e.args[0]);
        e.loc = from(start);
        return e;
    }

    const std::vector<Token>& toks_;
    std::string file_;
    std::size_t pos_ = 0;
    Token eof_;
};

}  // namespace

SourceUnit parse(const std::vector<Token>& tokens, const std::string& file) {
    return Parser(tokens, file).unit();
}

SourceUnit parse_source(std::string_view source, const std::string& file) {
    return parse(tokenize(source, file), file);
}

SourceUnit parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": error: cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_source(buf.str(), path);
}

}  // namespace psr2
