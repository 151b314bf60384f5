#include <doctest.h>

#include "psr2/keywords.hpp"
#include "psr2/parser.hpp"
#include "psr2/resolver.hpp"
#include "../support.hpp"

using namespace psr2;

TEST_CASE("tokenize a declaration") {
    auto toks = tokenize("uint256 x;");
    REQUIRE(toks.size() == 3);
    CHECK(toks[0].is_keyword("uint256"));
    CHECK(toks[1].is(TokenKind::Identifier, "x"));
    CHECK(toks[2].is_punct(";"));
    CHECK(toks[1].loc.column == 9);
    CHECK(toks[1].loc.byte_offset == 8);
}

TEST_CASE("tokenize empty input") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("  // only a comment\n/* and\nanother */").empty());
}

TEST_CASE("call options lex as braces and a colon") {
    auto toks = tokenize("msg.sender.call{value: amt}(\"\")");
    // msg . sender . call { value : amt } ( "" )
    REQUIRE(toks.size() == 13);
    CHECK(toks[0].is(TokenKind::Identifier, "msg"));
    CHECK(toks[1].is_punct("."));
    CHECK(toks[4].is(TokenKind::Identifier, "call"));
    CHECK(toks[5].is_punct("{"));
    CHECK(toks[6].is(TokenKind::Identifier, "value"));
    CHECK(toks[7].is_punct(":"));
    CHECK(toks[8].is(TokenKind::Identifier, "amt"));
    CHECK(toks[9].is_punct("}"));
    CHECK(toks[10].is_punct("("));
    CHECK(toks[11].kind == TokenKind::String);
    CHECK(toks[12].is_punct(")"));
}

TEST_CASE("unterminated string is a lex error") {
    CHECK_THROWS_AS(tokenize("string s = \"abc"), LexError);
    try {
        tokenize("uint x;\n  #");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.loc().line == 2);
        CHECK(e.loc().column == 3);
    }
}

TEST_CASE("parse counts") {
    auto unit = parse_source("pragma solidity ^0.8.0;\ncontract C { uint256 a; function f() public { a = 1; } }");
    REQUIRE(unit.contracts.size() == 1);
    CHECK(unit.contracts[0].state_vars.size() == 1);
    CHECK(unit.contracts[0].functions.size() == 1);
    CHECK(unit.contracts[0].functions[0].signature() == "f()");
}

TEST_CASE("dao withdraw AST shape") {
    auto unit = parse_file(testing::corpus_path("dao_withdraw.sol"));
    REQUIRE(unit.contracts.size() == 1);
    const auto& c = unit.contracts[0];
    CHECK(c.name == "DaoVault");
    REQUIRE(c.state_vars.size() == 1);
    CHECK(c.state_vars[0].type.kind == TypeName::Kind::Mapping);
    REQUIRE(c.functions.size() == 2);
    const auto& w = c.functions[1];
    CHECK(w.signature() == "withdraw(uint256)");
    REQUIRE(w.body.size() == 3);

    CHECK(w.body[0].kind == StmtKind::Require);
    CHECK(w.body[0].op == "require");
    REQUIRE(w.body[0].exprs.size() == 1);
    CHECK(w.body[0].exprs[0].kind == ExprKind::BinaryOp);
    CHECK(w.body[0].exprs[0].text == ">=");
    CHECK(w.body[0].exprs[0].args[0].kind == ExprKind::IndexAccess);

    const auto& decl = w.body[1];
    CHECK(decl.kind == StmtKind::VarDecl);
    CHECK(decl.tuple_decl);
    REQUIRE(decl.decls.size() == 2);
    CHECK(decl.decls[0].name == "ok");
    CHECK(decl.decls[1].name.empty());
    REQUIRE(decl.exprs.size() == 1);
    const Expr& call = decl.exprs[0];
    CHECK(call.kind == ExprKind::LowLevelCall);
    CHECK(call.text == "call");
    REQUIRE(call.options.size() == 1);
    CHECK(call.options[0].name == "value");
    CHECK(call.options[0].value.kind == ExprKind::Identifier);
    CHECK(call.options[0].value.text == "amount");
    CHECK(call.args[0].kind == ExprKind::MemberAccess);
    CHECK(call.args[0].text == "sender");
    CHECK(call.loc.line == 12);

    CHECK(w.body[2].kind == StmtKind::Assign);
    CHECK(w.body[2].op == "-=");
}

TEST_CASE("assembly is rejected at the keyword") {
    auto src = testing::read_file(testing::fixture_path("rejected/assembly.sol"));
    try {
        parse_source(src, "assembly.sol");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.loc().line == 5);
        CHECK(e.loc().column == 9);
        CHECK(e.found().find("assembly") != std::string::npos);
    }
}

TEST_CASE("every rejected fixture raises one frontend error") {
    for (const char* name : {"assembly.sol", "library.sol", "try_catch.sol", "import.sol", "struct.sol", "bodiless.sol"}) {
        CAPTURE(name);
        auto src = testing::read_file(testing::fixture_path(std::string("rejected/") + name));
        CHECK_THROWS_AS(resolve_symbols(parse_source(src, name)), FrontendError);
    }
}

TEST_CASE("resolve balances and msg") {
    auto table = resolve_symbols(parse_file(testing::corpus_path("dao_withdraw.sol")));
    const auto& w = table.contracts[0].functions[1].def;
    const Expr& index = w.body[0].exprs[0].args[0];
    const Expr& base = index.args[0];
    CHECK(base.text == "balances");
    CHECK(base.binding.kind == Binding::Kind::StateVar);
    CHECK(base.binding.index == 0);
    const Expr& msg = index.args[1].args[0];
    CHECK(msg.text == "msg");
    CHECK(msg.binding.kind == Binding::Kind::Builtin);
}

TEST_CASE("inherited state is housed under the derived contract") {
    auto table = resolve_symbols(parse_file(testing::fixture_path("inherited_state.sol")));
    const auto* derived = table.find("DerivedBank");
    REQUIRE(derived != nullptr);
    CHECK(derived->is_leaf);
    CHECK_FALSE(table.find("BaseBank")->is_leaf);
    int bal = derived->find_state_var("balances");
    REQUIRE(bal >= 0);
    CHECK(derived->state_var_origin[bal] == "BaseBank");
    CHECK(derived->state_vars[bal].loc.line == 4);

    const ResolvedFunction* balance_of = nullptr;
    for (const auto& f : derived->functions)
        if (f.def.name == "balanceOf") balance_of = &f;
    REQUIRE(balance_of != nullptr);
    const Expr& ret = balance_of->def.body[0].exprs[0];
    CHECK(ret.args[0].binding.kind == Binding::Kind::StateVar);
    CHECK(ret.args[0].binding.index == bal);
}

TEST_CASE("undeclared identifier") {
    CHECK_THROWS_AS(resolve_symbols(parse_source("contract C { function f() public { y = 1; } }")), ResolveError);
}

TEST_CASE("diamond without override is ambiguous") {
    const char* src =
        "contract A { function f() public virtual {} }\n"
        "contract B is A { function f() public virtual override {} }\n"
        "contract C is A { function f() public virtual override {} }\n"
        "contract D is B, C {}\n";
    CHECK_THROWS_AS(resolve_symbols(parse_source(src)), ResolveError);
}

TEST_CASE("assigning a constant is rejected") {
    CHECK_THROWS_AS(
        resolve_symbols(parse_source("contract C { uint256 constant K = 1; function f() public { K = 2; } }")),
        ResolveError);
}

TEST_CASE("modifier bodies are spliced around the function body") {
    auto table = resolve_symbols(parse_source(
        "contract C { bool locked; uint256 x;\n"
        "  modifier lock() { require(!locked); locked = true; _; locked = false; }\n"
        "  function f() public lock { x = 1; } }"));
    const auto& body = table.contracts[0].functions[0].def.body;
    std::vector<StmtKind> kinds;
    std::function<void(const std::vector<Stmt>&)> flat = [&](const std::vector<Stmt>& b) {
        for (const auto& s : b) {
            if (s.kind == StmtKind::Block) flat(s.body);
            else kinds.push_back(s.kind);
        }
    };
    flat(body);
    CHECK(kinds == std::vector<StmtKind>{StmtKind::Require, StmtKind::Assign, StmtKind::Assign, StmtKind::Assign});
}

TEST_CASE("role assignment") {
    auto kw = KeywordSet::defaults();
    CHECK(assign_role("updatePrice(uint256)", kw) == Role::OracleUpdate);
    CHECK(assign_role("foo()", kw) == Role::Generic);
    CHECK(assign_role("safeTransferFrom(address,address,uint256)", kw) == Role::Transfer);
    CHECK(assign_role("withdraw(uint256)", kw) == Role::Withdraw);
    CHECK(assign_role("getPrice()", kw) == Role::PriceRead);
    CHECK(assign_role("_safeMint(address,uint256)", kw) == Role::Mint);
}

TEST_CASE("bundled keyword file equals the defaults") {
    auto file = load_keywords(testing::source_dir() + "/psr2-keywords.toml");
    auto def = KeywordSet::defaults();
    REQUIRE(file.groups.size() == def.groups.size());
    for (std::size_t i = 0; i < def.groups.size(); ++i) {
        CHECK(file.groups[i].role == def.groups[i].role);
        CHECK(file.groups[i].substrings == def.groups[i].substrings);
    }
}

TEST_CASE("keyword parse errors") {
    CHECK_THROWS(parse_keywords("withdraw = [\"a\""));
    CHECK_THROWS(parse_keywords("nonsense = [\"a\"]"));
    auto kw = parse_keywords("# comment\nmint = [\"Forge\"]\n");
    CHECK(assign_role("forgeToken()", kw) == Role::Mint);
    CHECK(assign_role("withdraw()", kw) == Role::Generic);
}
