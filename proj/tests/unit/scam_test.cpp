#include <doctest.h>

#include "psr2/scam.hpp"
#include "../support.hpp"

using namespace psr2;
using testing::analysis_of;
using testing::analysis_of_file;
using testing::function_named;
using testing::variable_named;

namespace {

const CallFact* only_fact_in(const SemanticRepository& repo, int fn) {
    const CallFact* out = nullptr;
    for (const auto& c : repo.calls) {
        if (c.enclosing_function != fn) continue;
        if (out) return nullptr;
        out = &c;
    }
    return out;
}

}  // namespace

TEST_CASE("dao function profiles") {
    auto a = analysis_of_file(testing::corpus_path("dao_withdraw.sol"));
    const auto& fns = a->repo.functions;
    REQUIRE(fns.size() == 2);
    CHECK(fns[0].id == 0);
    CHECK(fns[0].name == "deposit()");
    CHECK(fns[0].role == Role::Generic);
    CHECK(fns[1].id == 1);
    CHECK(fns[1].name == "withdraw(uint256)");
    CHECK(fns[1].role == Role::Withdraw);
}

TEST_CASE("empty contract has an empty repository") {
    auto a = analysis_of("contract E {}");
    CHECK(a->repo.functions.empty());
    CHECK(a->repo.variables.empty());
    CHECK(a->repo.calls.empty());
}

TEST_CASE("overridden function yields one descriptor") {
    auto a = analysis_of_file(testing::fixture_path("inherited_state.sol"));
    const auto& fns = a->repo.functions;
    REQUIRE(fns.size() == 3);
    int deposits = 0;
    for (const auto& f : fns) {
        CHECK(f.contract == "DerivedBank");
        if (f.short_name == "deposit") ++deposits;
    }
    CHECK(deposits == 1);
    int bal = variable_named(a->repo, "balances");
    REQUIRE(bal >= 0);
    CHECK(a->repo.variables[bal].contract == "DerivedBank");
    CHECK(a->repo.variables[bal].accesses.at(function_named(a->repo, "deposit")) == AccessKind::RW);
    CHECK(a->repo.variables[bal].accesses.at(function_named(a->repo, "balanceOf")) == AccessKind::Read);
    // quoteFee is reached from deposit but does not touch balances itself.
    CHECK(a->repo.variables[bal].accesses.count(function_named(a->repo, "quoteFee")) == 0);
}

TEST_CASE("access kinds") {
    auto w = analysis_of(testing::in_contract("x = 1;"));
    CHECK(w->repo.variables[variable_named(w->repo, "x")].accesses.at(0) == AccessKind::Write);

    auto rw = analysis_of(testing::in_contract("balances[msg.sender] -= a;"));
    const auto& bal = rw->repo.variables[variable_named(rw->repo, "balances")];
    CHECK(bal.accesses.at(0) == AccessKind::RW);
    CHECK(rw->repo.variables[variable_named(rw->repo, "x")].accesses.empty());

    auto r = analysis_of(testing::in_contract("uint256 y = total + 1;"));
    CHECK(r->repo.variables[variable_named(r->repo, "total")].accesses.at(0) == AccessKind::Read);

    auto dao = analysis_of_file(testing::corpus_path("dao_withdraw.sol"));
    CHECK(dao->repo.variables[0].accesses.at(1) == AccessKind::RW);
    CHECK(dao->repo.variables[0].accesses.at(0) == AccessKind::RW);
}

TEST_CASE("dao call fact") {
    auto a = analysis_of_file(testing::corpus_path("dao_withdraw.sol"));
    REQUIRE(a->repo.calls.size() == 1);
    const auto& c = a->repo.calls[0];
    CHECK(c.kind == CallKind::LowLevelCall);
    CHECK(c.tgt == CallTarget::UserInput);
    CHECK(c.enclosing_function == 1);
    CHECK(c.loc.line == 12);
    CHECK(c.loc.column == 23);
    CHECK(c.target_text == "msg.sender");
    CHECK(c.deps == std::set<int>{0});
    CHECK_FALSE(c.returns_checked_hint);
    CHECK(std::string(to_string(c.kind)) == "low_level_call");
}

TEST_CASE("immutable set in the constructor is a fixed target") {
    auto a = analysis_of_file(testing::corpus_path("oracle_fixed.sol"));
    const CallFact* c = only_fact_in(a->repo, function_named(a->repo, "refreshPrice"));
    REQUIRE(c != nullptr);
    CHECK(c->kind == CallKind::ExternalMember);
    CHECK(c->tgt == CallTarget::Fixed);
}

TEST_CASE("_safeMint is an implicit callback with a user target") {
    auto a = analysis_of(
        "contract M { mapping(uint256 => address) owners; uint256 minted;\n"
        "  function _safeMint(address to, uint256 id) internal { owners[id] = to; }\n"
        "  function mint(address to, uint256 id) public { _safeMint(to, id); minted += 1; } }");
    const CallFact* c = only_fact_in(a->repo, function_named(a->repo, "mint"));
    REQUIRE(c != nullptr);
    CHECK(c->kind == CallKind::ImplicitCallback);
    CHECK(c->tgt == CallTarget::UserInput);
    CHECK(c->target_text == "to");
}

TEST_CASE("dependency sets") {
    auto dao = analysis_of_file(testing::corpus_path("dao_withdraw.sol"));
    CHECK(dao->repo.calls[0].deps == std::set<int>{variable_named(dao->repo, "balances")});

    auto lit = analysis_of(testing::in_contract("payable(address(0x1)).transfer(1);"));
    REQUIRE(lit->repo.calls.size() == 1);
    CHECK(lit->repo.calls[0].deps.empty());

    auto push = analysis_of_file(testing::corpus_path("oracle_push.sol"));
    const CallFact* c = only_fact_in(push->repo, function_named(push->repo, "updatePrice"));
    REQUIRE(c != nullptr);
    CHECK(c->deps.count(variable_named(push->repo, "price")) == 1);
    // The target is loaded from `subscriber` through a local.
    CHECK(c->deps.count(variable_named(push->repo, "subscriber")) == 1);
    CHECK(c->tgt == CallTarget::Stored);
    CHECK(c->returns_checked_hint);
}

TEST_CASE("guards that dominate the call join the dependency set") {
    auto a = analysis_of(testing::in_contract("if (total > 5) { t.transfer(a); }\nrequire(x == 0);\nt.transfer(a);"));
    REQUIRE(a->repo.calls.size() == 2);
    int total = variable_named(a->repo, "total"), x = variable_named(a->repo, "x");
    CHECK(a->repo.calls[0].deps == std::set<int>{total});
    CHECK(a->repo.calls[1].deps == std::set<int>{x});
    CHECK(a->repo.calls[0].tgt == CallTarget::UserInput);
}

TEST_CASE("repository counts") {
    auto dao = analysis_of_file(testing::corpus_path("dao_withdraw.sol"));
    CHECK(dao->repo.functions.size() == 2);
    CHECK(dao->repo.variables.size() == 1);
    CHECK(dao->repo.calls.size() == 1);

    auto auction = analysis_of_file(testing::corpus_path("erc721_auction.sol"));
    int implicit = 0;
    for (const auto& c : auction->repo.calls) implicit += c.kind == CallKind::ImplicitCallback;
    CHECK(implicit == 1);
    // Interface functions are not analysed.
    CHECK(function_named(auction->repo, "safeTransferFrom") == -1);
}

TEST_CASE("inlined internal calls carry their own fact") {
    auto a = analysis_of(testing::in_contract("pay(t, a);\ntotal -= a;",
                                              "    function pay(address payable r, uint256 v) internal { "
                                              "(bool ok, ) = r.call{value: v}(\"\"); require(ok); }\n"));
    int f = function_named(a->repo, "f"), pay = function_named(a->repo, "pay");
    int via_f = 0, direct = 0;
    for (const auto& c : a->repo.calls) {
        if (c.enclosing_function == f) {
            ++via_f;
            CHECK(c.inlined_from == pay);
            CHECK(c.via != nullptr);
            CHECK(c.tgt == CallTarget::UserInput);
            CHECK(c.returns_checked_hint);
        }
        if (c.enclosing_function == pay) ++direct;
    }
    CHECK(via_f == 1);
    CHECK(direct == 1);
}
