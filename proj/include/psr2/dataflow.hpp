#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "psr2/resolver.hpp"

namespace psr2 {

// Sources a value may be derived from, through any chain of local definitions.
struct Origins {
    std::set<int> state;    // state variable indices
    std::set<int> params;   // parameter indices of the enclosing function
    std::set<int> locals;   // locals read along the way
    bool sender = false;    // msg.sender / tx.origin

    void merge(const Origins& o);
};

// Flow-insensitive def-use closure over the locals of one function.
class FunctionFlow {
public:
    explicit FunctionFlow(const ResolvedFunction& fn);

    Origins of(const Expr& e) const;
    const Origins& local(int id) const { return locals_.at(id); }

private:
    void collect(const Expr& e, Origins& out) const;

    std::vector<Origins> locals_;
};

// State variable accesses in first-occurrence order, each index at most once.
struct AccessSet {
    std::vector<int> reads;
    std::vector<int> writes;

    void add_read(int v);
    void add_write(int v);
};

// Accesses of one atomic statement (not descending into nested bodies).
AccessSet statement_accesses(const Stmt& s);
AccessSet expression_accesses(const Expr& e);

enum class CallKind {
    LowLevelCall,
    LowLevelDelegatecall,
    LowLevelStaticcall,
    Send,
    Transfer,
    ExternalMember,
    ImplicitCallback,
};

const char* to_string(CallKind kind);

struct CallSite {
    const Expr* expr = nullptr;
    bool external = false;     // false: plain internal call to `callee`
    CallKind kind = CallKind::ExternalMember;
    int callee = -1;           // internal target function, -1 if none
};

// Per-contract view used to classify call expressions.
class CallClassifier {
public:
    CallClassifier(const SymbolTable& table, const ResolvedContract& contract);

    // Call sites inside `e` in evaluation order (arguments before the call).
    std::vector<CallSite> sites(const Expr& e, const ResolvedFunction& fn) const;

    // Expressions whose origins decide the call target class.
    std::vector<const Expr*> target_exprs(const CallSite& site) const;

    std::optional<TypeName> static_type(const Expr& e, const ResolvedFunction& fn) const;
    bool is_contract_typed(const Expr& e, const ResolvedFunction& fn) const;

    const ResolvedContract& contract() const { return contract_; }

private:
    void walk(const Expr& e, const ResolvedFunction& fn, std::vector<CallSite>& out) const;

    const SymbolTable& table_;
    const ResolvedContract& contract_;
    std::vector<bool> receiver_helper_;   // function forwards to onERC721Received
};

// An atomic expression together with the guard conditions that structurally
// dominate it: enclosing if/while/for conditions and preceding require/assert
// (or `if (c) revert/return`) statements of the enclosing block chain.
struct GuardedExpr {
    const Expr* expr;
    const Stmt* stmt;
    std::vector<const Expr*> guards;
    bool is_condition;   // require/assert argument or branch/loop condition
};

void walk_guarded(const std::vector<Stmt>& body, const std::function<void(const GuardedExpr&)>& visit);

// Pre-order visit of every expression node under `e` (including `e`).
void for_each_expr(const Expr& e, const std::function<void(const Expr&)>& visit);

bool contains_node(const Expr& haystack, const Expr* needle);

}  // namespace psr2
