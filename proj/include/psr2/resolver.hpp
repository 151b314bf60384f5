#pragma once

#include <string>
#include <vector>

#include "psr2/ast.hpp"

namespace psr2 {

struct LocalInfo {
    std::string name;
    TypeName type;
    SourceLoc loc;
};

// A function after inheritance flattening: modifier bodies are spliced around
// the body and every Identifier carries its Binding.
struct ResolvedFunction {
    FunctionDef def;
    std::string declared_in;
    std::vector<LocalInfo> locals;   // indexed by LocalDecl::local_id / Binding::index
};

struct ResolvedContract {
    std::string name;
    ContractKind kind = ContractKind::Contract;
    std::vector<std::string> linearization;   // base-most first, this contract last
    std::vector<StateVarDecl> state_vars;
    std::vector<std::string> state_var_origin;
    std::vector<ResolvedFunction> functions;
    std::vector<EventDef> events;
    // False when another contract in the unit inherits from this one.
    bool is_leaf = true;

    int find_state_var(const std::string& name) const;
};

struct SymbolTable {
    std::string file;
    std::vector<ResolvedContract> contracts;   // same order as SourceUnit::contracts

    const ResolvedContract* find(const std::string& name) const;
    bool is_contract_type(const std::string& name) const { return find(name) != nullptr; }
};

// Flattens inheritance (derived overrides base, diamonds without an override
// are rejected), inlines modifiers and binds identifiers. Throws ResolveError.
SymbolTable resolve_symbols(const SourceUnit& unit);

// Root declaration written by an l-value (`a[k].f = ...` -> a), or nullptr.
const Expr* lvalue_root(const Expr& e);

}  // namespace psr2
