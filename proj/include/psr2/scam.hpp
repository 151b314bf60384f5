#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "psr2/dataflow.hpp"
#include "psr2/keywords.hpp"

namespace psr2 {

struct FunctionDescriptor {
    int id = -1;
    std::string name;         // full signature
    Role role = Role::Generic;
    std::string short_name;   // bare function name
    std::string contract;
    int contract_index = -1;  // into SymbolTable::contracts
    int function_index = -1;  // into ResolvedContract::functions
    bool is_constructor = false;
};

enum class AccessKind { Read, Write, RW };

const char* to_string(AccessKind kind);

struct VariableDescriptor {
    int id = -1;
    std::string name;
    TypeName type;
    VarMutability mutability = VarMutability::Mutable;
    std::string contract;
    int contract_index = -1;
    int state_index = -1;     // into ResolvedContract::state_vars
    SourceLoc loc;
    std::map<int, AccessKind> accesses;   // function id -> kind
};

enum class CallTarget { Fixed, Stored, UserInput };

const char* to_string(CallTarget t);

struct CallFact {
    int id = -1;
    SourceLoc loc;
    CallKind kind = CallKind::ExternalMember;
    CallTarget tgt = CallTarget::Stored;
    std::set<int> deps;                 // variable ids
    bool returns_checked_hint = false;
    int enclosing_function = -1;
    std::string target_text;            // printed target expression
    // Set when the call sits in an internal callee inlined at `via`.
    int inlined_from = -1;              // function id of the callee, -1 if direct
    const Expr* via = nullptr;
    const Expr* expr = nullptr;         // the call expression in the analysed body
    // Locals bound to the call's result in the function whose body holds `expr`.
    std::set<int> result_locals;
};

struct SemanticRepository {
    std::vector<FunctionDescriptor> functions;
    std::vector<VariableDescriptor> variables;
    std::vector<CallFact> calls;
    KeywordSet keywords;

    int variable_id(int contract_index, int state_index) const;
    int function_id(int contract_index, int function_index) const;
    // Fact for call `expr`, reached through internal call `via` (nullptr when direct).
    int find_fact(int function, const Expr* via, const Expr* expr) const;

    std::map<std::pair<int, int>, int> var_index_;
    std::map<std::pair<int, int>, int> fn_index_;
};

// Contracts whose functions are analysed: concrete leaf contracts.
bool analysed_contract(const ResolvedContract& c);

std::vector<FunctionDescriptor> profile_functions(const SymbolTable& table, const KeywordSet& keywords);
std::vector<VariableDescriptor> profile_state_vars(const SymbolTable& table,
                                                   const std::vector<FunctionDescriptor>& functions);
std::vector<CallFact> extract_call_facts(const SymbolTable& table, const std::vector<FunctionDescriptor>& functions,
                                         const std::vector<VariableDescriptor>& vars);

// Dependency set of the call `site` located at `guarded` in function `fn` of `contract`.
std::set<int> compute_dependency_set(const SymbolTable& table, int contract_index, const ResolvedFunction& fn,
                                     const GuardedExpr& guarded, const CallSite& site,
                                     const std::vector<VariableDescriptor>& vars);

SemanticRepository build_repository(const SymbolTable& table, const KeywordSet& keywords = KeywordSet::defaults());

}  // namespace psr2
