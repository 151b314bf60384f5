#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psr2/source_loc.hpp"

namespace psr2 {

// Semantic type of a declaration. `name` is the canonical spelling
// (uint -> uint256); mapping/array types keep their component types.
struct TypeName {
    enum class Kind { Elementary, Mapping, Array, UserDefined };

    Kind kind = Kind::Elementary;
    std::string name;              // Elementary / UserDefined
    std::vector<TypeName> inner;   // Mapping: {key, value}; Array: {element}
    bool payable = false;          // `address payable`
    std::string array_length;      // source text of a fixed length, empty if dynamic

    std::string str() const;
    // Spelling used in function signatures (contract types become address).
    std::string abi_str() const;
};

// What an identifier refers to, filled in by resolve_symbols.
struct Binding {
    enum class Kind { Unresolved, StateVar, Param, Local, Function, Builtin, Contract, Event };

    Kind kind = Kind::Unresolved;
    int index = -1;   // state var / param / local / function index; -1 otherwise
};

enum class ExprKind {
    Identifier,
    MemberAccess,
    IndexAccess,
    FunctionCall,
    LowLevelCall,
    BinaryOp,
    UnaryOp,
    Conditional,
    Literal,
    TupleExpr,
    ElementaryTypeExpr,
    Empty,   // omitted tuple component or index
};

enum class LiteralKind { Number, HexNumber, String, Bool };

struct CallOption;

struct Expr {
    ExprKind kind = ExprKind::Empty;
    SourceLoc loc;
    // Identifier: name. MemberAccess: member. BinaryOp/UnaryOp: operator.
    // Literal: source text. LowLevelCall: call|delegatecall|staticcall|send|transfer.
    // ElementaryTypeExpr: type name.
    std::string text;
    // MemberAccess: {base}. IndexAccess: {base, index}. FunctionCall: {callee, args...}.
    // LowLevelCall: {address, args...}. BinaryOp: {lhs, rhs}. UnaryOp: {operand}.
    // Conditional: {cond, then, else}. TupleExpr: components.
    std::vector<Expr> args;
    std::vector<CallOption> options;   // `{value: v, gas: g}` on calls
    LiteralKind literal = LiteralKind::Number;
    bool postfix = false;              // UnaryOp ++/-- written after the operand
    Binding binding;

    const Expr& callee() const { return args.front(); }
};

struct CallOption {
    std::string name;
    Expr value;
};

struct LocalDecl {
    std::string name;   // empty for an omitted tuple slot
    TypeName type;
    SourceLoc loc;
    int local_id = -1;  // assigned by resolve_symbols
};

enum class StmtKind {
    VarDecl,
    Assign,
    ExprStmt,
    If,
    While,
    For,
    Return,
    Require,   // require / assert / revert, op holds which
    Emit,
    Block,
    Break,
    Continue,
    Placeholder,   // `_;` inside a modifier body
};

struct Stmt {
    StmtKind kind = StmtKind::Block;
    SourceLoc loc;
    // Assign: "=", "+=", ... Require: "require" | "assert" | "revert".
    std::string op;
    // Condition of If / While / For (For may omit it).
    std::optional<Expr> cond;
    // Assign: {lhs, rhs}. ExprStmt / Emit: {expr}. Return: {} or {value}.
    // Require: call arguments. VarDecl: {} or {initializer}.
    std::vector<Expr> exprs;
    // Block / While / For body, If then-branch.
    std::vector<Stmt> body;
    std::vector<Stmt> else_body;
    bool has_else = false;
    // For: init statement (0 or 1) and post statement (0 or 1).
    std::vector<Stmt> init;
    std::vector<Stmt> post;
    // VarDecl: declared locals; more than one, or a tuple form, when parenthesized.
    std::vector<LocalDecl> decls;
    bool tuple_decl = false;
};

enum class Visibility { Public, External, Internal, Private };
enum class StateMutability { Payable, NonPayable, View, Pure };
enum class VarMutability { Mutable, Constant, Immutable };

const char* to_string(Visibility v);
const char* to_string(StateMutability m);

struct Param {
    std::string name;   // may be empty
    TypeName type;
    std::string location;   // memory / storage / calldata, empty if absent
    bool indexed = false;
    SourceLoc loc;
};

struct StateVarDecl {
    std::string name;
    TypeName type;
    VarMutability mutability = VarMutability::Mutable;
    Visibility visibility = Visibility::Internal;
    std::optional<Expr> initializer;
    SourceLoc loc;
};

struct ModifierInvocation {
    std::string name;
    std::vector<Expr> args;
    SourceLoc loc;
};

enum class FunctionKind { Function, Constructor, Receive, Fallback };

struct FunctionDef {
    std::string name;
    FunctionKind kind = FunctionKind::Function;
    std::vector<Param> params;
    std::vector<Param> returns;
    Visibility visibility = Visibility::Public;
    StateMutability mutability = StateMutability::NonPayable;
    std::vector<ModifierInvocation> modifiers_applied;
    bool is_virtual = false;
    bool is_override = false;
    bool has_body = false;
    std::vector<Stmt> body;
    SourceLoc loc;

    // name(type,type,...) with ABI type spellings.
    std::string signature() const;
};

struct ModifierDef {
    std::string name;
    std::vector<Param> params;
    std::vector<Stmt> body;
    SourceLoc loc;
};

struct EventDef {
    std::string name;
    std::vector<Param> params;
    SourceLoc loc;
};

enum class ContractKind { Contract, Interface };

struct ContractDef {
    std::string name;
    ContractKind kind = ContractKind::Contract;
    std::vector<std::string> bases;
    std::vector<StateVarDecl> state_vars;
    std::vector<FunctionDef> functions;
    std::vector<ModifierDef> modifiers;
    std::vector<EventDef> events;
    SourceLoc loc;
};

struct SourceUnit {
    std::string file;
    std::string pragma;
    std::vector<ContractDef> contracts;
};

}  // namespace psr2
