#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "saga/diagnostics.hpp"

// Language-agnostic model of the object-oriented code we generate. Every dialect
// renderer works from this tree; nothing here knows about concrete syntax.
namespace saga::code {

/// Owning, deep-copying pointer so recursive IR nodes keep value semantics.
template <typename T>
class Box {
public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {} // NOLINT(google-explicit-constructor)
    Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& other) {
        if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;
    ~Box() = default;

    const T& operator*() const { return *ptr_; }
    const T* operator->() const { return ptr_.get(); }

    bool operator==(const Box& other) const { return *ptr_ == *other.ptr_; }

private:
    std::unique_ptr<T> ptr_;
};

// ---------------------------------------------------------------------------
// Types

enum class ObjectType { Node, NodeTransition, Section, SectionTransition, Story, StoryManager };
enum class BaseType { Bool, Int, String };
enum class Scope { Private, Public };

std::string class_name(ObjectType t);

struct StateType;

struct ListType {
    Box<StateType> element;
    bool operator==(const ListType&) const = default;
};

struct StateType {
    std::variant<ObjectType, BaseType, ListType> kind;
    bool operator==(const StateType&) const = default;
};

struct VoidType {
    bool operator==(const VoidType&) const = default;
};

struct Construct {
    std::string name;
    bool operator==(const Construct&) const = default;
};

struct TransType {
    std::variant<StateType, VoidType, Construct> kind;
    bool operator==(const TransType&) const = default;
};

/// Nesting depth of List constructors (0 for a plain type).
int list_depth(const StateType& t);

struct Parameter;

struct StateParam {
    std::string name;
    StateType type;
    bool operator==(const StateParam&) const = default;
};

struct FuncParam {
    std::string name;
    TransType type;
    std::vector<Parameter> params;
    bool operator==(const FuncParam&) const;
};

struct Parameter {
    std::variant<StateParam, FuncParam> kind;
    bool operator==(const Parameter&) const = default;
    const std::string& name() const;
};

struct StateVar {
    std::string name;
    Scope scope = Scope::Private;
    StateType type;
    bool operator==(const StateVar&) const = default;
};

// ---------------------------------------------------------------------------
// Values

using Literal = std::variant<bool, std::int64_t, std::string>;

struct Value;

struct Var {
    std::string name;
    bool operator==(const Var&) const = default;
};

struct Lit {
    Literal literal;
    bool operator==(const Lit&) const = default;
};

struct ObjVar {
    Box<Value> object;
    std::string field;
    bool operator==(const ObjVar&) const = default;
};

struct MethodCall {
    std::string name;
    std::vector<Value> args;
    bool operator==(const MethodCall&) const;
};

/// Operations on the dialect's list type. These are the "known externals" the
/// validator accepts without a declaration.
enum class ListOpKind { Insert, Append, Size, Contains };

struct ListOp {
    ListOpKind op;
    std::vector<Value> args;
    bool operator==(const ListOp&) const;
};

struct ObjAccess {
    Box<Value> object;
    std::variant<MethodCall, ListOp> function;
    bool operator==(const ObjAccess&) const = default;
};

enum class BinaryOp { Less, Equal, And, Add };

struct BinOp {
    BinaryOp op;
    Box<Value> lhs;
    Box<Value> rhs;
    bool operator==(const BinOp&) const = default;
};

struct New {
    StateType type;
    std::vector<Value> args;
    bool operator==(const New&) const;
};

struct Call {
    std::string name;
    std::vector<Value> args;
    bool operator==(const Call&) const;
};

struct ListIndex {
    Box<Value> list;
    Box<Value> index;
    bool operator==(const ListIndex&) const = default;
};

struct Value {
    std::variant<Var, Lit, ObjVar, ObjAccess, BinOp, New, Call, ListIndex> kind;
    bool operator==(const Value&) const = default;

    bool is_lvalue() const;
};

// ---------------------------------------------------------------------------
// Statements

struct VarDec {
    std::string name;
    StateType type;
    bool operator==(const VarDec&) const = default;
};

struct ListDec {
    std::string name;
    StateType element;
    int capacity = 0;
    bool operator==(const ListDec&) const = default;
};

/// A list initialized from literals. `element_label` is the readable description of
/// what the elements mean; renderers attach it as a trailing comment.
struct ListDecLiterals {
    std::string name;
    std::string element_label;
    StateType element;
    std::vector<Literal> literals;
    bool operator==(const ListDecLiterals&) const = default;
};

struct VarDecDef {
    std::string name;
    StateType type;
    Value init;
    bool operator==(const VarDecDef&) const = default;
};

struct ObjDecDef {
    std::string name;
    StateType type;
    Value init;
    bool operator==(const ObjDecDef&) const = default;
};

struct Declaration {
    std::variant<VarDec, ListDec, ListDecLiterals, VarDecDef, ObjDecDef> kind;
    bool operator==(const Declaration&) const = default;
    const std::string& name() const;
};

struct Assign {
    Value target;
    Value source;
    bool operator==(const Assign&) const = default;
};

struct Block;

struct Conditional {
    Value condition;
    std::vector<Block> then_body;
    std::vector<Block> else_body;
    bool operator==(const Conditional&) const;
};

/// `while (condition) { body }`
struct Iteration {
    Value condition;
    std::vector<Block> body;
    bool operator==(const Iteration&) const;
};

enum class Jump { Break, Continue };

struct Return {
    std::optional<Value> value;
    bool operator==(const Return&) const = default;
};

struct ValueStatement {
    Value value;
    bool operator==(const ValueStatement&) const = default;
};

struct Comment {
    std::string text;
    bool operator==(const Comment&) const = default;
};

/// `// text ----` padded with dashes so the rendered line ends before column `width`.
struct CommentDelimit {
    std::string text;
    int width = 80;
    bool operator==(const CommentDelimit&) const = default;
};

struct Statement {
    std::variant<Assign, Declaration, Conditional, Iteration, Jump, Return, ValueStatement, Comment, CommentDelimit>
        kind;
    bool operator==(const Statement&) const = default;
};

/// Layout-only grouping; renderers separate blocks with a blank line.
struct Block {
    std::vector<Statement> statements;
    bool operator==(const Block&) const;
};

using Body = std::vector<Block>;

struct Transformation {
    std::string name;
    Scope scope = Scope::Public;
    TransType type;
    std::vector<Parameter> params;
    Body body;
    bool operator==(const Transformation&) const = default;

    bool is_constructor() const { return std::holds_alternative<Construct>(type.kind); }
};

struct CodeModule {
    std::string name;
    Scope scope = Scope::Public;
    std::vector<StateVar> vars;
    std::vector<Transformation> funcs;
    bool operator==(const CodeModule&) const = default;
};

struct Package {
    std::string name;
    std::vector<CodeModule> modules;
    bool operator==(const Package&) const = default;
};

struct AbstractCode {
    Package package;
    bool operator==(const AbstractCode&) const = default;
};

// ---------------------------------------------------------------------------
// Builders

StateType object(ObjectType t);
StateType base(BaseType t);
StateType list_of(StateType element);
StateType node_t();
StateType node_trans_t();
StateType sect_t();
StateType sect_trans_t();
StateType story_t();
StateType story_man_t();
StateType string_t();
StateType bool_t();
StateType int_t();

TransType typ(StateType t);
TransType void_t();
TransType construct(std::string name);

CodeModule pub_module(std::string name, std::vector<StateVar> vars, std::vector<Transformation> funcs);
CodeModule priv_module(std::string name, std::vector<StateVar> vars, std::vector<Transformation> funcs);
StateVar priv_var(StateType type, std::string name);
StateVar pub_var(StateType type, std::string name);
Transformation pub_func(TransType type, std::string name, std::vector<Parameter> params, Body body);
Transformation priv_func(TransType type, std::string name, std::vector<Parameter> params, Body body);
Parameter param(std::string name, StateType type);
Parameter func_param(std::string name, TransType type, std::vector<Parameter> params);

Block block(std::vector<Statement> statements);
/// A body made of exactly one block holding one statement.
Body one_liner(Statement statement);

Value var(std::string name);
Value lit(std::string text);
Value lit(const char* text);
Value lit(std::int64_t number);
Value lit(bool flag);
Value obj_var(Value object, std::string field);
/// `object.method(args)`
Value access(Value object, std::string method, std::vector<Value> args = {});
Value binop(BinaryOp op, Value lhs, Value rhs);
/// `name < value`
Value less(std::string name, Value rhs);
Value equal(Value lhs, Value rhs);
Value and_(Value lhs, Value rhs);
Value add(Value lhs, Value rhs);
Value new_obj(StateType type, std::vector<Value> args = {});
Value call(std::string name, std::vector<Value> args = {});
Value list_index(Value list, Value index);
Value list_size(Value list);
Value list_contains(Value list, Value element);

/// Unchecked assignment; validate_ir reports non-l-value targets.
Statement assign(Value target, Value source);
/// Checked assignment: throws SagaError(NotAnLValue) unless target is a Var or ObjVar.
Statement assign_lvalue(Value target, Value source);
/// `name = source`, for fields and locals.
Statement assign_to(std::string name, Value source);
Statement return_var(std::string name);
Statement ret(Value value);
Statement ret_void();
Statement value_stmt(Value value);
Statement list_insert(Value list, Value index, Value element);
Statement list_append(Value list, Value element);
Statement var_dec(std::string name, StateType type);
Statement list_dec(std::string name, StateType element, int capacity);
Statement list_dec_literals(std::string name, std::string element_label, StateType element,
                            std::vector<Literal> literals);
Statement var_dec_def(std::string name, StateType type, Value init);
Statement obj_dec_def(std::string name, StateType type, Value init);
Statement if_then(Value condition, Body then_body, Body else_body = {});
Statement while_loop(Value condition, Body body);
Statement break_stmt();
Statement continue_stmt();
Statement comment(std::string text);
Statement comment_delimit(std::string text, int width = 80);

// ---------------------------------------------------------------------------
// Checks and debug output

/// Uniqueness, constructor naming, l-values and name resolution within the package.
std::vector<Diagnostic> validate_ir(const AbstractCode& code);

/// Merges all blocks of every body (recursively) into one block each.
AbstractCode flatten_blocks(AbstractCode code);

nlohmann::ordered_json to_json(const AbstractCode& code);
nlohmann::ordered_json to_json(const CodeModule& module);

} // namespace saga::code
