#include "saga/abstract_code.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace saga::code {

bool FuncParam::operator==(const FuncParam&) const = default;
bool MethodCall::operator==(const MethodCall&) const = default;
bool ListOp::operator==(const ListOp&) const = default;
bool New::operator==(const New&) const = default;
bool Call::operator==(const Call&) const = default;
bool Conditional::operator==(const Conditional&) const = default;
bool Iteration::operator==(const Iteration&) const = default;
bool Block::operator==(const Block&) const = default;

std::string class_name(ObjectType t) {
    switch (t) {
        case ObjectType::Node: return "Node";
        case ObjectType::NodeTransition: return "NodeTransition";
        case ObjectType::Section: return "Section";
        case ObjectType::SectionTransition: return "SectionTransition";
        case ObjectType::Story: return "Story";
        case ObjectType::StoryManager: return "StoryManager";
    }
    return "Node";
}

int list_depth(const StateType& t) {
    if (const auto* l = std::get_if<ListType>(&t.kind)) return 1 + list_depth(*l->element);
    return 0;
}

const std::string& Parameter::name() const {
    return std::visit([](const auto& p) -> const std::string& { return p.name; }, kind);
}

bool Value::is_lvalue() const { return std::holds_alternative<Var>(kind) || std::holds_alternative<ObjVar>(kind); }

const std::string& Declaration::name() const {
    return std::visit([](const auto& d) -> const std::string& { return d.name; }, kind);
}

// ---------------------------------------------------------------------------
// Builders

StateType object(ObjectType t) { return {t}; }
StateType base(BaseType t) { return {t}; }
StateType list_of(StateType element) { return {ListType{std::move(element)}}; }
StateType node_t() { return object(ObjectType::Node); }
StateType node_trans_t() { return object(ObjectType::NodeTransition); }
StateType sect_t() { return object(ObjectType::Section); }
StateType sect_trans_t() { return object(ObjectType::SectionTransition); }
StateType story_t() { return object(ObjectType::Story); }
StateType story_man_t() { return object(ObjectType::StoryManager); }
StateType string_t() { return base(BaseType::String); }
StateType bool_t() { return base(BaseType::Bool); }
StateType int_t() { return base(BaseType::Int); }

TransType typ(StateType t) { return {std::move(t)}; }
TransType void_t() { return {VoidType{}}; }
TransType construct(std::string name) { return {Construct{std::move(name)}}; }

CodeModule pub_module(std::string name, std::vector<StateVar> vars, std::vector<Transformation> funcs) {
    return {std::move(name), Scope::Public, std::move(vars), std::move(funcs)};
}

CodeModule priv_module(std::string name, std::vector<StateVar> vars, std::vector<Transformation> funcs) {
    return {std::move(name), Scope::Private, std::move(vars), std::move(funcs)};
}

StateVar priv_var(StateType type, std::string name) { return {std::move(name), Scope::Private, std::move(type)}; }
StateVar pub_var(StateType type, std::string name) { return {std::move(name), Scope::Public, std::move(type)}; }

Transformation pub_func(TransType type, std::string name, std::vector<Parameter> params, Body body) {
    return {std::move(name), Scope::Public, std::move(type), std::move(params), std::move(body)};
}

Transformation priv_func(TransType type, std::string name, std::vector<Parameter> params, Body body) {
    return {std::move(name), Scope::Private, std::move(type), std::move(params), std::move(body)};
}

Parameter param(std::string name, StateType type) { return {StateParam{std::move(name), std::move(type)}}; }

Parameter func_param(std::string name, TransType type, std::vector<Parameter> params) {
    return {FuncParam{std::move(name), std::move(type), std::move(params)}};
}

Block block(std::vector<Statement> statements) { return {std::move(statements)}; }
Body one_liner(Statement statement) { return {Block{{std::move(statement)}}}; }

Value var(std::string name) { return {Var{std::move(name)}}; }
Value lit(std::string text) { return {Lit{Literal{std::move(text)}}}; }
Value lit(const char* text) { return lit(std::string(text)); }
Value lit(std::int64_t number) { return {Lit{Literal{number}}}; }
Value lit(bool flag) { return {Lit{Literal{flag}}}; }
Value obj_var(Value object, std::string field) { return {ObjVar{std::move(object), std::move(field)}}; }

Value access(Value object, std::string method, std::vector<Value> args) {
    return {ObjAccess{std::move(object), MethodCall{std::move(method), std::move(args)}}};
}

Value binop(BinaryOp op, Value lhs, Value rhs) { return {BinOp{op, std::move(lhs), std::move(rhs)}}; }
Value less(std::string name, Value rhs) { return binop(BinaryOp::Less, var(std::move(name)), std::move(rhs)); }
Value equal(Value lhs, Value rhs) { return binop(BinaryOp::Equal, std::move(lhs), std::move(rhs)); }
Value and_(Value lhs, Value rhs) { return binop(BinaryOp::And, std::move(lhs), std::move(rhs)); }
Value add(Value lhs, Value rhs) { return binop(BinaryOp::Add, std::move(lhs), std::move(rhs)); }
Value new_obj(StateType type, std::vector<Value> args) { return {New{std::move(type), std::move(args)}}; }
Value call(std::string name, std::vector<Value> args) { return {Call{std::move(name), std::move(args)}}; }
Value list_index(Value list, Value index) { return {ListIndex{std::move(list), std::move(index)}}; }

Value list_size(Value list) { return {ObjAccess{std::move(list), ListOp{ListOpKind::Size, {}}}}; }

Value list_contains(Value list, Value element) {
    return {ObjAccess{std::move(list), ListOp{ListOpKind::Contains, {std::move(element)}}}};
}

Statement assign(Value target, Value source) { return {Assign{std::move(target), std::move(source)}}; }

Statement assign_lvalue(Value target, Value source) {
    if (!target.is_lvalue())
        throw SagaError({Level::Error, "NotAnLValue", "assignment target must be a variable or object field", {}});
    return assign(std::move(target), std::move(source));
}

Statement assign_to(std::string name, Value source) { return assign(var(std::move(name)), std::move(source)); }
Statement return_var(std::string name) { return ret(var(std::move(name))); }
Statement ret(Value value) { return {Return{std::move(value)}}; }
Statement ret_void() { return {Return{std::nullopt}}; }
Statement value_stmt(Value value) { return {ValueStatement{std::move(value)}}; }

Statement list_insert(Value list, Value index, Value element) {
    return value_stmt({ObjAccess{std::move(list), ListOp{ListOpKind::Insert, {std::move(index), std::move(element)}}}});
}

Statement list_append(Value list, Value element) {
    return value_stmt({ObjAccess{std::move(list), ListOp{ListOpKind::Append, {std::move(element)}}}});
}

Statement var_dec(std::string name, StateType type) { return {Declaration{VarDec{std::move(name), std::move(type)}}}; }

Statement list_dec(std::string name, StateType element, int capacity) {
    return {Declaration{ListDec{std::move(name), std::move(element), capacity}}};
}

Statement list_dec_literals(std::string name, std::string element_label, StateType element,
                            std::vector<Literal> literals) {
    return {Declaration{
        ListDecLiterals{std::move(name), std::move(element_label), std::move(element), std::move(literals)}}};
}

Statement var_dec_def(std::string name, StateType type, Value init) {
    return {Declaration{VarDecDef{std::move(name), std::move(type), std::move(init)}}};
}

Statement obj_dec_def(std::string name, StateType type, Value init) {
    return {Declaration{ObjDecDef{std::move(name), std::move(type), std::move(init)}}};
}

Statement if_then(Value condition, Body then_body, Body else_body) {
    return {Conditional{std::move(condition), std::move(then_body), std::move(else_body)}};
}

Statement while_loop(Value condition, Body body) { return {Iteration{std::move(condition), std::move(body)}}; }
Statement break_stmt() { return {Jump::Break}; }
Statement continue_stmt() { return {Jump::Continue}; }
Statement comment(std::string text) { return {Comment{std::move(text)}}; }
Statement comment_delimit(std::string text, int width) { return {CommentDelimit{std::move(text), width}}; }

// ---------------------------------------------------------------------------
// Validation

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t list_op_arity(ListOpKind op) {
    switch (op) {
        case ListOpKind::Insert: return 2;
        case ListOpKind::Append: return 1;
        case ListOpKind::Size: return 0;
        case ListOpKind::Contains: return 1;
    }
    return 0;
}

class Validator {
public:
    explicit Validator(const AbstractCode& code) : code_(code) {
        for (const auto& m : code.package.modules) {
            for (const auto& v : m.vars) all_fields_.insert(v.name);
            for (const auto& f : m.funcs) all_methods_.insert(f.name);
            module_names_.insert(m.name);
        }
    }

    std::vector<Diagnostic> run() {
        std::set<std::string> seen_modules;
        for (const auto& m : code_.package.modules) {
            if (!seen_modules.insert(m.name).second)
                report("DuplicateModule", "module \"" + m.name + "\" is defined more than once");
            check_module(m);
        }
        return std::move(out_);
    }

private:
    void report(std::string code, std::string message) {
        out_.push_back({Level::Error, std::move(code), where_ + message, {}});
    }

    void check_module(const CodeModule& m) {
        module_ = &m;
        where_ = m.name + ": ";
        std::set<std::string> members;
        for (const auto& v : m.vars)
            if (!members.insert(v.name).second) report("DuplicateMember", "member \"" + v.name + "\" is duplicated");
        for (const auto& f : m.funcs)
            if (!members.insert(f.name).second) report("DuplicateMember", "member \"" + f.name + "\" is duplicated");
        for (const auto& v : m.vars) check_type(v.type);
        for (const auto& f : m.funcs) check_function(m, f);
    }

    void check_function(const CodeModule& m, const Transformation& f) {
        where_ = m.name + "." + f.name + ": ";
        if (const auto* c = std::get_if<Construct>(&f.type.kind)) {
            if (c->name != m.name || f.name != m.name)
                report("BadConstructor", "constructor must be named after its module \"" + m.name + "\"");
        } else if (f.name == m.name) {
            report("BadConstructor", "only a constructor may be named after its module");
        }
        if (const auto* t = std::get_if<StateType>(&f.type.kind)) check_type(*t);

        scope_.clear();
        for (const auto& v : m.vars) scope_.insert(v.name);
        for (const auto& p : f.params) scope_.insert(p.name());
        constructor_ = f.is_constructor();
        check_body(f.body);
        where_ = m.name + ": ";
    }

    void check_type(const StateType& t) {
        std::visit(overloaded{[&](ObjectType o) {
                                  if (!module_names_.count(class_name(o)))
                                      report("UnresolvedType", "type \"" + class_name(o) + "\" has no module");
                              },
                              [](BaseType) {}, [&](const ListType& l) { check_type(*l.element); }},
                   t.kind);
    }

    void check_body(const Body& body) {
        for (const auto& b : body)
            for (const auto& s : b.statements) check_statement(s);
    }

    void check_statement(const Statement& s) {
        std::visit(overloaded{
                       [&](const Assign& a) {
                           if (!a.target.is_lvalue())
                               report("NotAnLValue", "assignment target must be a variable or object field");
                           check_value(a.target);
                           check_value(a.source);
                       },
                       [&](const Declaration& d) { check_declaration(d); },
                       [&](const Conditional& c) {
                           check_value(c.condition);
                           check_body(c.then_body);
                           check_body(c.else_body);
                       },
                       [&](const Iteration& i) {
                           check_value(i.condition);
                           check_body(i.body);
                       },
                       [](Jump) {},
                       [&](const Return& r) {
                           if (r.value) {
                               if (constructor_) report("BadConstructor", "a constructor cannot return a value");
                               check_value(*r.value);
                           }
                       },
                       [&](const ValueStatement& v) { check_value(v.value); },
                       [](const Comment&) {},
                       [&](const CommentDelimit& c) {
                           if (c.width < static_cast<int>(c.text.size()) + 4)
                               report("BadCommentWidth", "banner width is too small for \"" + c.text + "\"");
                       },
                   },
                   s.kind);
    }

    void check_declaration(const Declaration& d) {
        std::visit(overloaded{
                       [&](const VarDec& v) { check_type(v.type); },
                       [&](const ListDec& l) {
                           check_type(l.element);
                           if (l.capacity < 0) report("NegativeCapacity", "list \"" + l.name + "\" has capacity < 0");
                       },
                       [&](const ListDecLiterals& l) { check_type(l.element); },
                       [&](const VarDecDef& v) {
                           check_type(v.type);
                           check_value(v.init);
                       },
                       [&](const ObjDecDef& o) {
                           check_type(o.type);
                           check_value(o.init);
                       },
                   },
                   d.kind);
        scope_.insert(d.name());
    }

    void check_args(const std::vector<Value>& args) {
        for (const auto& a : args) check_value(a);
    }

    void check_value(const Value& v) {
        std::visit(
            overloaded{
                [&](const Var& x) {
                    if (!scope_.count(x.name)) report("UnresolvedName", "\"" + x.name + "\" is not declared");
                },
                [](const Lit&) {},
                [&](const ObjVar& o) {
                    check_value(*o.object);
                    if (!all_fields_.count(o.field))
                        report("UnresolvedField", "no module declares field \"" + o.field + "\"");
                },
                [&](const ObjAccess& a) {
                    check_value(*a.object);
                    std::visit(overloaded{[&](const MethodCall& m) {
                                              if (!all_methods_.count(m.name))
                                                  report("UnresolvedMethod",
                                                         "no module declares method \"" + m.name + "\"");
                                              check_args(m.args);
                                          },
                                          [&](const ListOp& l) {
                                              if (l.args.size() != list_op_arity(l.op))
                                                  report("BadListOperation", "list operation has wrong arity");
                                              check_args(l.args);
                                          }},
                               a.function);
                },
                [&](const BinOp& b) {
                    check_value(*b.lhs);
                    check_value(*b.rhs);
                },
                [&](const New& n) {
                    if (std::holds_alternative<BaseType>(n.type.kind))
                        report("UnresolvedType", "cannot construct a base type with new");
                    check_type(n.type);
                    check_args(n.args);
                },
                [&](const Call& c) {
                    const auto& funcs = module_->funcs;
                    if (std::none_of(funcs.begin(), funcs.end(), [&](const auto& f) { return f.name == c.name; }))
                        report("UnresolvedFunction", "module has no function \"" + c.name + "\"");
                    check_args(c.args);
                },
                [&](const ListIndex& l) {
                    check_value(*l.list);
                    check_value(*l.index);
                },
            },
            v.kind);
    }

    const AbstractCode& code_;
    const CodeModule* module_ = nullptr;
    std::set<std::string> all_fields_;
    std::set<std::string> all_methods_;
    std::set<std::string> module_names_;
    std::set<std::string> scope_;
    bool constructor_ = false;
    std::string where_;
    std::vector<Diagnostic> out_;
};

Body flatten(const Body& body);

Statement flatten_statement(const Statement& s) {
    if (const auto* c = std::get_if<Conditional>(&s.kind))
        return {Conditional{c->condition, flatten(c->then_body), flatten(c->else_body)}};
    if (const auto* i = std::get_if<Iteration>(&s.kind)) return {Iteration{i->condition, flatten(i->body)}};
    return s;
}

Body flatten(const Body& body) {
    if (body.empty()) return {};
    Block merged;
    for (const auto& b : body)
        for (const auto& s : b.statements) merged.statements.push_back(flatten_statement(s));
    return {std::move(merged)};
}

} // namespace

std::vector<Diagnostic> validate_ir(const AbstractCode& code) { return Validator(code).run(); }

AbstractCode flatten_blocks(AbstractCode code) {
    for (auto& m : code.package.modules)
        for (auto& f : m.funcs) f.body = flatten(f.body);
    return code;
}

// ---------------------------------------------------------------------------
// Debug JSON

namespace {

using json = nlohmann::ordered_json;

const char* scope_name(Scope s) { return s == Scope::Public ? "public" : "private"; }

json type_json(const StateType& t) {
    return std::visit(overloaded{[](ObjectType o) { return json(class_name(o)); },
                                 [](BaseType b) {
                                     switch (b) {
                                         case BaseType::Bool: return json("Bool");
                                         case BaseType::Int: return json("Int");
                                         case BaseType::String: return json("String");
                                     }
                                     return json("String");
                                 },
                                 [](const ListType& l) { return json{{"List", type_json(*l.element)}}; }},
                      t.kind);
}

json trans_type_json(const TransType& t) {
    return std::visit(overloaded{[](const StateType& s) { return type_json(s); },
                                 [](VoidType) { return json("Void"); },
                                 [](const Construct& c) { return json{{"Construct", c.name}}; }},
                      t.kind);
}

json literal_json(const Literal& l) {
    return std::visit([](const auto& x) { return json(x); }, l);
}

json param_json(const Parameter& p) {
    return std::visit(overloaded{[](const StateParam& s) { return json{{"param", s.name}, {"type", type_json(s.type)}}; },
                                 [](const FuncParam& f) {
                                     json params = json::array();
                                     for (const auto& q : f.params) params.push_back(param_json(q));
                                     return json{{"func_param", f.name},
                                                 {"type", trans_type_json(f.type)},
                                                 {"params", params}};
                                 }},
                      p.kind);
}

const char* list_op_name(ListOpKind op) {
    switch (op) {
        case ListOpKind::Insert: return "insert";
        case ListOpKind::Append: return "append";
        case ListOpKind::Size: return "size";
        case ListOpKind::Contains: return "contains";
    }
    return "?";
}

const char* binop_name(BinaryOp op) {
    switch (op) {
        case BinaryOp::Less: return "<";
        case BinaryOp::Equal: return "==";
        case BinaryOp::And: return "&&";
        case BinaryOp::Add: return "+";
    }
    return "?";
}

json value_json(const Value& v);

json args_json(const std::vector<Value>& args) {
    json out = json::array();
    for (const auto& a : args) out.push_back(value_json(a));
    return out;
}

json value_json(const Value& v) {
    return std::visit(
        overloaded{
            [](const Var& x) { return json{{"var", x.name}}; },
            [](const Lit& l) { return json{{"lit", literal_json(l.literal)}}; },
            [](const ObjVar& o) { return json{{"obj_var", value_json(*o.object)}, {"field", o.field}}; },
            [](const ObjAccess& a) {
                json fn = std::visit(overloaded{[](const MethodCall& m) {
                                                    return json{{"method", m.name}, {"args", args_json(m.args)}};
                                                },
                                                [](const ListOp& l) {
                                                    return json{{"list_op", list_op_name(l.op)},
                                                                {"args", args_json(l.args)}};
                                                }},
                                     a.function);
                return json{{"access", value_json(*a.object)}, {"function", fn}};
            },
            [](const BinOp& b) {
                return json{{"binop", binop_name(b.op)}, {"lhs", value_json(*b.lhs)}, {"rhs", value_json(*b.rhs)}};
            },
            [](const New& n) { return json{{"new", type_json(n.type)}, {"args", args_json(n.args)}}; },
            [](const Call& c) { return json{{"call", c.name}, {"args", args_json(c.args)}}; },
            [](const ListIndex& l) { return json{{"index", value_json(*l.list)}, {"at", value_json(*l.index)}}; },
        },
        v.kind);
}

json body_json(const Body& body);

json declaration_json(const Declaration& d) {
    return std::visit(
        overloaded{
            [](const VarDec& v) { return json{{"var_dec", v.name}, {"type", type_json(v.type)}}; },
            [](const ListDec& l) {
                return json{{"list_dec", l.name}, {"element", type_json(l.element)}, {"capacity", l.capacity}};
            },
            [](const ListDecLiterals& l) {
                json lits = json::array();
                for (const auto& x : l.literals) lits.push_back(literal_json(x));
                return json{{"list_dec_literals", l.name},
                            {"element_label", l.element_label},
                            {"element", type_json(l.element)},
                            {"literals", lits}};
            },
            [](const VarDecDef& v) {
                return json{{"var_dec_def", v.name}, {"type", type_json(v.type)}, {"init", value_json(v.init)}};
            },
            [](const ObjDecDef& o) {
                return json{{"obj_dec_def", o.name}, {"type", type_json(o.type)}, {"init", value_json(o.init)}};
            },
        },
        d.kind);
}

json statement_json(const Statement& s) {
    return std::visit(
        overloaded{
            [](const Assign& a) { return json{{"assign", value_json(a.target)}, {"value", value_json(a.source)}}; },
            [](const Declaration& d) { return declaration_json(d); },
            [](const Conditional& c) {
                return json{{"if", value_json(c.condition)},
                            {"then", body_json(c.then_body)},
                            {"else", body_json(c.else_body)}};
            },
            [](const Iteration& i) { return json{{"while", value_json(i.condition)}, {"body", body_json(i.body)}}; },
            [](Jump j) { return json{{"jump", j == Jump::Break ? "break" : "continue"}}; },
            [](const Return& r) { return json{{"return", r.value ? value_json(*r.value) : json(nullptr)}}; },
            [](const ValueStatement& v) { return json{{"eval", value_json(v.value)}}; },
            [](const Comment& c) { return json{{"comment", c.text}}; },
            [](const CommentDelimit& c) { return json{{"comment_delimit", c.text}, {"width", c.width}}; },
        },
        s.kind);
}

json body_json(const Body& body) {
    json out = json::array();
    for (const auto& b : body) {
        json stmts = json::array();
        for (const auto& s : b.statements) stmts.push_back(statement_json(s));
        out.push_back(std::move(stmts));
    }
    return out;
}

} // namespace

json to_json(const CodeModule& module) {
    json vars = json::array();
    for (const auto& v : module.vars)
        vars.push_back(json{{"name", v.name}, {"scope", scope_name(v.scope)}, {"type", type_json(v.type)}});
    json funcs = json::array();
    for (const auto& f : module.funcs) {
        json params = json::array();
        for (const auto& p : f.params) params.push_back(param_json(p));
        funcs.push_back(json{{"name", f.name},
                             {"scope", scope_name(f.scope)},
                             {"type", trans_type_json(f.type)},
                             {"params", params},
                             {"body", body_json(f.body)}});
    }
    return json{{"module", module.name}, {"scope", scope_name(module.scope)}, {"vars", vars}, {"funcs", funcs}};
}

json to_json(const AbstractCode& code) {
    json modules = json::array();
    for (const auto& m : code.package.modules) modules.push_back(to_json(m));
    return json{{"package", code.package.name}, {"modules", modules}};
}

} // namespace saga::code
