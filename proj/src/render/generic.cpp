#include <algorithm>

#include "render_common.hpp"

namespace saga::render {

using namespace code;

// ---------------------------------------------------------------------------
// Layout

Doc text(std::string line) { return {Line{0, std::move(line), 0}}; }
Doc banner(std::string line, int width) { return {Line{0, std::move(line), width}}; }
Doc blank() { return {Line{}}; }

Doc nest(int levels, Doc doc) {
    for (auto& l : doc) l.indent += levels;
    return doc;
}

Doc vcat(std::vector<Doc> docs) {
    Doc out;
    for (auto& d : docs) out.insert(out.end(), std::make_move_iterator(d.begin()), std::make_move_iterator(d.end()));
    return out;
}

Doc vsep(std::vector<Doc> docs) {
    Doc out;
    for (auto& d : docs) {
        if (d.empty()) continue;
        if (!out.empty()) {
            // The separator sits at the indentation of the material it separates.
            out.push_back(Line{d.front().indent, "", 0});
        }
        out.insert(out.end(), std::make_move_iterator(d.begin()), std::make_move_iterator(d.end()));
    }
    return out;
}

std::string indent(int level) { return std::string(static_cast<std::size_t>(level * kIndentWidth), ' '); }

std::string layout(const Doc& doc) {
    std::string out;
    for (const auto& l : doc) {
        std::string line = indent(l.indent) + l.text;
        if (l.fill_width > 0) {
            const int dashes = std::max(0, l.fill_width - 1 - static_cast<int>(line.size()));
            line.append(static_cast<std::size_t>(dashes), '-');
        }
        out += line;
        out += '\n';
    }
    return out;
}

std::string to_string(Dialect d) {
    switch (d) {
        case Dialect::Java: return "java";
        case Dialect::CSharp: return "csharp";
        case Dialect::Cxx: return "cxx";
    }
    return "java";
}

std::optional<Dialect> parse_dialect(std::string_view name) {
    for (Dialect d : {Dialect::Java, Dialect::CSharp, Dialect::Cxx})
        if (to_string(d) == name) return d;
    return std::nullopt;
}

std::vector<std::pair<std::string, bool>> RenderConfig::entries() const {
    std::vector<std::pair<std::string, bool>> out;
#define SAGA_LIST_ENTRY(entry, sig) out.emplace_back(#entry, static_cast<bool>(entry));
    SAGA_RENDER_ENTRIES(SAGA_LIST_ENTRY)
#undef SAGA_LIST_ENTRY
    return out;
}

bool RenderConfig::reset_entry(const std::string& entry, const RenderConfig& generic) {
#define SAGA_RESET_ENTRY(e, sig) \
    if (entry == #e) {           \
        e = generic.e;           \
        overrides.erase(entry);  \
        return true;             \
    }
    SAGA_RENDER_ENTRIES(SAGA_RESET_ENTRY)
#undef SAGA_RESET_ENTRY
    return false;
}

// ---------------------------------------------------------------------------
// Generic renderers

namespace generic {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string args(const RenderConfig& c, const std::vector<Value>& values) {
    std::vector<std::string> parts;
    for (const auto& v : values) parts.push_back(c.value(c, v));
    return join(parts, ", ");
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

[[noreturn]] void unmappable(const RenderConfig& c, const std::string& what) {
    throw SagaError({Level::Error, "UnmappableType", "type " + what + " has no " + c.name + " spelling", {}});
}

std::string type_label(const StateType& t) {
    return std::visit(overloaded{[](ObjectType o) { return class_name(o); },
                                 [](BaseType b) {
                                     return std::string(b == BaseType::Bool ? "Bool"
                                                        : b == BaseType::Int ? "Int"
                                                                             : "String");
                                 },
                                 [](const ListType& l) { return "List " + type_label(*l.element); }},
                      t.kind);
}

int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return 4;
        case BinaryOp::Less: return 3;
        case BinaryOp::Equal: return 2;
        case BinaryOp::And: return 1;
    }
    return 0;
}

const char* symbol(BinaryOp op) {
    switch (op) {
        case BinaryOp::Less: return "<";
        case BinaryOp::Equal: return "==";
        case BinaryOp::And: return "&&";
        case BinaryOp::Add: return "+";
    }
    return "?";
}

std::vector<OutputFile> package(const RenderConfig& c, const AbstractCode& code) {
    std::vector<OutputFile> files;
    for (const auto& m : code.package.modules) files.push_back(c.module_file(c, code.package, m));
    return files;
}

OutputFile module_file(const RenderConfig& c, const Package& p, const CodeModule& m) {
    return {p.name + "/" + m.name + c.extension,
            layout(vsep({c.preamble(c, p, FileType::Source), c.module(c, FileType::Source, m)}))};
}

Doc preamble(const RenderConfig&, const Package&, FileType) { return {}; }

Doc module(const RenderConfig& c, FileType f, const CodeModule& m) {
    return vcat({
        text(c.module_decl(c, m)),
        nest(1, vsep({c.trans_list(c, f, m), c.state_list(c, m.vars)})),
        text(c.module_close(c)),
    });
}

std::string module_decl(const RenderConfig& c, const CodeModule& m) {
    const std::string scope = c.scope(c, m.scope);
    return (scope.empty() ? "" : scope + " ") + "class " + m.name + " {";
}

std::string module_close(const RenderConfig&) { return "}"; }

std::string scope(const RenderConfig&, Scope s) { return s == Scope::Public ? "public" : "private"; }

Doc trans_list(const RenderConfig& c, FileType f, const CodeModule& m) {
    std::vector<Doc> docs;
    for (const auto& t : m.funcs) docs.push_back(c.transformation(c, f, m, t));
    return vsep(std::move(docs));
}

Doc state_list(const RenderConfig& c, const std::vector<StateVar>& vars) {
    Doc out;
    for (const auto& v : vars) out.push_back(Line{0, c.state_var(c, v), 0});
    return out;
}

std::string state_var(const RenderConfig& c, const StateVar& v) {
    return c.scope(c, v.scope) + " " + c.state_type(c, v.type) + " " + v.name + ";";
}

Doc transformation(const RenderConfig& c, FileType f, const CodeModule& m, const Transformation& t) {
    return vcat({text(c.signature(c, f, m, t) + " {"), nest(1, c.body(c, t.body)), text("}")});
}

std::string signature(const RenderConfig& c, FileType, const CodeModule&, const Transformation& t) {
    const std::string ret = c.trans_type(c, t.type);
    return c.scope(c, t.scope) + " " + (ret.empty() ? "" : ret + " ") + t.name + "(" + c.params(c, t.params) + ")";
}

std::string params(const RenderConfig& c, const std::vector<Parameter>& ps) {
    std::vector<std::string> parts;
    for (const auto& p : ps) parts.push_back(c.param(c, p));
    return join(parts, ", ");
}

std::string param(const RenderConfig& c, const Parameter& p) {
    return std::visit(overloaded{[&](const StateParam& s) { return c.state_type(c, s.type) + " " + s.name; },
                                 [&](const FuncParam& f) {
                                     // Rendered as a callback-typed parameter name; no dialect uses it yet.
                                     return c.trans_type(c, f.type) + " " + f.name;
                                 }},
                      p.kind);
}

Doc body(const RenderConfig& c, const Body& b) {
    std::vector<Doc> docs;
    for (const auto& blk : b) docs.push_back(c.block(c, blk));
    return vsep(std::move(docs));
}

Doc block(const RenderConfig& c, const Block& b) {
    std::vector<Doc> docs;
    for (const auto& s : b.statements) docs.push_back(c.statement(c, s));
    return vcat(std::move(docs));
}

Doc statement(const RenderConfig& c, const Statement& s) {
    return std::visit(overloaded{
                          [&](const Assign& a) { return c.assign(c, a); },
                          [&](const Declaration& d) { return c.declaration(c, d); },
                          [&](const Conditional& x) { return c.conditional(c, x); },
                          [&](const Iteration& x) { return c.iteration(c, x); },
                          [&](Jump j) { return c.jump(c, j); },
                          [&](const Return& r) { return c.return_stmt(c, r); },
                          [&](const ValueStatement& v) { return c.value_stmt(c, v); },
                          [&](const Comment& x) { return c.comment(c, x); },
                          [&](const CommentDelimit& x) { return c.comment_delimit(c, x); },
                      },
                      s.kind);
}

Doc assign(const RenderConfig& c, const Assign& a) {
    return text(c.value(c, a.target) + " = " + c.value(c, a.source) + ";");
}

Doc declaration(const RenderConfig& c, const Declaration& d) {
    return std::visit(overloaded{
                          [&](const VarDec& x) { return c.var_dec(c, x); },
                          [&](const ListDec& x) { return c.list_dec(c, x); },
                          [&](const ListDecLiterals& x) { return c.list_dec_literals(c, x); },
                          [&](const VarDecDef& x) { return c.var_dec_def(c, x); },
                          [&](const ObjDecDef& x) { return c.obj_dec_def(c, x); },
                      },
                      d.kind);
}

Doc var_dec(const RenderConfig& c, const VarDec& d) { return text(c.state_type(c, d.type) + " " + d.name + ";"); }

Doc list_dec(const RenderConfig& c, const ListDec& d) {
    const std::string type = c.list_type(c, d.element);
    return text(type + " " + d.name + " = new " + type + "(" + std::to_string(d.capacity) + ");");
}

std::string literal_list(const RenderConfig& c, const std::vector<Literal>& lits) {
    std::vector<std::string> parts;
    for (const auto& l : lits) parts.push_back(c.literal(c, l));
    return join(parts, ", ");
}

std::string trailing_label(const std::string& label) { return label.empty() ? "" : " // " + label; }

Doc list_dec_literals(const RenderConfig& c, const ListDecLiterals& d) {
    const std::string type = c.list_type(c, d.element);
    return text(type + " " + d.name + " = new " + type + " {" + literal_list(c, d.literals) + "};" +
                trailing_label(d.element_label));
}

Doc var_dec_def(const RenderConfig& c, const VarDecDef& d) {
    return text(c.state_type(c, d.type) + " " + d.name + " = " + c.value(c, d.init) + ";");
}

Doc obj_dec_def(const RenderConfig& c, const ObjDecDef& d) {
    return text(c.state_type(c, d.type) + " " + d.name + " = " + c.value(c, d.init) + ";");
}

Doc conditional(const RenderConfig& c, const Conditional& x) {
    Doc out = text("if (" + c.value(c, x.condition) + ") {");
    out = vcat({std::move(out), nest(1, c.body(c, x.then_body))});
    if (!x.else_body.empty()) out = vcat({std::move(out), text("} else {"), nest(1, c.body(c, x.else_body))});
    return vcat({std::move(out), text("}")});
}

Doc iteration(const RenderConfig& c, const Iteration& x) {
    return vcat({text("while (" + c.value(c, x.condition) + ") {"), nest(1, c.body(c, x.body)), text("}")});
}

Doc jump(const RenderConfig&, Jump j) { return text(j == Jump::Break ? "break;" : "continue;"); }

Doc return_stmt(const RenderConfig& c, const Return& r) {
    return text(r.value ? "return " + c.value(c, *r.value) + ";" : "return;");
}

Doc value_stmt(const RenderConfig& c, const ValueStatement& v) { return text(c.value(c, v.value) + ";"); }

Doc comment(const RenderConfig&, const Comment& x) { return text("// " + x.text); }

Doc comment_delimit(const RenderConfig&, const CommentDelimit& x) { return banner("// " + x.text + " ", x.width); }

std::string value(const RenderConfig& c, const Value& v) {
    return std::visit(overloaded{
                          [&](const Var& x) { return c.var(c, x); },
                          [&](const Lit& x) { return c.literal(c, x.literal); },
                          [&](const ObjVar& x) { return c.obj_var(c, x); },
                          [&](const ObjAccess& x) { return c.obj_access(c, x); },
                          [&](const BinOp& x) { return c.bin_op(c, x); },
                          [&](const New& x) { return c.new_obj(c, x); },
                          [&](const Call& x) { return c.call(c, x); },
                          [&](const ListIndex& x) { return c.list_index(c, x); },
                      },
                      v.kind);
}

std::string var(const RenderConfig&, const Var& v) { return v.name; }

std::string literal(const RenderConfig& c, const Literal& l) {
    return std::visit(overloaded{[](bool b) { return std::string(b ? "true" : "false"); },
                                 [](std::int64_t n) { return std::to_string(n); },
                                 [&](const std::string& s) { return c.string_literal(c, s); }},
                      l);
}

std::string obj_var(const RenderConfig& c, const ObjVar& o) {
    return c.value(c, *o.object) + c.member_access(c) + o.field;
}

std::string obj_access(const RenderConfig& c, const ObjAccess& a) {
    return std::visit(overloaded{[&](const MethodCall& m) { return c.method_call(c, *a.object, m); },
                                 [&](const ListOp& l) { return c.list_op(c, *a.object, l); }},
                      a.function);
}

std::string method_call(const RenderConfig& c, const Value& object, const MethodCall& m) {
    return c.value(c, object) + c.member_access(c) + m.name + "(" + args(c, m.args) + ")";
}

std::string list_op(const RenderConfig& c, const Value& object, const ListOp& l) {
    const std::string obj = c.value(c, object);
    switch (l.op) {
        case ListOpKind::Insert: return obj + ".add(" + args(c, l.args) + ")";
        case ListOpKind::Append: return obj + ".add(" + args(c, l.args) + ")";
        case ListOpKind::Size: return obj + ".size()";
        case ListOpKind::Contains: return obj + ".contains(" + args(c, l.args) + ")";
    }
    return obj;
}

std::string bin_op(const RenderConfig& c, const BinOp& b) {
    auto operand = [&](const Value& v, bool right) {
        std::string s = c.value(c, v);
        if (const auto* inner = std::get_if<BinOp>(&v.kind)) {
            const int mine = precedence(b.op);
            const int theirs = precedence(inner->op);
            if (theirs < mine || (right && theirs == mine)) s = "(" + s + ")";
        }
        return s;
    };
    return operand(*b.lhs, false) + " " + symbol(b.op) + " " + operand(*b.rhs, true);
}

std::string new_obj(const RenderConfig& c, const New& n) {
    const std::string type = std::visit(overloaded{[&](ObjectType o) { return c.object_type(c, o); },
                                                   [&](BaseType) -> std::string { unmappable(c, "new of a base type"); },
                                                   [&](const ListType& l) { return c.list_type(c, *l.element); }},
                                        n.type.kind);
    return "new " + type + "(" + args(c, n.args) + ")";
}

std::string call(const RenderConfig& c, const Call& x) { return x.name + "(" + args(c, x.args) + ")"; }

std::string list_index(const RenderConfig& c, const ListIndex& l) {
    return c.value(c, *l.list) + "[" + c.value(c, *l.index) + "]";
}

std::string state_type(const RenderConfig& c, const StateType& t) {
    if (list_depth(t) > 2) unmappable(c, type_label(t));
    return std::visit(overloaded{[&](ObjectType o) { return c.object_type(c, o); },
                                 [&](BaseType b) { return c.base_type(c, b, false); },
                                 [&](const ListType& l) { return c.list_type(c, *l.element); }},
                      t.kind);
}

std::string trans_type(const RenderConfig& c, const TransType& t) {
    return std::visit(overloaded{[&](const StateType& s) { return c.state_type(c, s); },
                                 [](VoidType) { return std::string("void"); },
                                 [](const Construct&) { return std::string(); }},
                      t.kind);
}

std::string object_type(const RenderConfig&, ObjectType o) { return class_name(o); }

std::string base_type(const RenderConfig&, BaseType b, bool) {
    switch (b) {
        case BaseType::Bool: return "bool";
        case BaseType::Int: return "int";
        case BaseType::String: return "string";
    }
    return "string";
}

std::string element_type(const RenderConfig& c, const StateType& element) {
    if (list_depth(element) > 1) unmappable(c, "List " + type_label(element));
    if (const auto* b = std::get_if<BaseType>(&element.kind)) return c.base_type(c, *b, true);
    return c.state_type(c, element);
}

std::string list_type(const RenderConfig& c, const StateType& element) {
    return "List<" + element_type(c, element) + ">";
}

std::string string_literal(const RenderConfig&, const std::string& s) { return "\"" + escape(s) + "\""; }

std::string member_access(const RenderConfig&) { return "."; }

} // namespace generic

const RenderConfig& generic_config() {
    static const RenderConfig config = [] {
        RenderConfig c;
        c.name = "generic";
#define SAGA_BIND_GENERIC(entry, sig) c.entry = generic::entry;
        SAGA_RENDER_ENTRIES(SAGA_BIND_GENERIC)
#undef SAGA_BIND_GENERIC
        return c;
    }();
    return config;
}

const RenderConfig& config_for(Dialect d) {
    switch (d) {
        case Dialect::Java: return java_config();
        case Dialect::CSharp: return csharp_config();
        case Dialect::Cxx: return cxx_config();
    }
    return java_config();
}

std::vector<OutputFile> render_package(const RenderConfig& config, const AbstractCode& code) {
    return config.package(config, code);
}

std::vector<OutputFile> render_package(Dialect d, const AbstractCode& code) {
    return render_package(config_for(d), code);
}

std::string type_map(Dialect d, const StateType& t) {
    const auto& c = config_for(d);
    return c.state_type(c, t);
}

std::string type_map(Dialect d, const TransType& t) {
    const auto& c = config_for(d);
    return c.trans_type(c, t);
}

} // namespace saga::render
