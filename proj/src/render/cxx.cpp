#include <cctype>

#include "render_common.hpp"

namespace saga::render {

using namespace code;

namespace {

// Header pass: namespace, forward declarations, class declarations.
// Source pass: every member defined out of class, qualified by its class.

std::vector<OutputFile> cxx_package(const RenderConfig& c, const AbstractCode& code) {
    const Package& p = code.package;

    Doc forward;
    for (const auto& m : p.modules) forward.push_back(Line{0, "class " + m.name + ";", 0});
    std::vector<Doc> decls{forward};
    for (const auto& m : p.modules) decls.push_back(c.module(c, FileType::Header, m));

    const std::string guard = p.name + "_H";
    std::string upper;
    for (char ch : guard) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));

    Doc header = vsep({
        vcat({text("#ifndef " + upper), text("#define " + upper)}),
        c.preamble(c, p, FileType::Header),
        vcat({text("namespace " + p.name + " {"), nest(1, vsep(std::move(decls))), text("}")}),
        text("#endif"),
    });

    std::vector<Doc> defs{c.preamble(c, p, FileType::Source)};
    for (const auto& m : p.modules) defs.push_back(c.module(c, FileType::Source, m));

    return {
        {p.name + ".h", layout(header)},
        {p.name + ".cpp", layout(vsep(std::move(defs)))},
    };
}

OutputFile cxx_module_file(const RenderConfig& c, const Package& p, const CodeModule& m) {
    // Only used when a caller renders one module in isolation.
    return {p.name + "/" + m.name + ".h", layout(c.module(c, FileType::Header, m))};
}

Doc cxx_preamble(const RenderConfig&, const Package& p, FileType f) {
    if (f == FileType::Header)
        return vsep({vcat({text("#include <string>"), text("#include <vector>")}), text("using namespace std;")});
    return vsep({text("#include \"" + p.name + ".h\""), text("#include <algorithm>"),
                 text("using namespace " + p.name + ";")});
}

Doc cxx_module(const RenderConfig& c, FileType f, const CodeModule& m) {
    if (f == FileType::Source) return c.trans_list(c, f, m);

    auto region = [&](Scope s) {
        Doc members;
        for (const auto& t : m.funcs)
            if (t.scope == s) members.push_back(Line{0, c.signature(c, f, m, t) + ";", 0});
        for (const auto& v : m.vars)
            if (v.scope == s) members.push_back(Line{0, c.state_var(c, v), 0});
        if (members.empty()) return Doc{};
        return vcat({text(c.scope(c, s) + ":"), nest(1, std::move(members))});
    };
    return vcat({text(c.module_decl(c, m)), nest(1, vsep({region(Scope::Public), region(Scope::Private)})),
                 text(c.module_close(c))});
}

std::string cxx_module_decl(const RenderConfig&, const CodeModule& m) { return "class " + m.name + " {"; }

std::string cxx_module_close(const RenderConfig&) { return "};"; }

std::string cxx_state_var(const RenderConfig& c, const StateVar& v) {
    return c.state_type(c, v.type) + " " + v.name + ";";
}

std::string cxx_signature(const RenderConfig& c, FileType f, const CodeModule& m, const Transformation& t) {
    const std::string ret = c.trans_type(c, t.type);
    const std::string name = f == FileType::Source ? m.name + "::" + t.name : t.name;
    return (ret.empty() ? "" : ret + " ") + name + "(" + c.params(c, t.params) + ")";
}

std::string cxx_object_type(const RenderConfig&, ObjectType o) { return class_name(o) + "*"; }

std::string cxx_list_type(const RenderConfig& c, const StateType& element) {
    return "vector<" + generic::element_type(c, element) + ">";
}

Doc cxx_list_dec(const RenderConfig& c, const ListDec& d) {
    return vcat({text(c.list_type(c, d.element) + " " + d.name + ";"),
                 text(d.name + ".reserve(" + std::to_string(d.capacity) + ");")});
}

Doc cxx_list_dec_literals(const RenderConfig& c, const ListDecLiterals& d) {
    return text(c.list_type(c, d.element) + " " + d.name + " = {" + generic::literal_list(c, d.literals) + "};" +
                generic::trailing_label(d.element_label));
}

std::string cxx_list_op(const RenderConfig& c, const Value& object, const ListOp& l) {
    const std::string obj = c.value(c, object);
    switch (l.op) {
        case ListOpKind::Insert:
            return obj + ".insert(" + obj + ".begin() + " + c.value(c, l.args.at(0)) + ", " +
                   c.value(c, l.args.at(1)) + ")";
        case ListOpKind::Append: return obj + ".push_back(" + generic::args(c, l.args) + ")";
        case ListOpKind::Size: return "static_cast<int>(" + obj + ".size())";
        case ListOpKind::Contains:
            return "std::find(" + obj + ".begin(), " + obj + ".end(), " + generic::args(c, l.args) + ") != " + obj +
                   ".end()";
    }
    return obj;
}

std::string cxx_new_obj(const RenderConfig& c, const New& n) {
    if (const auto* o = std::get_if<ObjectType>(&n.type.kind))
        return "new " + class_name(*o) + "(" + generic::args(c, n.args) + ")";
    // Lists are values in C++.
    return c.state_type(c, n.type) + "(" + generic::args(c, n.args) + ")";
}

std::string cxx_member_access(const RenderConfig&) { return "->"; }

} // namespace

const RenderConfig& cxx_config() {
    static const RenderConfig config = [] {
        RenderConfig c = generic_config();
        c.name = "cxx";
        c.extension = ".h";
        c.overrides.clear();
        auto set = [&c](const std::string& entry, std::string reason) { c.overrides[entry] = std::move(reason); };

        c.package = cxx_package;
        set("package", "two files, header and implementation, from two passes");
        c.module_file = cxx_module_file;
        set("module_file", "no per-module files; kept for single-module previews");
        c.preamble = cxx_preamble;
        set("preamble", "includes and using-directives per pass");
        c.module = cxx_module;
        set("module", "scope regions in the header, bare definitions in the source");
        c.module_decl = cxx_module_decl;
        set("module_decl", "no class-level scope");
        c.module_close = cxx_module_close;
        set("module_close", "class declarations end with a semicolon");
        c.state_var = cxx_state_var;
        set("state_var", "scope comes from the enclosing region");
        c.signature = cxx_signature;
        set("signature", "no scope keyword; qualified by class in the source pass");
        c.object_type = cxx_object_type;
        set("object_type", "objects are held through pointers");
        c.list_type = cxx_list_type;
        set("list_type", "lists are std::vector values");
        c.list_dec = cxx_list_dec;
        set("list_dec", "capacity becomes reserve()");
        c.list_dec_literals = cxx_list_dec_literals;
        set("list_dec_literals", "brace initialization");
        c.list_op = cxx_list_op;
        set("list_op", "iterator-based insert, push_back, std::find");
        c.new_obj = cxx_new_obj;
        set("new_obj", "new takes the class name; lists are constructed by value");
        c.member_access = cxx_member_access;
        set("member_access", "arrow through object pointers");
        return c;
    }();
    return config;
}

} // namespace saga::render
