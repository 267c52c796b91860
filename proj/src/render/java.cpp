#include "render_common.hpp"

namespace saga::render {

using namespace code;

namespace {

Doc java_preamble(const RenderConfig&, const Package& p, FileType) {
    // Arrays is only needed by literal lists, but the import set is fixed.
    return vsep({text("package " + p.name + ";"), vcat({text("import java.util.Arrays;"), text("import java.util.Vector;")})});
}


std::string java_module_decl(const RenderConfig&, const CodeModule& m) {
    // Top-level Java classes cannot be private; package-private is the closest.
    return (m.scope == Scope::Public ? "public " : "") + std::string("class ") + m.name + " {";
}

std::string java_base_type(const RenderConfig&, BaseType b, bool boxed) {
    switch (b) {
        case BaseType::Bool: return boxed ? "Boolean" : "boolean";
        case BaseType::Int: return boxed ? "Integer" : "int";
        case BaseType::String: return "String";
    }
    return "String";
}

std::string java_list_type(const RenderConfig& c, const StateType& element) {
    return "Vector<" + generic::element_type(c, element) + ">";
}

std::string java_list_index(const RenderConfig& c, const ListIndex& l) {
    return c.value(c, *l.list) + ".get(" + c.value(c, *l.index) + ")";
}

Doc java_list_dec_literals(const RenderConfig& c, const ListDecLiterals& d) {
    const std::string type = c.list_type(c, d.element);
    const std::string init = d.literals.empty()
                                 ? "new " + type + "()"
                                 : "new " + type + "(Arrays.asList(" + generic::literal_list(c, d.literals) + "))";
    return text(type + " " + d.name + " = " + init + ";" + generic::trailing_label(d.element_label));
}

} // namespace

const RenderConfig& java_config() {
    static const RenderConfig config = [] {
        RenderConfig c = generic_config();
        c.name = "java";
        c.extension = ".java";
        c.overrides.clear();
        auto set = [&c](const std::string& entry, std::string reason) { c.overrides[entry] = std::move(reason); };

        c.preamble = java_preamble;
        set("preamble", "package line and the fixed java.util imports");
        c.module_decl = java_module_decl;
        set("module_decl", "private classes become package-private");
        c.base_type = java_base_type;
        set("base_type", "boolean/int, boxed to Boolean/Integer inside generics; String");
        c.list_type = java_list_type;
        set("list_type", "lists are java.util.Vector");
        c.list_index = java_list_index;
        set("list_index", "Vector has no subscript operator; uses get(i)");
        c.list_dec_literals = java_list_dec_literals;
        set("list_dec_literals", "Vector built from Arrays.asList");
        return c;
    }();
    return config;
}

} // namespace saga::render
