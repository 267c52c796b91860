#include "render_common.hpp"

namespace saga::render {

using namespace code;

namespace {

Doc cs_preamble(const RenderConfig&, const Package& p, FileType) {
    return vsep({vcat({text("using System;"), text("using System.Collections.Generic;")}),
                 text("namespace " + p.name + ";")});
}

std::string cs_module_decl(const RenderConfig&, const CodeModule& m) {
    // A namespace member can't be private.
    return std::string(m.scope == Scope::Public ? "public" : "internal") + " class " + m.name + " {";
}

std::string cs_list_op(const RenderConfig& c, const Value& object, const ListOp& l) {
    const std::string obj = c.value(c, object);
    switch (l.op) {
        case ListOpKind::Insert: return obj + ".Insert(" + generic::args(c, l.args) + ")";
        case ListOpKind::Append: return obj + ".Add(" + generic::args(c, l.args) + ")";
        case ListOpKind::Size: return obj + ".Count";
        case ListOpKind::Contains: return obj + ".Contains(" + generic::args(c, l.args) + ")";
    }
    return obj;
}

} // namespace

const RenderConfig& csharp_config() {
    static const RenderConfig config = [] {
        RenderConfig c = generic_config();
        c.name = "csharp";
        c.extension = ".cs";
        c.overrides.clear();
        auto set = [&c](const std::string& entry, std::string reason) { c.overrides[entry] = std::move(reason); };

        c.preamble = cs_preamble;
        set("preamble", "using-directives and a file-scoped namespace");
        c.module_decl = cs_module_decl;
        set("module_decl", "private classes become internal");
        c.list_op = cs_list_op;
        set("list_op", "List Insert/Add/Contains and the Count property");
        return c;
    }();
    return config;
}

} // namespace saga::render
