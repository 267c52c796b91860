#include "saga/codegen.hpp"

#include <cctype>

namespace saga {

using namespace code;

std::string sanitize_identifier(const std::string& prefix, const std::string& label) {
    std::string id = prefix + "__";
    for (char c : label) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '_';
        id += keep ? c : '_';
    }
    return id;
}

std::string IdentifierRegistry::mangle(const std::string& prefix, const std::string& label) {
    const std::string base = sanitize_identifier(prefix, label);
    std::string candidate = base;
    for (int suffix = 2; issued_.count(candidate); ++suffix) candidate = base + "_" + std::to_string(suffix);
    issued_.insert(candidate);
    return candidate;
}

namespace {

// A class holding private fields set by its constructor, each with a public getter.
CodeModule record_module(const std::string& name, const std::vector<std::pair<StateType, std::string>>& fields,
                         const std::vector<std::string>& params, const std::vector<std::string>& getters) {
    std::vector<StateVar> vars;
    std::vector<Parameter> ps;
    std::vector<Statement> init;
    std::vector<Transformation> funcs;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto& [type, field] = fields[i];
        vars.push_back(priv_var(type, field));
        ps.push_back(param(params[i], type));
        init.push_back(assign_to(field, var(params[i])));
    }
    funcs.push_back(pub_func(construct(name), name, std::move(ps), {block(std::move(init))}));
    for (std::size_t i = 0; i < fields.size(); ++i)
        funcs.push_back(pub_func(typ(fields[i].first), getters[i], {}, one_liner(return_var(fields[i].second))));
    return pub_module(name, std::move(vars), std::move(funcs));
}

CodeModule node_module() {
    return record_module("Node", {{string_t(), "nodeName"}}, {"name"}, {"GetNodeName"});
}

CodeModule node_trans_module() {
    const std::string mName = "NodeTransition";
    const std::string srcNode = "srcNode", src = "src";
    const std::string dstNode = "dstNode", dst = "dst";
    const std::string nodeTransEvents = "nodeTransEvents", evts = "evts";
    return pub_module(mName,
                      {
                          priv_var(node_t(), srcNode),
                          priv_var(node_t(), dstNode),
                          priv_var(list_of(string_t()), nodeTransEvents),
                      },
                      {
                          pub_func(construct(mName), mName,
                                   {param(src, node_t()), param(dst, node_t()), param(evts, list_of(string_t()))},
                                   {block({
                                       assign_to(srcNode, var(src)),
                                       assign_to(dstNode, var(dst)),
                                       assign_to(nodeTransEvents, var(evts)),
                                   })}),
                          pub_func(typ(node_t()), "GetSrcNode", {}, one_liner(return_var(srcNode))),
                          pub_func(typ(node_t()), "GetDstNode", {}, one_liner(return_var(dstNode))),
                          pub_func(typ(list_of(string_t())), "GetNodeTransEvents", {},
                                   one_liner(return_var(nodeTransEvents))),
                      });
}

CodeModule section_module() {
    return record_module("Section",
                         {{string_t(), "sectName"},
                          {list_of(node_t()), "sectNodes"},
                          {list_of(node_trans_t()), "sectNodeTransitions"}},
                         {"name", "nodes", "trans"}, {"GetSectName", "GetSectNodes", "GetSectNodeTransitions"});
}

CodeModule sect_trans_module() {
    return record_module("SectionTransition",
                         {{node_t(), "srcNode"}, {node_t(), "dstNode"}, {list_of(string_t()), "sectTransEvents"}},
                         {"src", "dst", "evts"}, {"GetSrcNode", "GetDstNode", "GetSectTransEvents"});
}

CodeModule story_module() {
    return record_module("Story",
                         {{string_t(), "storyName"},
                          {node_t(), "initialNode"},
                          {list_of(sect_t()), "storySections"},
                          {list_of(sect_trans_t()), "storySectTransitions"}},
                         {"name", "initial", "sects", "sectTrans"},
                         {"GetStoryName", "GetInitialNode", "GetStorySections", "GetStorySectTransitions"});
}

Value inc(const std::string& counter) { return add(var(counter), lit(std::int64_t{1})); }

// Scans `list` for the first transition leaving the current node whose events have all
// happened; moves there and returns true.
std::vector<Statement> first_enabled_loop(const std::string& list, const std::string& index,
                                          const std::string& item, const StateType& item_type,
                                          const std::string& events_getter) {
    return {
        var_dec_def(index, int_t(), lit(std::int64_t{0})),
        while_loop(less(index, list_size(var(list))),
                   {
                       block({
                           obj_dec_def(item, item_type, list_index(var(list), var(index))),
                           if_then(and_(equal(access(var(item), "GetSrcNode"), var("currentNode")),
                                        call("HasHappened", {access(var(item), events_getter)})),
                                   {block({
                                       assign_to("currentNode", access(var(item), "GetDstNode")),
                                       ret(lit(true)),
                                   })}),
                           assign_to(index, inc(index)),
                       }),
                   }),
    };
}

CodeModule story_manager_module() {
    const std::string mName = "StoryManager";

    Transformation ctor = pub_func(construct(mName), mName, {param("s", story_t())},
                                   {block({
                                       assign_to("story", var("s")),
                                       assign_to("currentNode", access(var("s"), "GetInitialNode")),
                                       assign_to("happenedEvents", new_obj(list_of(string_t()))),
                                   })});

    Transformation signal = pub_func(
        typ(bool_t()), "SignalEvent", {param("evt", string_t())},
        {
            block({comment("Events never unhappen."), list_append(var("happenedEvents"), var("evt"))}),
            block({
                comment("Follow every transition the new event enables, one hop at a time."),
                var_dec_def("fired", bool_t(), lit(false)),
                while_loop(call("Step"), {block({assign_to("fired", lit(true))})}),
            }),
            block({return_var("fired")}),
        });

    Transformation has_happened = priv_func(
        typ(bool_t()), "HasHappened", {param("evts", list_of(string_t()))},
        {
            block({
                var_dec_def("i", int_t(), lit(std::int64_t{0})),
                while_loop(less("i", list_size(var("evts"))),
                           {block({
                                if_then(list_contains(var("happenedEvents"), list_index(var("evts"), var("i"))),
                                        {block({assign_to("i", inc("i")), continue_stmt()})}),
                                ret(lit(false)),
                            })}),
            }),
            block({ret(lit(true))}),
        });

    std::vector<Statement> section_scan = {
        comment("Transitions inside sections, in declaration order."),
        var_dec_def("sects", list_of(sect_t()), access(var("story"), "GetStorySections")),
        var_dec_def("s", int_t(), lit(std::int64_t{0})),
        while_loop(less("s", list_size(var("sects"))),
                   {block({
                       var_dec_def("trans", list_of(node_trans_t()),
                                   access(list_index(var("sects"), var("s")), "GetSectNodeTransitions")),
                   }),
                    block(first_enabled_loop("trans", "t", "nt", node_trans_t(), "GetNodeTransEvents")),
                    block({assign_to("s", inc("s"))})}),
    };
    std::vector<Statement> where_scan = {
        comment("Then transitions between sections."),
        var_dec_def("sectTrans", list_of(sect_trans_t()), access(var("story"), "GetStorySectTransitions")),
    };
    for (auto& s : first_enabled_loop("sectTrans", "w", "st", sect_trans_t(), "GetSectTransEvents"))
        where_scan.push_back(std::move(s));

    Transformation step = priv_func(typ(bool_t()), "Step", {},
                                    {block(std::move(section_scan)), block(std::move(where_scan)),
                                     block({ret(lit(false))})});

    return pub_module(mName,
                      {
                          priv_var(story_t(), "story"),
                          priv_var(node_t(), "currentNode"),
                          priv_var(list_of(string_t()), "happenedEvents"),
                      },
                      {
                          std::move(ctor),
                          pub_func(typ(node_t()), "GetCurrentNode", {}, one_liner(return_var("currentNode"))),
                          std::move(signal),
                          std::move(has_happened),
                          std::move(step),
                      });
}

std::vector<Literal> event_literals(const StoryGraph& graph, const Transition& t) {
    std::vector<Literal> out;
    for (EventId e : t.events) out.emplace_back(graph.label(e));
    return out;
}

// Declares a capacity-sized list and fills it with positional inserts.
Block list_block(const std::string& name, const StateType& element, const std::vector<std::string>& items,
                 const std::string& banner) {
    std::vector<Statement> stmts;
    stmts.push_back(list_dec(name, element, static_cast<int>(items.size())));
    for (std::size_t i = 0; i < items.size(); ++i)
        stmts.push_back(list_insert(var(name), lit(static_cast<std::int64_t>(i)), var(items[i])));
    stmts.push_back(comment_delimit(banner, kBannerWidth));
    return block(std::move(stmts));
}

std::string quoted(const std::string& text) { return "\"" + text + "\""; }

} // namespace

std::vector<CodeModule> generate_pattern_modules() {
    return {node_module(),   node_trans_module(), section_module(), sect_trans_module(),
            story_module(), story_manager_module()};
}

Transformation generate_story_instantiation(const StoryGraph& graph) {
    IdentifierRegistry ids;
    Body body;

    std::vector<std::string> node_ids(graph.nodes.size());
    std::vector<std::string> node_lists;
    for (const auto& section : graph.sections) {
        std::vector<Statement> decls{comment(quoted(section.name))};
        std::vector<std::string> members;
        for (NodeId n : section.nodes) {
            node_ids[n.value] = ids.mangle("node", graph.label(n));
            members.push_back(node_ids[n.value]);
            decls.push_back(obj_dec_def(node_ids[n.value], node_t(), new_obj(node_t(), {lit(graph.label(n))})));
        }
        body.push_back(block(std::move(decls)));
        node_lists.push_back(ids.mangle("nodes", section.name));
        body.push_back(list_block(node_lists.back(), node_t(), members, "End Nodes"));
    }

    auto transition_objects = [&](const std::vector<TransitionId>& list, const std::string& prefix,
                                  const StateType& type, std::vector<Statement>& stmts) {
        std::vector<std::string> names;
        for (TransitionId id : list) {
            const Transition& t = graph.transition(id);
            const std::string readable = graph.label(t.src) + " to " + graph.label(t.dst);
            const std::string evts = ids.mangle("evts", readable);
            names.push_back(ids.mangle(prefix, readable));
            stmts.push_back(list_dec_literals(evts, graph.label(t.src) + " -> " + graph.label(t.dst), string_t(),
                                              event_literals(graph, t)));
            stmts.push_back(obj_dec_def(names.back(), type,
                                        new_obj(type, {var(node_ids[t.src.value]), var(node_ids[t.dst.value]),
                                                       var(evts)})));
        }
        return names;
    };

    std::vector<std::string> section_objects;
    for (std::size_t si = 0; si < graph.sections.size(); ++si) {
        const Section& section = graph.sections[si];
        std::vector<Statement> decls{comment(quoted(section.name) + " transitions")};
        const auto names = transition_objects(section.transitions, "trans", node_trans_t(), decls);
        body.push_back(block(std::move(decls)));
        const std::string list = ids.mangle("nodeTrans", section.name);
        body.push_back(list_block(list, node_trans_t(), names, "End Node Transitions"));
        section_objects.push_back(ids.mangle("sect", section.name));
        body.push_back(block({obj_dec_def(section_objects.back(), sect_t(),
                                          new_obj(sect_t(), {lit(section.name), var(node_lists[si]), var(list)}))}));
    }

    std::vector<Statement> where_decls{comment("Transitions between sections")};
    const auto where_names = transition_objects(graph.section_transitions, "sectTrans", sect_trans_t(), where_decls);
    if (!where_names.empty()) body.push_back(block(std::move(where_decls)));
    body.push_back(list_block("sectionTransitions", sect_trans_t(), where_names, "End Section Transitions"));
    body.push_back(list_block("storySections", sect_t(), section_objects, "End Sections"));

    body.push_back(block({
        comment(quoted(graph.name)),
        obj_dec_def("story", story_t(),
                    new_obj(story_t(), {lit(graph.name), var(node_ids[graph.initial.value]), var("storySections"),
                                        var("sectionTransitions")})),
        ret(new_obj(story_man_t(), {var("story")})),
    }));

    return pub_func(typ(story_man_t()), kDriverFunction, {}, std::move(body));
}

AbstractCode compile(const StoryGraph& graph) {
    AbstractCode code;
    code.package.name = kPackageName;
    code.package.modules = generate_pattern_modules();
    code.package.modules.push_back(pub_module(kDriverModule, {}, {generate_story_instantiation(graph)}));

    const auto problems = validate_ir(code);
    if (!problems.empty()) {
        throw SagaError({Level::Error, "InternalCodegenError",
                         "generated code failed validation: " + problems.front().message, {}});
    }
    return code;
}

} // namespace saga
