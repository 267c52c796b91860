#include "saga/graph_export.hpp"

#include <sstream>

namespace saga {

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

namespace {

std::string node_id(NodeId n) { return "n" + std::to_string(n.value); }

std::string event_label(const StoryGraph& g, const Transition& t) {
    std::string out;
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        if (i) out += " AND ";
        out += g.label(t.events[i]);
    }
    return out;
}

} // namespace

std::string to_dot(const StoryGraph& g) {
    std::ostringstream os;
    os << "digraph " << dot_quote(g.name) << " {\n";
    os << "    compound=true;\n";
    os << "    node [shape=ellipse];\n";
    for (const auto& s : g.sections) {
        os << "\n    subgraph cluster_" << s.id.value << " {\n";
        os << "        label=" << dot_quote(s.name) << ";\n";
        for (NodeId n : s.nodes) {
            os << "        " << node_id(n) << " [label=" << dot_quote(g.label(n));
            if (n == g.initial) os << ", shape=doublecircle";
            os << "];\n";
        }
        os << "    }\n";
    }
    if (!g.transitions.empty()) os << "\n";
    for (const auto& t : g.transitions) {
        os << "    " << node_id(t.src) << " -> " << node_id(t.dst) << " [label=" << dot_quote(event_label(g, t));
        if (t.kind == TransitionKind::Section) os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

nlohmann::ordered_json graph_json(const StoryGraph& g) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["story"] = g.name;
    doc["initial"] = g.label(g.initial);
    ordered_json sections = ordered_json::array();
    for (const auto& s : g.sections) {
        ordered_json nodes = ordered_json::array();
        for (NodeId n : s.nodes) nodes.push_back(g.label(n));
        sections.push_back({{"name", s.name}, {"nodes", std::move(nodes)}});
    }
    doc["sections"] = std::move(sections);
    ordered_json transitions = ordered_json::array();
    for (const auto& t : g.transitions) {
        ordered_json events = ordered_json::array();
        for (EventId e : t.events) events.push_back(g.label(e));
        transitions.push_back({{"src", g.label(t.src)},
                               {"dst", g.label(t.dst)},
                               {"events", std::move(events)},
                               {"kind", t.kind == TransitionKind::Node ? "node" : "section"}});
    }
    doc["transitions"] = std::move(transitions);
    return doc;
}

std::string to_graph_json(const StoryGraph& g) { return graph_json(g).dump(2) + "\n"; }

} // namespace saga
