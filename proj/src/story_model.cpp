#include "saga/story_model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace saga {

std::optional<NodeId> StoryGraph::find_node(std::string_view label) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].label == label) return NodeId{static_cast<std::uint32_t>(i)};
    return std::nullopt;
}

std::optional<EventId> StoryGraph::find_event(std::string_view label) const {
    for (std::size_t i = 0; i < events.size(); ++i)
        if (events[i] == label) return EventId{static_cast<std::uint32_t>(i)};
    return std::nullopt;
}

std::optional<SectionId> StoryGraph::find_section(std::string_view label) const {
    for (std::size_t i = 0; i < sections.size(); ++i)
        if (sections[i].name == label) return SectionId{static_cast<std::uint32_t>(i)};
    return std::nullopt;
}

std::vector<TransitionId> StoryGraph::outgoing(NodeId node) const {
    std::vector<TransitionId> out;
    for (std::size_t i = 0; i < transitions.size(); ++i)
        if (transitions[i].src == node) out.push_back(TransitionId{static_cast<std::uint32_t>(i)});
    return out;
}

std::vector<TransitionDecl> desugar_or(const TransitionDecl& decl) {
    std::vector<TransitionDecl> out;
    out.reserve(decl.pre_nodes.size());
    for (const auto& src : decl.pre_nodes) {
        TransitionDecl single = decl;
        single.pre_nodes = {src};
        out.push_back(std::move(single));
    }
    return out;
}

namespace {

class Resolver {
public:
    explicit Resolver(const StoryAst& ast) : ast_(ast) {}

    ResolveResult run() {
        graph_.name = ast_.story_name.canonical();
        collect_sections();
        collect_section_transitions();
        resolve_initial();
        collect_where_clauses();
        warn_duplicates_and_ambiguity();

        ResolveResult result;
        result.diagnostics = std::move(diagnostics_);
        if (!has_errors(result.diagnostics)) result.graph = std::move(graph_);
        return result;
    }

private:
    void error(std::string code, std::string message, SourceSpan span) {
        diagnostics_.push_back({Level::Error, std::move(code), std::move(message), span});
    }

    void warning(std::string code, std::string message, SourceSpan span) {
        diagnostics_.push_back({Level::Warning, std::move(code), std::move(message), span});
    }

    EventId intern_event(const std::string& label) {
        if (auto id = graph_.find_event(label)) return *id;
        graph_.events.push_back(label);
        return EventId{static_cast<std::uint32_t>(graph_.events.size() - 1)};
    }

    void collect_sections() {
        for (const auto& decl : ast_.sections) {
            const std::string name = decl.name.canonical();
            if (graph_.find_section(name)) {
                error("DuplicateSectionName", "section \"" + name + "\" is declared more than once", decl.name.span);
                continue;
            }
            Section s;
            s.id = SectionId{static_cast<std::uint32_t>(graph_.sections.size())};
            s.name = name;
            graph_.sections.push_back(std::move(s));
            section_decls_.push_back(&decl);
        }
    }

    // Node ownership is inferred: a node belongs to the section whose transitions mention it.
    void mention(const Label& label, SectionId section) {
        const std::string name = label.canonical();
        if (auto id = graph_.find_node(name)) {
            const SectionId owner = graph_.nodes[id->value].section;
            if (owner != section) {
                auto& seen = conflicts_[name];
                if (seen.empty()) seen.insert(graph_.label(owner));
                if (seen.insert(graph_.label(section)).second) {
                    std::string list;
                    for (const auto& s : seen) list += (list.empty() ? "\"" : ", \"") + s + "\"";
                    error("NodeInMultipleSections", "node \"" + name + "\" is used in sections " + list, label.span);
                }
            }
            return;
        }
        const NodeId id{static_cast<std::uint32_t>(graph_.nodes.size())};
        graph_.nodes.push_back({name, section});
        graph_.sections[section.value].nodes.push_back(id);
    }

    Transition make_transition(const TransitionDecl& single, TransitionKind kind) {
        Transition t;
        t.kind = kind;
        t.src = *graph_.find_node(single.pre_nodes.front().canonical());
        t.dst = *graph_.find_node(single.dest.canonical());
        for (const auto& e : single.events) {
            const EventId id = intern_event(e.canonical());
            if (std::find(t.events.begin(), t.events.end(), id) == t.events.end()) t.events.push_back(id);
        }
        t.span = single.span;
        return t;
    }

    bool self_loop(const TransitionDecl& single) {
        if (single.pre_nodes.front() == single.dest) {
            error("SelfLoop", "node \"" + single.dest.canonical() + "\" cannot transition to itself", single.span);
            return true;
        }
        return false;
    }

    void collect_section_transitions() {
        for (std::size_t si = 0; si < section_decls_.size(); ++si) {
            const SectionId section{static_cast<std::uint32_t>(si)};
            for (const auto& decl : section_decls_[si]->transitions) {
                for (const auto& single : desugar_or(decl)) {
                    mention(single.pre_nodes.front(), section);
                    mention(single.dest, section);
                    if (self_loop(single)) continue;
                    graph_.transitions.push_back(make_transition(single, TransitionKind::Node));
                    graph_.sections[si].transitions.push_back(
                        TransitionId{static_cast<std::uint32_t>(graph_.transitions.size() - 1)});
                }
            }
        }
    }

    void resolve_initial() {
        const std::string name = ast_.initial.canonical();
        if (auto id = graph_.find_node(name)) {
            graph_.initial = *id;
        } else {
            error("UnknownInitialNode", "initial node \"" + name + "\" does not appear in any section",
                  ast_.initial.span);
        }
    }

    void collect_where_clauses() {
        for (const auto& decl : ast_.where_clauses) {
            for (const auto& single : desugar_or(decl)) {
                bool owned = true;
                for (const Label* end : {&single.pre_nodes.front(), &single.dest}) {
                    if (!graph_.find_node(end->canonical())) {
                        error("WhereEndpointUnowned",
                              "node \"" + end->canonical() + "\" in a WHERE clause is not part of any section",
                              end->span);
                        owned = false;
                    }
                }
                if (!owned || self_loop(single)) continue;
                Transition t = make_transition(single, TransitionKind::Section);
                if (graph_.nodes[t.src.value].section == graph_.nodes[t.dst.value].section) {
                    error("WhereWithinSingleSection",
                          "WHERE transition \"" + graph_.label(t.src) + "\" -> \"" + graph_.label(t.dst) +
                              "\" stays inside section \"" + graph_.section_of(t.src).name + "\"",
                          single.span);
                    continue;
                }
                graph_.transitions.push_back(std::move(t));
                graph_.section_transitions.push_back(
                    TransitionId{static_cast<std::uint32_t>(graph_.transitions.size() - 1)});
            }
        }
    }

    void warn_duplicates_and_ambiguity() {
        const auto& ts = graph_.transitions;
        for (std::size_t j = 0; j < ts.size(); ++j) {
            std::set<EventId> later(ts[j].events.begin(), ts[j].events.end());
            for (std::size_t i = 0; i < j; ++i) {
                if (ts[i].src != ts[j].src) continue;
                std::set<EventId> earlier(ts[i].events.begin(), ts[i].events.end());
                const std::string src = "\"" + graph_.label(ts[i].src) + "\"";
                if (ts[i].dst == ts[j].dst && earlier == later) {
                    warning("DuplicateTransition", "transition from " + src + " to \"" + graph_.label(ts[j].dst) +
                                                       "\" is declared more than once",
                            ts[j].span);
                    break;
                }
                const bool overlap = std::any_of(later.begin(), later.end(),
                                                 [&](EventId e) { return earlier.count(e) > 0; });
                if (overlap) {
                    warning("AmbiguousTransitions",
                            "transitions from " + src + " to \"" + graph_.label(ts[i].dst) + "\" and \"" +
                                graph_.label(ts[j].dst) +
                                "\" share an event; the one declared first wins when both are enabled",
                            ts[j].span);
                    break;
                }
            }
        }
    }

    const StoryAst& ast_;
    StoryGraph graph_;
    std::vector<const SectionDecl*> section_decls_;
    std::map<std::string, std::set<std::string>> conflicts_;
    std::vector<Diagnostic> diagnostics_;
};

std::vector<std::vector<NodeId>> successors(const StoryGraph& graph) {
    std::vector<std::vector<NodeId>> succ(graph.nodes.size());
    for (const auto& t : graph.transitions) succ[t.src.value].push_back(t.dst);
    return succ;
}

std::vector<NodeId> find_cycle(const StoryGraph& graph) {
    enum class Color { White, Gray, Black };
    const auto succ = successors(graph);
    std::vector<Color> color(graph.nodes.size(), Color::White);
    std::vector<NodeId> path;
    std::vector<NodeId> cycle;

    std::function<bool(NodeId)> visit = [&](NodeId v) {
        color[v.value] = Color::Gray;
        path.push_back(v);
        for (NodeId w : succ[v.value]) {
            if (color[w.value] == Color::Gray) {
                auto it = std::find(path.begin(), path.end(), w);
                cycle.assign(it, path.end());
                cycle.push_back(w);
                return true;
            }
            if (color[w.value] == Color::White && visit(w)) return true;
        }
        path.pop_back();
        color[v.value] = Color::Black;
        return false;
    };

    for (std::uint32_t i = 0; i < graph.nodes.size(); ++i)
        if (color[i] == Color::White && visit(NodeId{i})) break;
    return cycle;
}

} // namespace

ResolveResult resolve(const StoryAst& ast) { return Resolver(ast).run(); }

DagResult validate_dag(const StoryGraph& graph) {
    const auto succ = successors(graph);
    std::vector<int> indegree(graph.nodes.size(), 0);
    for (const auto& out : succ)
        for (NodeId w : out) ++indegree[w.value];

    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> ready;
    for (std::uint32_t i = 0; i < indegree.size(); ++i)
        if (indegree[i] == 0) ready.push(i);

    DagResult result;
    while (!ready.empty()) {
        const std::uint32_t v = ready.top();
        ready.pop();
        result.order.push_back(NodeId{v});
        for (NodeId w : succ[v])
            if (--indegree[w.value] == 0) ready.push(w.value);
    }
    if (result.order.size() != graph.nodes.size()) {
        result.order.clear();
        result.cycle = find_cycle(graph);
    }
    return result;
}

Diagnostic cycle_diagnostic(const StoryGraph& graph, const std::vector<NodeId>& cycle) {
    std::string text;
    for (NodeId n : cycle) text += (text.empty() ? "\"" : " -> \"") + graph.label(n) + "\"";
    SourceSpan span;
    if (cycle.size() >= 2) {
        for (const auto& t : graph.transitions)
            if (t.src == cycle[0] && t.dst == cycle[1]) {
                span = t.span;
                break;
            }
    }
    return {Level::Error, "CycleDiagnostic", "story graph has a cycle: " + text, span};
}

namespace {

// Nodes carry no span of their own; point at the first transition that mentions one.
SourceSpan first_mention(const StoryGraph& graph, NodeId n) {
    for (const auto& t : graph.transitions)
        if (t.src == n || t.dst == n) return t.span;
    return {};
}

} // namespace

std::vector<Diagnostic> ReachabilityReport::to_diagnostics(const StoryGraph& graph) const {
    std::vector<Diagnostic> out;
    for (NodeId n : unreachable)
        out.push_back({Level::Warning, "UnreachableNode",
                       "node \"" + graph.label(n) + "\" cannot be reached from the initial node",
                       first_mention(graph, n)});
    for (NodeId n : terminals)
        out.push_back(
            {Level::Note, "TerminalNode", "node \"" + graph.label(n) + "\" is an ending", first_mention(graph, n)});
    return out;
}

ReachabilityReport reachability_report(const StoryGraph& graph) {
    const auto succ = successors(graph);
    std::vector<bool> seen(graph.nodes.size(), false);
    std::queue<NodeId> frontier;
    if (!graph.nodes.empty()) {
        seen[graph.initial.value] = true;
        frontier.push(graph.initial);
    }
    while (!frontier.empty()) {
        const NodeId v = frontier.front();
        frontier.pop();
        for (NodeId w : succ[v.value]) {
            if (!seen[w.value]) {
                seen[w.value] = true;
                frontier.push(w);
            }
        }
    }
    ReachabilityReport report;
    for (std::uint32_t i = 0; i < graph.nodes.size(); ++i) {
        if (!seen[i]) report.unreachable.push_back(NodeId{i});
        if (succ[i].empty()) report.terminals.push_back(NodeId{i});
    }
    return report;
}

LoadedStory load_story(std::string_view source) {
    LoadedStory loaded;
    StoryAst ast;
    try {
        ast = parse_story(source);
    } catch (const SagaError& e) {
        loaded.diagnostics.push_back(e.diagnostic());
        return loaded;
    }
    ResolveResult resolved = resolve(ast);
    loaded.diagnostics = std::move(resolved.diagnostics);
    if (!resolved.graph) return loaded;

    const DagResult dag = validate_dag(*resolved.graph);
    if (!dag.ok()) {
        loaded.diagnostics.push_back(cycle_diagnostic(*resolved.graph, *dag.cycle));
        return loaded;
    }
    for (auto& d : reachability_report(*resolved.graph).to_diagnostics(*resolved.graph))
        loaded.diagnostics.push_back(std::move(d));
    loaded.graph = std::move(resolved.graph);
    return loaded;
}

} // namespace saga
