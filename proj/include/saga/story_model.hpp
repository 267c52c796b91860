#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "saga/ast.hpp"
#include "saga/diagnostics.hpp"

namespace saga {

/// Dense index into one of the StoryGraph's interning tables.
template <typename Tag>
struct Id {
    std::uint32_t value = 0;

    auto operator<=>(const Id&) const = default;
};

using NodeId = Id<struct NodeTag>;
using SectionId = Id<struct SectionTag>;
using EventId = Id<struct EventTag>;
using TransitionId = Id<struct TransitionTag>;

enum class TransitionKind { Node, Section };

/// A single-source transition after OR desugaring. Node transitions stay inside one
/// section; section transitions come from WHERE clauses and cross sections.
struct Transition {
    TransitionKind kind = TransitionKind::Node;
    NodeId src;
    NodeId dst;
    std::vector<EventId> events; // duplicate-free, in order of first mention
    SourceSpan span;

    bool operator==(const Transition& other) const {
        return kind == other.kind && src == other.src && dst == other.dst && events == other.events;
    }
};

struct StoryNode {
    std::string label;
    SectionId section;

    bool operator==(const StoryNode&) const = default;
};

struct Section {
    SectionId id;
    std::string name;
    std::vector<NodeId> nodes;             // order of first mention
    std::vector<TransitionId> transitions; // textual order

    bool operator==(const Section&) const = default;
};

/// Resolved, immutable story. `transitions` is the declaration order: every section's
/// transitions in textual order, then the WHERE clauses in textual order.
struct StoryGraph {
    std::string name;
    NodeId initial;
    std::vector<StoryNode> nodes;
    std::vector<std::string> events;
    std::vector<Section> sections;
    std::vector<Transition> transitions;
    std::vector<TransitionId> section_transitions;

    const std::string& label(NodeId id) const { return nodes[id.value].label; }
    const std::string& label(EventId id) const { return events[id.value]; }
    const std::string& label(SectionId id) const { return sections[id.value].name; }
    const Transition& transition(TransitionId id) const { return transitions[id.value]; }
    const Section& section_of(NodeId id) const { return sections[nodes[id.value].section.value]; }

    std::optional<NodeId> find_node(std::string_view label) const;
    std::optional<EventId> find_event(std::string_view label) const;
    std::optional<SectionId> find_section(std::string_view label) const;

    /// Transitions leaving `node`, in declaration order.
    std::vector<TransitionId> outgoing(NodeId node) const;

    bool operator==(const StoryGraph&) const = default;
};

/// Expands `A OR B GOES C WHEN e` into one declaration per source, in order.
std::vector<TransitionDecl> desugar_or(const TransitionDecl& decl);

struct ResolveResult {
    std::optional<StoryGraph> graph; // present iff no error diagnostics
    std::vector<Diagnostic> diagnostics;
};

/// Interns labels, infers section membership, desugars OR and checks well-formedness.
/// Does not check acyclicity; see validate_dag.
ResolveResult resolve(const StoryAst& ast);

struct DagResult {
    std::vector<NodeId> order;              // empty when a cycle exists
    std::optional<std::vector<NodeId>> cycle; // first node repeated at the end
    bool ok() const { return !cycle.has_value(); }
};

/// Topological order over node and section transitions (Kahn, smallest id first).
DagResult validate_dag(const StoryGraph& graph);
Diagnostic cycle_diagnostic(const StoryGraph& graph, const std::vector<NodeId>& cycle);

struct ReachabilityReport {
    std::vector<NodeId> unreachable;
    std::vector<NodeId> terminals;

    std::vector<Diagnostic> to_diagnostics(const StoryGraph& graph) const;
};

ReachabilityReport reachability_report(const StoryGraph& graph);

struct LoadedStory {
    std::optional<StoryGraph> graph; // present iff diagnostics contain no errors
    std::vector<Diagnostic> diagnostics;
};

/// Full front end: parse, resolve, validate_dag and reachability. Never throws on bad input.
LoadedStory load_story(std::string_view source);

} // namespace saga
