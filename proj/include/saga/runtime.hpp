#pragma once

#include <set>
#include <string>
#include <vector>

#include "saga/story_model.hpp"

namespace saga {

/// Events that have happened so far. Labels the story never mentions are kept too,
/// but they can never enable a transition.
class EventSet {
public:
    void insert(const StoryGraph& graph, const std::string& label);
    bool contains(EventId id) const { return known_.count(id) > 0; }
    bool contains(const StoryGraph& graph, const std::string& label) const;

    /// Every happened label, sorted.
    std::vector<std::string> labels(const StoryGraph& graph) const;
    bool includes(const EventSet& other) const;
    std::size_t size() const { return known_.size() + unknown_.size(); }

    bool operator==(const EventSet&) const = default;

private:
    std::set<EventId> known_;
    std::set<std::string> unknown_;
};

struct FiredTransition {
    TransitionId transition;
    EventId triggering_event;
    NodeId resulting_node;
    SectionId resulting_section;

    bool operator==(const FiredTransition&) const = default;
};

struct StoryState {
    NodeId current;
    EventSet happened;
    std::vector<FiredTransition> history;

    bool operator==(const StoryState&) const = default;
};

/// What the story manager reports to the game each time the story moves.
struct Notification {
    std::string new_node;
    std::string new_section;
    std::vector<std::string> via_events;

    bool operator==(const Notification&) const = default;
};

StoryState new_state(const StoryGraph& graph);

/// Records the event, then fires enabled transitions out of the current node until none
/// is left, always picking the first in declaration order.
std::vector<Notification> apply_event(StoryState& state, const StoryGraph& graph, std::string_view event);

struct SignalResult {
    StoryState state;
    std::vector<Notification> notifications;
};

SignalResult signal_event(const StoryState& state, const StoryGraph& graph, std::string_view event);

struct EnabledTransition {
    TransitionId transition;
    std::vector<EventId> missing; // declaration order; empty means it fires now
};

std::vector<EnabledTransition> enabled_transitions(const StoryState& state, const StoryGraph& graph);

Notification notification_for(const StoryGraph& graph, const FiredTransition& fired);

/// `  -> Node [Section] via a AND b`
std::string format_notification(const Notification& n);
std::string format_start(const StoryGraph& graph, const StoryState& state);

/// Transcript of a fresh run over `events`: a start line, then `> event` followed by one
/// line per notification (or `  (no change)`).
std::string notification_log(const StoryGraph& graph, const std::vector<std::string>& events);

/// Hex SHA-256 over a canonical serialization of labels and transitions.
std::string structural_hash(const StoryGraph& graph);

/// Versioned JSON save document. load throws SagaError with code StoryMismatch or MalformedBlob.
std::string save(const StoryGraph& graph, const StoryState& state);
StoryState load(const StoryGraph& graph, std::string_view blob);

} // namespace saga
