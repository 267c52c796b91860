#include "saga/runtime.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

namespace saga {

void EventSet::insert(const StoryGraph& graph, const std::string& label) {
    if (auto id = graph.find_event(label))
        known_.insert(*id);
    else
        unknown_.insert(label);
}

bool EventSet::contains(const StoryGraph& graph, const std::string& label) const {
    if (auto id = graph.find_event(label)) return contains(*id);
    return unknown_.count(label) > 0;
}

std::vector<std::string> EventSet::labels(const StoryGraph& graph) const {
    std::vector<std::string> out(unknown_.begin(), unknown_.end());
    for (EventId id : known_) out.push_back(graph.label(id));
    std::sort(out.begin(), out.end());
    return out;
}

bool EventSet::includes(const EventSet& other) const {
    return std::includes(known_.begin(), known_.end(), other.known_.begin(), other.known_.end()) &&
           std::includes(unknown_.begin(), unknown_.end(), other.unknown_.begin(), other.unknown_.end());
}

StoryState new_state(const StoryGraph& graph) {
    StoryState state;
    state.current = graph.initial;
    return state;
}

namespace {

bool satisfied(const Transition& t, const EventSet& happened) {
    return std::all_of(t.events.begin(), t.events.end(), [&](EventId e) { return happened.contains(e); });
}

std::string join_events(const std::vector<std::string>& events) {
    std::string out;
    for (const auto& e : events) out += (out.empty() ? "" : " AND ") + e;
    return out;
}

} // namespace

std::vector<Notification> apply_event(StoryState& state, const StoryGraph& graph, std::string_view event) {
    const std::string label = canonicalize(event);
    state.happened.insert(graph, label);
    const auto trigger = graph.find_event(label);

    std::vector<Notification> out;
    if (!trigger) return out;
    // Acyclic, so each hop visits a new node and the cascade ends.
    for (;;) {
        const auto candidates = graph.outgoing(state.current);
        auto next = std::find_if(candidates.begin(), candidates.end(),
                                 [&](TransitionId id) { return satisfied(graph.transition(id), state.happened); });
        if (next == candidates.end()) break;
        const Transition& t = graph.transition(*next);
        FiredTransition fired{*next, *trigger, t.dst, graph.nodes[t.dst.value].section};
        state.current = t.dst;
        state.history.push_back(fired);
        out.push_back(notification_for(graph, fired));
    }
    return out;
}

SignalResult signal_event(const StoryState& state, const StoryGraph& graph, std::string_view event) {
    SignalResult result{state, {}};
    result.notifications = apply_event(result.state, graph, event);
    return result;
}

std::vector<EnabledTransition> enabled_transitions(const StoryState& state, const StoryGraph& graph) {
    std::vector<EnabledTransition> out;
    for (TransitionId id : graph.outgoing(state.current)) {
        EnabledTransition entry{id, {}};
        for (EventId e : graph.transition(id).events)
            if (!state.happened.contains(e)) entry.missing.push_back(e);
        out.push_back(std::move(entry));
    }
    return out;
}

Notification notification_for(const StoryGraph& graph, const FiredTransition& fired) {
    Notification n;
    n.new_node = graph.label(fired.resulting_node);
    n.new_section = graph.label(fired.resulting_section);
    for (EventId e : graph.transition(fired.transition).events) n.via_events.push_back(graph.label(e));
    return n;
}

std::string format_notification(const Notification& n) {
    return "  -> " + n.new_node + " [" + n.new_section + "] via " + join_events(n.via_events);
}

std::string format_start(const StoryGraph& graph, const StoryState& state) {
    return "start " + graph.label(state.current) + " [" + graph.section_of(state.current).name + "]";
}

std::string notification_log(const StoryGraph& graph, const std::vector<std::string>& events) {
    StoryState state = new_state(graph);
    std::ostringstream out;
    out << format_start(graph, state) << "\n";
    for (const auto& e : events) {
        out << "> " << canonicalize(e) << "\n";
        const auto notes = apply_event(state, graph, e);
        if (notes.empty()) out << "  (no change)\n";
        for (const auto& n : notes) out << format_notification(n) << "\n";
    }
    return out.str();
}

namespace {

// Length-prefixed fields keep the serialization unambiguous for any label text.
void field(std::string& out, std::string_view text) {
    out += std::to_string(text.size());
    out += ':';
    out.append(text);
    out += ';';
}

std::string canonical_serialization(const StoryGraph& graph) {
    std::string out = "saga-story-v1;";
    field(out, graph.name);
    field(out, graph.label(graph.initial));
    for (const auto& s : graph.sections) {
        out += "S";
        field(out, s.name);
        for (NodeId n : s.nodes) field(out, graph.label(n));
        for (TransitionId id : s.transitions) {
            const Transition& t = graph.transition(id);
            out += "T";
            field(out, graph.label(t.src));
            field(out, graph.label(t.dst));
            for (EventId e : t.events) field(out, graph.label(e));
        }
    }
    for (TransitionId id : graph.section_transitions) {
        const Transition& t = graph.transition(id);
        out += "W";
        field(out, graph.label(t.src));
        field(out, graph.label(t.dst));
        for (EventId e : t.events) field(out, graph.label(e));
    }
    return out;
}

[[noreturn]] void malformed(const std::string& why) {
    throw SagaError({Level::Error, "MalformedBlob", why, {}});
}

} // namespace

std::string structural_hash(const StoryGraph& graph) {
    const std::string data = canonical_serialization(graph);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    for (unsigned int i = 0; i < length; ++i) {
        hex += kHex[digest[i] >> 4];
        hex += kHex[digest[i] & 0xf];
    }
    return hex;
}

std::string save(const StoryGraph& graph, const StoryState& state) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["story_hash"] = structural_hash(graph);
    doc["current"] = graph.label(state.current);
    doc["happened"] = state.happened.labels(graph);
    doc["history"] = nlohmann::ordered_json::array();
    for (const auto& f : state.history) {
        const Transition& t = graph.transition(f.transition);
        nlohmann::ordered_json entry;
        entry["transition"] = f.transition.value;
        entry["src"] = graph.label(t.src);
        entry["dst"] = graph.label(f.resulting_node);
        entry["event"] = graph.label(f.triggering_event);
        doc["history"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

StoryState load(const StoryGraph& graph, std::string_view blob) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(blob);
    } catch (const nlohmann::json::exception& e) {
        malformed(std::string("save file is not valid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || doc.at("version") != 1) malformed("unsupported save version");
        const std::string expected = structural_hash(graph);
        const std::string found = doc.at("story_hash").get<std::string>();
        if (found != expected) {
            throw SagaError({Level::Error, "StoryMismatch",
                             "save belongs to a different story (expected " + expected + ", found " + found + ")",
                             {}});
        }

        StoryState state = new_state(graph);
        const auto current = graph.find_node(doc.at("current").get<std::string>());
        if (!current) malformed("unknown current node");
        state.current = *current;
        for (const auto& e : doc.at("happened")) state.happened.insert(graph, e.get<std::string>());

        for (const auto& entry : doc.at("history")) {
            const auto index = entry.at("transition").get<std::uint32_t>();
            if (index >= graph.transitions.size()) malformed("history refers to a missing transition");
            const TransitionId id{index};
            const Transition& t = graph.transition(id);
            const auto event = graph.find_event(entry.at("event").get<std::string>());
            if (!event || entry.at("src") != graph.label(t.src) || entry.at("dst") != graph.label(t.dst))
                malformed("history entry does not match the story");
            state.history.push_back({id, *event, t.dst, graph.nodes[t.dst.value].section});
        }
        return state;
    } catch (const nlohmann::json::exception& e) {
        malformed(std::string("save file is missing fields: ") + e.what());
    }
}

} // namespace saga
