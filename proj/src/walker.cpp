#include "saga/walker.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "saga/ast.hpp"
#include "saga/graph_export.hpp"

namespace saga {

using nlohmann::ordered_json;

WalkSession::WalkSession(const StoryGraph& graph, std::ostream& out)
    : graph_(graph), out_(out), state_(new_state(graph)) {}

void WalkSession::start() { out_ << format_start(graph_, state_) << "\n"; }

std::vector<Notification> WalkSession::signal(const std::string& event) {
    out_ << "> " << canonicalize(event) << "\n";
    auto notes = apply_event(state_, graph_, event);
    if (notes.empty()) out_ << "  (no change)\n";
    for (const auto& n : notes) out_ << format_notification(n) << "\n";
    return notes;
}

std::vector<std::string> menu_events(const StoryGraph& graph) {
    std::vector<std::string> events = graph.events;
    std::sort(events.begin(), events.end());
    return events;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

struct Style {
    bool color;
    std::string bold(const std::string& s) const { return color ? "\033[1m" + s + "\033[0m" : s; }
    std::string dim(const std::string& s) const { return color ? "\033[2m" + s + "\033[0m" : s; }
};

void show_state(const StoryGraph& g, const StoryState& st, std::ostream& out, const Style& style) {
    out << style.bold("Section: ") << g.section_of(st.current).name << "\n";
    out << style.bold("Node:    ") << g.label(st.current) << "\n";
    const auto happened = st.happened.labels(g);
    out << style.bold("Happened:") << (happened.empty() ? " (none)" : "");
    for (std::size_t i = 0; i < happened.size(); ++i) out << (i ? ", " : " ") << happened[i];
    out << "\n";
}

void show_menu(const StoryGraph& g, const StoryState& st, std::ostream& out, const Style& style) {
    const auto events = menu_events(g);
    out << style.bold("Events:") << "\n";
    for (std::size_t i = 0; i < events.size(); ++i) {
        const bool done = st.happened.contains(g, events[i]);
        out << "  " << (i + 1) << ") " << events[i] << (done ? style.dim(" (happened)") : "") << "\n";
    }
    const auto enabled = enabled_transitions(st, g);
    if (!enabled.empty()) {
        out << style.bold("Ways on:") << "\n";
        for (const auto& e : enabled) {
            out << "  " << g.label(g.transition(e.transition).dst) << " needs ";
            for (std::size_t i = 0; i < e.missing.size(); ++i) out << (i ? " AND " : "") << g.label(e.missing[i]);
            out << "\n";
        }
    } else {
        out << style.dim("This is an ending.") << "\n";
    }
}

void show_history(const StoryGraph& g, const StoryState& st, std::ostream& out) {
    if (st.history.empty()) {
        out << "no transitions yet\n";
        return;
    }
    for (std::size_t i = 0; i < st.history.size(); ++i) {
        const auto& f = st.history[i];
        const auto& t = g.transition(f.transition);
        out << "  " << (i + 1) << ". " << g.label(t.src) << " -> " << g.label(t.dst) << " on "
            << g.label(f.triggering_event) << "\n";
    }
}

} // namespace

void interactive_walk(const StoryGraph& graph, std::istream& in, std::ostream& out, bool color) {
    const Style style{color};
    const auto events = menu_events(graph);
    WalkSession session(graph, out);
    out << style.bold(graph.name) << "\n";
    session.start();
    show_menu(graph, session.state(), out, style);

    std::string line;
    while (true) {
        out << "saga> " << std::flush;
        if (!std::getline(in, line)) {
            out << "\n";
            return;
        }
        const std::string input = trim(line);
        if (input.empty()) continue;

        const auto space = input.find(' ');
        const std::string command = input.substr(0, space);
        const std::string arg = space == std::string::npos ? "" : trim(input.substr(space + 1));

        if (input == "quit" || input == "q") return;
        if (input == "events") {
            show_menu(graph, session.state(), out, style);
            continue;
        }
        if (input == "state") {
            show_state(graph, session.state(), out, style);
            continue;
        }
        if (input == "history") {
            show_history(graph, session.state(), out);
            continue;
        }
        if (command == "save" && !arg.empty()) {
            std::ofstream file(arg, std::ios::binary);
            if (!(file << save(graph, session.state()))) {
                out << "could not write " << arg << "\n";
                continue;
            }
            out << "saved to " << arg << "\n";
            continue;
        }
        if (command == "load" && !arg.empty()) {
            std::ifstream file(arg, std::ios::binary);
            std::stringstream blob;
            if (!file || !(blob << file.rdbuf())) {
                out << "could not read " << arg << "\n";
                continue;
            }
            try {
                session.set_state(load(graph, blob.str()));
            } catch (const SagaError& e) {
                out << e.diagnostic().code << ": " << e.diagnostic().message << "\n";
                continue;
            }
            out << "loaded " << arg << "\n";
            show_state(graph, session.state(), out, style);
            continue;
        }

        std::string event;
        if (std::all_of(input.begin(), input.end(), [](unsigned char c) { return std::isdigit(c); })) {
            const auto pick = input.size() < 6 ? std::stoul(input) : 0;
            if (pick >= 1 && pick <= events.size()) event = events[pick - 1];
        } else if (std::binary_search(events.begin(), events.end(), canonicalize(input))) {
            event = canonicalize(input);
        }
        if (event.empty()) {
            out << "unknown selection; pick a number from the menu, or type events, state, history, save <file>, "
                   "load <file> or quit\n";
            continue;
        }
        session.signal(event);
        if (enabled_transitions(session.state(), graph).empty()) out << style.dim("This is an ending.") << "\n";
    }
}

// ---------------------------------------------------------------------------

ordered_json notification_json(const Notification& n) {
    return {{"node", n.new_node}, {"section", n.new_section}, {"events", n.via_events}};
}

WalkerService::WalkerService(StoryGraph graph) : graph_(std::move(graph)), state_(new_state(graph_)) {}

ordered_json WalkerService::story_json() const { return graph_json(graph_); }

ordered_json WalkerService::state_json() {
    std::lock_guard lock(mutex_);
    return state_json_locked();
}

StoryState WalkerService::snapshot() {
    std::lock_guard lock(mutex_);
    return state_;
}

ordered_json WalkerService::state_json_locked() const {
    ordered_json history = ordered_json::array();
    for (const auto& f : state_.history) {
        const auto& t = graph_.transition(f.transition);
        history.push_back({{"src", graph_.label(t.src)},
                           {"dst", graph_.label(t.dst)},
                           {"event", graph_.label(f.triggering_event)},
                           {"kind", t.kind == TransitionKind::Node ? "node" : "section"}});
    }
    ordered_json enabled = ordered_json::array();
    for (const auto& e : enabled_transitions(state_, graph_)) {
        ordered_json missing = ordered_json::array();
        for (EventId m : e.missing) missing.push_back(graph_.label(m));
        enabled.push_back({{"dst", graph_.label(graph_.transition(e.transition).dst)}, {"missing", missing}});
    }
    return {{"current", graph_.label(state_.current)},
            {"section", graph_.section_of(state_.current).name},
            {"happened", state_.happened.labels(graph_)},
            {"history", std::move(history)},
            {"enabled", std::move(enabled)}};
}

namespace {

ApiResponse error(int status, const std::string& code, const std::string& message) {
    return {status, {{"error", message}, {"code", code}}};
}

} // namespace

ApiResponse WalkerService::handle(const std::string& method, const std::string& path, const std::string& body) {
    if (method == "GET" && path == "/api/story") return {200, story_json()};
    if (method == "GET" && path == "/api/state") return {200, state_json()};
    if (method == "POST" && path == "/api/reset") {
        std::lock_guard lock(mutex_);
        state_ = new_state(graph_);
        return {200, state_json_locked()};
    }
    if (method == "POST" && path == "/api/events") {
        const auto doc = nlohmann::json::parse(body, nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || !doc.contains("event") || !doc["event"].is_string())
            return error(400, "MalformedBody", "expected a JSON object {\"event\": \"<label>\"}");
        const std::string event = canonicalize(doc["event"].get<std::string>());
        if (event.empty()) return error(400, "MalformedBody", "event label is empty");

        std::lock_guard lock(mutex_);
        ordered_json notes = ordered_json::array();
        for (const auto& n : apply_event(state_, graph_, event)) notes.push_back(notification_json(n));
        return {200, {{"notifications", std::move(notes)}, {"state", state_json_locked()}}};
    }
    return error(404, "NotFound", "no route for " + method + " " + path);
}

} // namespace saga
