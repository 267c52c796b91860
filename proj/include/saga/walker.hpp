#pragma once

#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "saga/runtime.hpp"

namespace saga {

/// Prints a walk as it happens. The script mode of `saga walk` is just a session fed
/// from a file, so its transcript has the same shape as notification_log.
class WalkSession {
public:
    WalkSession(const StoryGraph& graph, std::ostream& out);

    void start();
    std::vector<Notification> signal(const std::string& event);

    const StoryState& state() const { return state_; }
    void set_state(StoryState state) { state_ = std::move(state); }

private:
    const StoryGraph& graph_;
    std::ostream& out_;
    StoryState state_;
};

/// Every event label in the story, sorted; this is the walk menu.
std::vector<std::string> menu_events(const StoryGraph& graph);

/// Interactive loop over `in`. Returns when input ends or on `quit`.
void interactive_walk(const StoryGraph& graph, std::istream& in, std::ostream& out, bool color);

struct ApiResponse {
    int status = 200;
    nlohmann::ordered_json body;
};

/// The one shared walk behind `saga serve`. Every call takes the same lock, so the
/// history seen by clients is a single total order.
class WalkerService {
public:
    explicit WalkerService(StoryGraph graph);

    ApiResponse handle(const std::string& method, const std::string& path, const std::string& body);

    nlohmann::ordered_json story_json() const;
    nlohmann::ordered_json state_json();
    StoryState snapshot();

private:
    nlohmann::ordered_json state_json_locked() const;

    StoryGraph graph_;
    std::mutex mutex_;
    StoryState state_;
};

nlohmann::ordered_json notification_json(const Notification& n);

} // namespace saga
