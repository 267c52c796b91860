#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "saga/story_model.hpp"

namespace saga {

/// Graphviz source: one cluster per section, the initial node double-circled, node
/// transitions solid and WHERE transitions dashed. Node ids are n<index>.
std::string to_dot(const StoryGraph& graph);

/// {story, initial, sections:[{name, nodes}], transitions:[{src, dst, events, kind}]}
nlohmann::ordered_json graph_json(const StoryGraph& graph);
std::string to_graph_json(const StoryGraph& graph);

/// Quotes a string for use as a dot ID.
std::string dot_quote(const std::string& s);

} // namespace saga
