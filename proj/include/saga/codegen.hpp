#pragma once

#include <set>
#include <string>
#include <vector>

#include "saga/abstract_code.hpp"
#include "saga/story_model.hpp"

namespace saga {

inline constexpr const char* kPackageName = "StoryDSL";
inline constexpr const char* kDriverModule = "StoryBuilder";
inline constexpr const char* kDriverFunction = "CreateStoryManager";
inline constexpr int kBannerWidth = 80;

/// `prefix__label` with every character outside [A-Za-z0-9_] replaced by `_`.
std::string sanitize_identifier(const std::string& prefix, const std::string& label);

/// Issues readable identifiers derived from labels. A result that collides with an
/// earlier one gets `_2`, `_3`, ... in discovery order.
class IdentifierRegistry {
public:
    std::string mangle(const std::string& prefix, const std::string& label);
    bool issued(const std::string& identifier) const { return issued_.count(identifier) > 0; }

private:
    std::set<std::string> issued_;
};

/// The story-independent modules: Node, NodeTransition, Section, SectionTransition,
/// Story and StoryManager, in that order.
std::vector<code::CodeModule> generate_pattern_modules();

/// Builds every node, transition, section and the story, then returns a StoryManager.
code::Transformation generate_story_instantiation(const StoryGraph& graph);

/// Pattern modules plus the StoryBuilder driver, packaged as StoryDSL. Throws
/// SagaError(InternalCodegenError) if the result does not validate.
code::AbstractCode compile(const StoryGraph& graph);

} // namespace saga
