#pragma once

// Shared between the generic table and the dialect overrides.

#include <string>
#include <vector>

#include "saga/diagnostics.hpp"
#include "saga/render.hpp"

namespace saga::render {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const RenderConfig& java_config();
const RenderConfig& csharp_config();
const RenderConfig& cxx_config();

namespace generic {

// One declaration per table entry, spelled through the entry's function type.
#define SAGA_DECLARE_GENERIC(entry, sig) \
    using entry##_fn = sig;              \
    entry##_fn entry;
SAGA_RENDER_ENTRIES(SAGA_DECLARE_GENERIC)
#undef SAGA_DECLARE_GENERIC

std::string join(const std::vector<std::string>& parts, const std::string& sep);
std::string args(const RenderConfig& c, const std::vector<code::Value>& values);
std::string escape(const std::string& s);
std::string literal_list(const RenderConfig& c, const std::vector<code::Literal>& lits);
std::string trailing_label(const std::string& label);
/// Type argument of a list: boxed for base types, lists nested at most once.
std::string element_type(const RenderConfig& c, const code::StateType& element);
std::string type_label(const code::StateType& t);
[[noreturn]] void unmappable(const RenderConfig& c, const std::string& what);

} // namespace generic
} // namespace saga::render
