#include "saga/diagnostics.hpp"

#include <algorithm>

namespace saga {

std::string to_string(Level level) {
    switch (level) {
        case Level::Error: return "error";
        case Level::Warning: return "warning";
        case Level::Note: return "note";
    }
    return "error";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.is_error(); });
}

std::string format_diagnostic(const Diagnostic& d, const std::string& file) {
    return to_string(d.level) + " " + file + ":" + std::to_string(d.span.start_line) + ":" +
           std::to_string(d.span.start_col) + " " + d.code + " " + d.message;
}

nlohmann::ordered_json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics, const std::string& file) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& d : diagnostics) {
        nlohmann::ordered_json entry;
        entry["level"] = to_string(d.level);
        entry["file"] = file;
        entry["line"] = d.span.start_line;
        entry["col"] = d.span.start_col;
        entry["end_line"] = d.span.end_line;
        entry["end_col"] = d.span.end_col;
        entry["code"] = d.code;
        entry["message"] = d.message;
        out.push_back(std::move(entry));
    }
    return out;
}

SagaError::SagaError(Diagnostic diagnostic)
    : std::runtime_error(diagnostic.code + ": " + diagnostic.message), diagnostic_(std::move(diagnostic)) {}

} // namespace saga
