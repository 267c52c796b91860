#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace saga {

/// A 1-based, inclusive region of source text.
struct SourceSpan {
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 1;

    bool operator==(const SourceSpan&) const = default;
};

enum class Level { Error, Warning, Note };

std::string to_string(Level level);

struct Diagnostic {
    Level level = Level::Error;
    std::string code;
    std::string message;
    SourceSpan span;

    bool is_error() const { return level == Level::Error; }
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// `LEVEL file:line:col CODE message`
std::string format_diagnostic(const Diagnostic& d, const std::string& file);
nlohmann::ordered_json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics, const std::string& file);

/// Raised by the front end; the first error aborts.
class SagaError : public std::runtime_error {
public:
    explicit SagaError(Diagnostic diagnostic);

    const Diagnostic& diagnostic() const { return diagnostic_; }

private:
    Diagnostic diagnostic_;
};

} // namespace saga
