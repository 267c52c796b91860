#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace saga::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidStory = 1,
    kIoError = 2, // also used for bad command lines
    kRefusedOverwrite = 3,
};

/// Entry point for the saga tool. Streams are injected so tests can drive it in-process.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

/// Event labels from a walk script: one per line, surrounding blanks trimmed, blank
/// lines and lines starting with `#` skipped.
std::vector<std::string> read_script(std::string_view text);

} // namespace saga::cli
