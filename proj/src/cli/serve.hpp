#pragma once

#include <iosfwd>
#include <string>

#include "httplib.h"
#include "saga/walker.hpp"

namespace saga::cli {

/// API routes, static UI (or a placeholder page) and JSON 404s.
void install_routes(httplib::Server& server, WalkerService& service, const std::string& ui_dir);

/// Blocks until the server stops.
int serve_story(StoryGraph graph, const std::string& host, int port, const std::string& ui_dir, std::ostream& out,
                std::ostream& err);

} // namespace saga::cli
