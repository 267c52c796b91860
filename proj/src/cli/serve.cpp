#include "serve.hpp"

#include <filesystem>
#include <iostream>

#include "saga/cli.hpp"

namespace saga::cli {

namespace {

constexpr const char* kPlaceholder = R"(<!doctype html>
<html>
<head><meta charset="utf-8"><title>saga walker</title></head>
<body>
<p>The walker UI is not built. Start the server with <code>--ui-dir</code> pointing at the UI bundle,
or use the API directly: <a href="/api/story">/api/story</a>, <a href="/api/state">/api/state</a>.</p>
</body>
</html>
)";

void reply(httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body.dump(), "application/json");
}

} // namespace

void install_routes(httplib::Server& server, WalkerService& service, const std::string& ui_dir) {
    auto api = [&service](const httplib::Request& req, httplib::Response& res) {
        reply(res, service.handle(req.method, req.path, req.body));
    };
    server.Get(R"(/api/.*)", api);
    server.Post(R"(/api/.*)", api);

    if (ui_dir.empty() || !server.set_mount_point("/", ui_dir)) {
        server.Get("/", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(kPlaceholder, "text/html; charset=utf-8");
        });
    }

    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty()) return;
        const std::string code = res.status == 404 ? "NotFound" : "HttpError";
        nlohmann::ordered_json body{{"error", "cannot " + req.method + " " + req.path}, {"code", code}};
        res.set_content(body.dump(), "application/json");
    });
}

int serve_story(StoryGraph graph, const std::string& host, int port, const std::string& ui_dir, std::ostream& out,
                std::ostream& err) {
    WalkerService service(std::move(graph));
    httplib::Server server;
    if (!ui_dir.empty() && !std::filesystem::is_directory(ui_dir)) {
        err << "error: UI directory " << ui_dir << " does not exist\n";
        return kIoError;
    }
    install_routes(server, service, ui_dir);
    if (!server.bind_to_port(host, port)) {
        err << "error: cannot listen on " << host << ":" << port << "\n";
        return kIoError;
    }
    out << "serving on http://" << host << ":" << port << "/\n" << std::flush;
    server.listen_after_bind();
    return kOk;
}

} // namespace saga::cli
