#include "saga/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "saga/codegen.hpp"
#include "saga/graph_export.hpp"
#include "saga/render.hpp"
#include "saga/story_model.hpp"
#include "saga/walker.hpp"
#include "serve.hpp"

namespace fs = std::filesystem;

namespace saga::cli {

std::vector<std::string> read_script(std::string_view text) {
    std::vector<std::string> events;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        const auto e = line.find_last_not_of(" \t\r");
        events.push_back(line.substr(b, e - b + 1));
    }
    return events;
}

namespace {

bool read_file(const std::string& path, std::string& text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    return !in.bad();
}

bool write_file(const fs::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    return static_cast<bool>(out << text);
}

struct Loaded {
    int code = kOk;
    std::optional<StoryGraph> graph;
};

// Reads and validates a story, printing diagnostics. Warnings and notes never fail.
Loaded load(const std::string& path, std::ostream& err, bool json = false, bool quiet_notes = true) {
    std::string source;
    if (!read_file(path, source)) {
        err << "error: cannot read " << path << "\n";
        return {kIoError, std::nullopt};
    }
    auto story = load_story(source);
    for (const auto& d : story.diagnostics)
        if (!(quiet_notes && d.level == Level::Note)) err << format_diagnostic(d, path) << "\n";
    if (json) err << diagnostics_to_json(story.diagnostics, path).dump(2) << "\n";
    if (!story.graph) return {kInvalidStory, std::nullopt};
    return {kOk, std::move(story.graph)};
}

int cmd_check(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
    auto loaded = load(path, err, json, false);
    if (loaded.code == kOk) out << path << ": ok\n";
    return loaded.code;
}

int cmd_graph(const std::string& path, const std::string& format, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
    auto loaded = load(path, err);
    if (!loaded.graph) return loaded.code;
    const std::string text = format == "json" ? to_graph_json(*loaded.graph) : to_dot(*loaded.graph);
    if (out_path.empty()) {
        out << text;
        return kOk;
    }
    if (!write_file(out_path, text)) {
        err << "error: cannot write " << out_path << "\n";
        return kIoError;
    }
    return kOk;
}

int cmd_compile(const std::string& path, const std::string& target, const std::string& out_dir, bool force,
                std::ostream& out, std::ostream& err) {
    auto loaded = load(path, err);
    if (!loaded.graph) return loaded.code;
    std::vector<render::OutputFile> files;
    try {
        files = render::render_package(*render::parse_dialect(target), compile(*loaded.graph));
    } catch (const SagaError& e) {
        err << format_diagnostic(e.diagnostic(), path) << "\n";
        return kInvalidStory;
    }

    // All or nothing: refuse before writing anything.
    if (!force) {
        bool clash = false;
        for (const auto& f : files) {
            const fs::path p = fs::path(out_dir) / f.path;
            if (fs::exists(p)) {
                err << "error: " << p.string() << " already exists (use --force to overwrite)\n";
                clash = true;
            }
        }
        if (clash) return kRefusedOverwrite;
    }
    for (const auto& f : files) {
        const fs::path p = fs::path(out_dir) / f.path;
        if (!write_file(p, f.content)) {
            err << "error: cannot write " << p.string() << "\n";
            return kIoError;
        }
        out << p.string() << "\n";
    }
    return kOk;
}

int cmd_walk(const std::string& path, const std::string& script, std::istream& in, std::ostream& out,
             std::ostream& err) {
    auto loaded = load(path, err);
    if (!loaded.graph) return loaded.code;
    if (script.empty()) {
        interactive_walk(*loaded.graph, in, out, std::getenv("SAGA_NO_COLOR") == nullptr && &out == &std::cout);
        return kOk;
    }
    std::string text;
    if (!read_file(script, text)) {
        err << "error: cannot read " << script << "\n";
        return kIoError;
    }
    WalkSession session(*loaded.graph, out);
    session.start();
    for (const auto& e : read_script(text)) session.signal(e);
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"saga: compile and walk SAGA story descriptions"};
    app.require_subcommand(1);

    std::string story, format = "dot", out_path, target = "java", out_dir = "out", script, host = "127.0.0.1",
                       ui_dir;
    bool json = false, force = false;
    int port = 8080;

    auto* check = app.add_subcommand("check", "Parse and validate a story");
    check->add_option("story", story, "Story file")->required();
    check->add_flag("--json", json, "Also print diagnostics as JSON");

    auto* graph = app.add_subcommand("graph", "Export the story graph");
    graph->add_option("story", story, "Story file")->required();
    graph->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
    graph->add_option("--out", out_path, "Output file (default: standard output)");

    auto* comp = app.add_subcommand("compile", "Generate source code for a story");
    comp->add_option("story", story, "Story file")->required();
    comp->add_option("--target", target, "java, csharp or cxx")->check(CLI::IsMember({"java", "csharp", "cxx"}));
    comp->add_option("--out", out_dir, "Output directory");
    comp->add_flag("--force", force, "Overwrite existing files");

    auto* walk = app.add_subcommand("walk", "Walk through a story by hand");
    walk->add_option("story", story, "Story file")->required();
    walk->add_option("--script", script, "Replay event labels from a file, one per line");

    auto* serve = app.add_subcommand("serve", "Serve the walker UI and its JSON API");
    serve->add_option("story", story, "Story file")->required();
    serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Address to bind");
    serve->add_option("--ui-dir", ui_dir, "Directory holding the built walker UI");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kIoError;
    }

    if (*check) return cmd_check(story, json, out, err);
    if (*graph) return cmd_graph(story, format, out_path, out, err);
    if (*comp) return cmd_compile(story, target, out_dir, force, out, err);
    if (*walk) return cmd_walk(story, script, in, out, err);

    auto loaded = load(story, err);
    if (!loaded.graph) return loaded.code;
    return serve_story(std::move(*loaded.graph), host, port, ui_dir, out, err);
}

} // namespace saga::cli
