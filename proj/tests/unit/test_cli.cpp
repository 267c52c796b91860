#include <filesystem>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "saga/cli.hpp"
#include "saga/runtime.hpp"
#include "saga/walker.hpp"
#include "serve.hpp"
#include "test_util.hpp"

using namespace saga;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args, const std::string& input = "") {
    args.insert(args.begin(), "saga");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("saga_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

const std::string kSample = testutil::source_path("stories/sealed_fate.saga");
const std::string kEvents = testutil::source_path("tests/golden/sealed_fate.events");

} // namespace

TEST_SUITE("cli") {
    TEST_CASE("check accepts the sample") {
        const auto r = run_cli({"check", kSample});
        CHECK(r.code == cli::kOk);
        CHECK(r.out.find(": ok") != std::string::npos);
    }

    TEST_CASE("check reports invalid stories with exit 1") {
        const auto dir = scratch("check");
        write(dir / "bad.saga", "STORY S INITIAL A\nSECTION X { A GOES A WHEN e } WHERE");
        const auto r = run_cli({"check", (dir / "bad.saga").string(), "--json"});
        CHECK(r.code == cli::kInvalidStory);
        CHECK(r.err.find("SelfLoop") != std::string::npos);
        CHECK(r.err.find("\"code\": \"SelfLoop\"") != std::string::npos);
    }

    TEST_CASE("missing files and bad usage exit 2") {
        CHECK(run_cli({"check", "/nonexistent/story.saga"}).code == cli::kIoError);
        CHECK(run_cli({"compile", kSample, "--target", "cobol"}).code == cli::kIoError);
        CHECK(run_cli({"frobnicate"}).code == cli::kIoError);
        CHECK(run_cli({}).code == cli::kIoError);
    }

    TEST_CASE("graph prints dot or json") {
        auto r = run_cli({"graph", kSample});
        CHECK(r.code == cli::kOk);
        CHECK(r.out.rfind("digraph", 0) == 0);
        r = run_cli({"graph", kSample, "--format", "json"});
        CHECK(r.code == cli::kOk);
        CHECK(nlohmann::json::parse(r.out)["initial"] == "Village Burns");
    }

    TEST_CASE("compile refuses to overwrite without --force") {
        const auto dir = scratch("compile");
        auto r = run_cli({"compile", kSample, "--target", "cxx", "--out", dir.string()});
        CHECK(r.code == cli::kOk);
        CHECK(fs::exists(dir / "StoryDSL.h"));
        CHECK(fs::exists(dir / "StoryDSL.cpp"));

        write(dir / "StoryDSL.cpp", "keep me");
        r = run_cli({"compile", kSample, "--target", "cxx", "--out", dir.string()});
        CHECK(r.code == cli::kRefusedOverwrite);
        CHECK(testutil::read_text((dir / "StoryDSL.cpp").string()) == "keep me");
        // All or nothing: the header was not rewritten either.
        CHECK(r.out.empty());

        r = run_cli({"compile", kSample, "--target", "cxx", "--out", dir.string(), "--force"});
        CHECK(r.code == cli::kOk);
        CHECK(testutil::read_text((dir / "StoryDSL.cpp").string()) != "keep me");
    }

    TEST_CASE("compile defaults to java") {
        const auto dir = scratch("java");
        const auto r = run_cli({"compile", kSample, "--out", dir.string()});
        CHECK(r.code == cli::kOk);
        CHECK(fs::exists(dir / "StoryDSL" / "NodeTransition.java"));
    }

    TEST_CASE("compile of an invalid story writes nothing") {
        const auto dir = scratch("invalid");
        write(dir / "bad.saga", "STORY S INITIAL A SECTION X { A GOES B WHEN e, B GOES A WHEN f } WHERE");
        const auto r = run_cli({"compile", (dir / "bad.saga").string(), "--out", (dir / "out").string()});
        CHECK(r.code == cli::kInvalidStory);
        CHECK_FALSE(fs::exists(dir / "out" / "StoryDSL"));
    }

    TEST_CASE("walk --script prints the runtime log") {
        const auto r = run_cli({"walk", kSample, "--script", kEvents});
        CHECK(r.code == cli::kOk);
        const auto g = testutil::sample_graph();
        CHECK(r.out == notification_log(g, cli::read_script(testutil::read_text(kEvents))));
    }

    TEST_CASE("script reading") {
        CHECK(cli::read_script("  a \n\n# skip\n b c\r\n") == std::vector<std::string>{"a", "b c"});
        CHECK(cli::read_script("").empty());
    }

    TEST_CASE("interactive walk from standard input") {
        const auto r = run_cli({"walk", kSample}, "hero escapes\nstate\nnot an event\nquit\n");
        CHECK(r.code == cli::kOk);
        CHECK(r.out.find("Mentor Appears") != std::string::npos);
        CHECK(r.out.find("\x1b[") == std::string::npos); // no colour on a captured stream
    }
}

TEST_SUITE("walker") {
    TEST_CASE("menu is the sorted event list") {
        const auto g = testutil::sample_graph();
        const auto menu = menu_events(g);
        CHECK(std::is_sorted(menu.begin(), menu.end()));
        CHECK(menu.size() == g.events.size());
    }

    TEST_CASE("numbers pick menu entries") {
        const auto g = testutil::load_graph("STORY S INITIAL A SECTION X { A GOES B WHEN b, B GOES C WHEN a } WHERE");
        std::istringstream in("1\n2\nq\n");
        std::ostringstream out;
        interactive_walk(g, in, out, false);
        // Menu order is a, b: "1" signals a (nothing yet), "2" signals b and cascades to C.
        CHECK(out.str().find("-> C [X] via a") != std::string::npos);
    }

    TEST_CASE("save and load inside a walk") {
        const auto dir = scratch("walk");
        const auto blob = (dir / "state.json").string();
        const auto g = testutil::sample_graph();
        {
            std::istringstream in("hero escapes\nsave " + blob + "\nquit\n");
            std::ostringstream out;
            interactive_walk(g, in, out, false);
        }
        REQUIRE(fs::exists(blob));
        std::istringstream in("load " + blob + "\nstate\nquit\n");
        std::ostringstream out;
        interactive_walk(g, in, out, false);
        CHECK(out.str().find("Mentor Appears") != std::string::npos);
    }

    TEST_CASE("service routes") {
        WalkerService svc(testutil::sample_graph());
        auto r = svc.handle("GET", "/api/story", "");
        CHECK(r.status == 200);
        CHECK(r.body["initial"] == "Village Burns");

        r = svc.handle("POST", "/api/events", R"({"event": "hero escapes"})");
        CHECK(r.status == 200);
        REQUIRE(r.body["notifications"].size() == 1);
        CHECK(r.body["notifications"][0]["node"] == "Mentor Appears");
        CHECK(r.body["state"]["current"] == "Mentor Appears");

        r = svc.handle("GET", "/api/state", "");
        CHECK(r.body["history"].size() == 1);
        CHECK(r.body["history"][0]["event"] == "hero escapes");
        CHECK(r.body["enabled"].size() >= 1);

        CHECK(svc.handle("POST", "/api/events", "nonsense").status == 400);
        CHECK(svc.handle("POST", "/api/events", R"({"event": ""})").status == 400);
        const auto missing = svc.handle("GET", "/api/nothing", "");
        CHECK(missing.status == 404);
        CHECK(missing.body["code"] == "NotFound");

        r = svc.handle("POST", "/api/reset", "");
        CHECK(r.status == 200);
        CHECK(svc.snapshot() == new_state(testutil::sample_graph()));
    }

    TEST_CASE("concurrent posts form one history") {
        WalkerService svc(testutil::sample_graph());
        std::vector<std::thread> threads;
        for (const char* e : {"hero escapes", "training complete", "stray one", "stray two"})
            threads.emplace_back([&svc, e] { svc.handle("POST", "/api/events", nlohmann::json{{"event", e}}.dump()); });
        for (auto& t : threads) t.join();
        const auto s = svc.snapshot();
        CHECK(s.happened.size() == 4);
        // Whatever the order, the history is a valid chain from the initial node.
        const auto g = testutil::sample_graph();
        NodeId at = g.initial;
        for (const auto& h : s.history) {
            CHECK(g.transition(h.transition).src == at);
            at = h.resulting_node;
        }
        CHECK(at == s.current);
    }

    TEST_CASE("http server answers") {
        WalkerService svc(testutil::sample_graph());
        httplib::Server server;
        cli::install_routes(server, svc, "");
        const int port = server.bind_to_any_port("127.0.0.1");
        REQUIRE(port > 0);
        std::thread t([&] { server.listen_after_bind(); });
        server.wait_until_ready();

        httplib::Client client("127.0.0.1", port);
        auto res = client.Get("/api/story");
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(nlohmann::json::parse(res->body)["story"] == "Sealed Fate");

        res = client.Post("/api/events", R"({"event": "hero escapes"})", "application/json");
        REQUIRE(res);
        CHECK(nlohmann::json::parse(res->body)["state"]["current"] == "Mentor Appears");

        res = client.Get("/api/missing");
        REQUIRE(res);
        CHECK(res->status == 404);

        res = client.Get("/");
        REQUIRE(res);
        CHECK(res->status == 200);

        server.stop();
        t.join();
    }
}
