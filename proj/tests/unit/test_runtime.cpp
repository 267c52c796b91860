#include "doctest.h"
#include "generators.hpp"
#include "oracles.hpp"
#include "saga/ast.hpp"
#include "saga/runtime.hpp"
#include "test_util.hpp"

using namespace saga;

namespace {

StoryGraph graph_of(const std::string& body, const std::string& where = "") {
    return testutil::load_graph("STORY S INITIAL A SECTION X { " + body + " } WHERE " + where);
}

} // namespace

TEST_SUITE("fsm-runtime") {
    TEST_CASE("fresh state sits at the initial node") {
        const auto g = testutil::sample_graph();
        const auto s = new_state(g);
        CHECK(g.label(s.current) == "Village Burns");
        CHECK(s.happened.size() == 0);
        CHECK(s.history.empty());
        CHECK(new_state(g) == s);
    }

    TEST_CASE("single event fires") {
        const auto g = graph_of("A GOES B WHEN e");
        auto r = signal_event(new_state(g), g, "e");
        CHECK(g.label(r.state.current) == "B");
        REQUIRE(r.notifications.size() == 1);
        CHECK(r.notifications[0] == Notification{"B", "X", {"e"}});
        REQUIRE(r.state.history.size() == 1);
        CHECK(r.state.history[0].resulting_node == r.state.current);
        CHECK(g.label(r.state.history[0].triggering_event) == "e");
    }

    TEST_CASE("AND waits for every event") {
        const auto g = graph_of("A GOES B WHEN e AND f");
        auto r = signal_event(new_state(g), g, "e");
        CHECK(r.notifications.empty());
        CHECK(g.label(r.state.current) == "A");
        r = signal_event(r.state, g, "f");
        CHECK(g.label(r.state.current) == "B");
        CHECK(r.notifications[0].via_events == std::vector<std::string>{"e", "f"});
    }

    TEST_CASE("already satisfied transitions cascade") {
        const auto g = graph_of("A GOES B WHEN e, B GOES C WHEN e");
        const auto r = signal_event(new_state(g), g, "e");
        REQUIRE(r.notifications.size() == 2);
        CHECK(r.notifications[0].new_node == "B");
        CHECK(r.notifications[1].new_node == "C");
    }

    TEST_CASE("cascade picks up events from earlier signals") {
        const auto g = graph_of("A GOES B WHEN e, B GOES C WHEN f");
        StoryState s = new_state(g);
        apply_event(s, g, "f");
        CHECK(g.label(s.current) == "A");
        const auto notes = apply_event(s, g, "e");
        CHECK(notes.size() == 2);
        CHECK(g.label(s.current) == "C");
    }

    TEST_CASE("first transition in declaration order wins") {
        const auto g = graph_of("A GOES C WHEN e, A GOES B WHEN e");
        const auto r = signal_event(new_state(g), g, "e");
        CHECK(g.label(r.state.current) == "C");
    }

    TEST_CASE("section transitions come after section-internal ones") {
        const auto g = testutil::load_graph(
            "STORY S INITIAL A SECTION X { A GOES B WHEN e } SECTION Y { C GOES D WHEN e } WHERE A GOES C WHEN e");
        const auto r = signal_event(new_state(g), g, "e");
        CHECK(g.label(r.state.current) == "B");
    }

    TEST_CASE("unknown events are remembered but never match") {
        const auto g = graph_of("A GOES B WHEN e");
        const auto r = signal_event(new_state(g), g, "  thunder  ");
        CHECK(r.notifications.empty());
        CHECK(r.state.current == g.initial);
        CHECK(r.state.happened.labels(g) == std::vector<std::string>{"thunder"});
    }

    TEST_CASE("event labels are canonicalized") {
        const auto g = graph_of("A GOES B WHEN dawn breaks");
        const auto r = signal_event(new_state(g), g, "dawn   breaks");
        CHECK(g.label(r.state.current) == "B");
    }

    TEST_CASE("signal_event leaves the input state alone") {
        const auto g = graph_of("A GOES B WHEN e");
        const auto s = new_state(g);
        signal_event(s, g, "e");
        CHECK(s == new_state(g));
    }

    TEST_CASE("enabled transitions list the missing events") {
        const auto g = graph_of("A GOES B WHEN e AND f, A GOES C WHEN g");
        StoryState s = new_state(g);
        apply_event(s, g, "e");
        const auto en = enabled_transitions(s, g);
        REQUIRE(en.size() == 2);
        CHECK(g.label(g.transition(en[0].transition).dst) == "B");
        REQUIRE(en[0].missing.size() == 1);
        CHECK(g.label(en[0].missing[0]) == "f");
        apply_event(s, g, "f");
        CHECK(enabled_transitions(s, g).empty()); // B is an ending
    }

    TEST_CASE("an entry with nothing missing is exactly what would fire") {
        gen::Rng rng(5);
        const std::vector<std::string> events{"a", "b", "c"};
        for (int i = 0; i < 100; ++i) {
            const auto spec = gen::random_graph(rng, 8, 0, 0.4);
            const auto g = testutil::load_graph(gen::text(gen::story_from_graph(rng, spec, events, 2)));
            StoryState s = new_state(g);
            // Insert events without cascading by building the set directly through a
            // throwaway state, then compare predictions against a real signal.
            for (const auto& e : gen::random_sequence(rng, events, 4)) {
                std::optional<TransitionId> predicted;
                StoryState probe = s;
                probe.happened.insert(g, e);
                for (const auto& en : enabled_transitions(probe, g))
                    if (en.missing.empty()) {
                        predicted = en.transition;
                        break;
                    }
                const auto before = s.history.size();
                apply_event(s, g, e);
                if (predicted) {
                    REQUIRE(s.history.size() > before);
                    CHECK(s.history[before].transition == *predicted);
                } else {
                    CHECK(s.history.size() == before);
                }
            }
        }
    }

    TEST_CASE("notification log format") {
        const auto g = graph_of("A GOES B WHEN e, B GOES C WHEN e");
        CHECK(notification_log(g, {"x", "e"}) ==
              "start A [X]\n"
              "> x\n"
              "  (no change)\n"
              "> e\n"
              "  -> B [X] via e\n"
              "  -> C [X] via e\n");
    }

    TEST_CASE("sample walk matches the frozen transcript") {
        const auto g = testutil::sample_graph();
        const auto script = testutil::read_text(testutil::source_path("tests/golden/sealed_fate.events"));
        std::vector<std::string> events;
        std::istringstream in(script);
        for (std::string line; std::getline(in, line);)
            if (!line.empty()) events.push_back(line);
        CHECK(notification_log(g, events) ==
              testutil::read_text(testutil::source_path("tests/golden/sealed_fate.transcript")));
    }

    TEST_CASE("save and load round trip") {
        const auto g = testutil::sample_graph();
        StoryState s = new_state(g);
        CHECK(load(g, save(g, s)) == s);
        for (const char* e : {"hero escapes", "training complete", "oath spoken", "stray"}) apply_event(s, g, e);
        REQUIRE(s.history.size() == 3);
        const auto blob = save(g, s);
        CHECK(load(g, blob) == s);
        const auto doc = nlohmann::json::parse(blob);
        CHECK(doc["version"] == 1);
        CHECK(doc["current"] == "Oath Sworn");
        CHECK(doc["story_hash"] == structural_hash(g));
        CHECK(doc["happened"].size() == 4);
    }

    TEST_CASE("loading against another story fails") {
        const auto g = testutil::sample_graph();
        const auto blob = save(g, new_state(g));
        auto text = testutil::sample_source();
        text.replace(text.find("sword drawn"), 11, "sword raised");
        const auto other = testutil::load_graph(text);
        try {
            load(other, blob);
            FAIL("expected StoryMismatch");
        } catch (const SagaError& e) {
            CHECK(e.diagnostic().code == "StoryMismatch");
        }
    }

    TEST_CASE("malformed blobs are rejected") {
        const auto g = testutil::sample_graph();
        const auto good = nlohmann::json::parse(save(g, new_state(g)));
        auto with = [&](const char* key, nlohmann::json value) {
            auto doc = good;
            doc[key] = std::move(value);
            return doc.dump();
        };
        for (const std::string blob : {std::string("not json"), std::string("[]"), with("version", 2),
                                       with("current", "Nowhere"), with("happened", 3),
                                       with("history", nlohmann::json::array({{{"transition", 99}}}))}) {
            CAPTURE(blob);
            try {
                load(g, blob);
                FAIL("expected MalformedBlob");
            } catch (const SagaError& e) {
                CHECK(e.diagnostic().code == "MalformedBlob");
            }
        }
    }

    TEST_CASE("structural hash ignores layout and comments") {
        const auto g = testutil::sample_graph();
        const auto relaid = testutil::load_graph("// leading comment\n" + print_story(parse_story(
                                                                              testutil::sample_source())));
        CHECK(structural_hash(g) == structural_hash(relaid));
        CHECK(structural_hash(g).size() == 64);
        CHECK(structural_hash(graph_of("A GOES B WHEN e")) != structural_hash(graph_of("A GOES B WHEN f")));
    }

    TEST_CASE("independent branches reach the same end in any order") {
        // Two separate chains from X; events on each chain are disjoint.
        const auto g = testutil::load_graph(
            "STORY S INITIAL A SECTION X { A GOES B WHEN p AND q, B GOES C WHEN r } WHERE");
        std::vector<std::string> evs{"p", "q", "r"};
        std::sort(evs.begin(), evs.end());
        std::set<std::string> ends;
        do {
            StoryState s = new_state(g);
            for (const auto& e : evs) apply_event(s, g, e);
            ends.insert(g.label(s.current));
        } while (std::next_permutation(evs.begin(), evs.end()));
        CHECK(ends == std::set<std::string>{"C"});
    }
}
