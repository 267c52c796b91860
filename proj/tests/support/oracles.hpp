#pragma once

// Independent reference implementations. None of these call into the library code
// they are used to check.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "generators.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Tokens

struct Tok {
    std::string kind; // "KEYWORD", "WORD", "LBRACE", "RBRACE", "COMMA", "EOF"
    std::string lexeme;
    int line;
    int col;
};

/// Split on whitespace, then peel off punctuation. Comment-free ASCII input only.
inline std::vector<Tok> tokens(const std::string& src) {
    static const std::set<std::string> keywords{"STORY", "INITIAL", "SECTION", "GOES", "WHEN", "WHERE", "OR", "AND"};
    std::vector<Tok> out;
    int line = 1, col = 1;
    std::string word;
    int wl = 0, wc = 0;
    auto flush = [&] {
        if (word.empty()) return;
        out.push_back({keywords.count(word) ? "KEYWORD" : "WORD", word, wl, wc});
        word.clear();
    };
    for (char ch : src) {
        if (ch == '{' || ch == '}' || ch == ',') {
            flush();
            out.push_back({ch == '{' ? "LBRACE" : ch == '}' ? "RBRACE" : "COMMA", std::string(1, ch), line, col});
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            flush();
        } else {
            if (word.empty()) {
                wl = line;
                wc = col;
            }
            word += ch;
        }
        if (ch == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    flush();
    out.push_back({"EOF", "", line, col});
    return out;
}

// ---------------------------------------------------------------------------
// Graphs

/// Colour-marking DFS. Returns true if the directed graph has a cycle.
inline bool has_cycle(int n, const std::vector<gen::Edge>& edges) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& e : edges) adj[e.src].push_back(e.dst);
    std::vector<int> colour(static_cast<std::size_t>(n), 0);
    // Iterative to keep the oracle obviously terminating.
    for (int root = 0; root < n; ++root) {
        if (colour[root]) continue;
        std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
        colour[root] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < adj[v].size()) {
                const int w = adj[v][i++];
                if (colour[w] == 1) return true;
                if (colour[w] == 0) {
                    colour[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                colour[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

/// Labels reachable from `start` by breadth-first search over (src, dst) label pairs.
inline std::set<std::string> reachable(const std::string& start,
                                       const std::vector<std::pair<std::string, std::string>>& edges) {
    std::set<std::string> seen{start};
    std::queue<std::string> q;
    q.push(start);
    while (!q.empty()) {
        const auto v = q.front();
        q.pop();
        for (const auto& [a, b] : edges)
            if (a == v && seen.insert(b).second) q.push(b);
    }
    return seen;
}

// ---------------------------------------------------------------------------
// Runtime

struct Step {
    std::string node;
    std::string section;
    std::vector<std::string> events;
    bool operator==(const Step&) const = default;
};

/// Straightforward reading of the semantics over the generator's own story structure:
/// after each event, repeatedly fire the first (in declaration order) single-source
/// transition out of the current node whose events have all happened.
class Machine {
public:
    explicit Machine(const gen::Story& story) : current_(story.initial) {
        const auto expanded = gen::expand_or(story);
        for (const auto& sec : expanded.sections)
            for (const auto& t : sec.trans) {
                rules_.push_back(t);
                owner_[t.pre[0]] = sec.name;
                owner_[t.dst] = sec.name;
            }
        for (const auto& t : expanded.where) rules_.push_back(t);
    }

    std::vector<Step> signal(const std::string& event) {
        happened_.insert(event);
        std::vector<Step> steps;
        // A DAG can't fire more transitions than it has rules; the bound only
        // guards the oracle itself against a broken generator.
        for (std::size_t guard = 0; guard <= rules_.size(); ++guard) {
            const gen::Trans* chosen = nullptr;
            for (const auto& r : rules_) {
                if (r.pre[0] != current_) continue;
                if (std::all_of(r.events.begin(), r.events.end(), [&](auto& e) { return happened_.count(e) > 0; })) {
                    chosen = &r;
                    break;
                }
            }
            if (!chosen) break;
            current_ = chosen->dst;
            std::vector<std::string> evs;
            for (const auto& e : chosen->events)
                if (std::find(evs.begin(), evs.end(), e) == evs.end()) evs.push_back(e);
            steps.push_back({current_, owner_[current_], evs});
        }
        return steps;
    }

    const std::string& current() const { return current_; }

private:
    std::vector<gen::Trans> rules_;
    std::map<std::string, std::string> owner_;
    std::set<std::string> happened_;
    std::string current_;
};

// ---------------------------------------------------------------------------
// Dot

/// Accepts the subset of the dot language the exporter can produce:
///   digraph ID { stmt* }   stmt := attr_stmt | node_stmt | edge_stmt | subgraph | ID=ID ;
/// Returns an error message, or nullopt when the text is valid.
class DotChecker {
public:
    explicit DotChecker(std::string text) : s_(std::move(text)) {}

    std::optional<std::string> check() {
        try {
            skip();
            expect_word("digraph");
            id();
            block();
            skip();
            if (p_ != s_.size()) fail("trailing text");
            if (open_ != 0) fail("unbalanced braces");
        } catch (const std::string& e) {
            return e + " at offset " + std::to_string(p_);
        }
        return std::nullopt;
    }

    std::set<std::string> node_ids;
    int edges = 0;
    int clusters = 0;

private:
    [[noreturn]] void fail(const std::string& why) { throw why; }

    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }

    bool peek(char c) {
        skip();
        return p_ < s_.size() && s_[p_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++p_;
    }

    void expect_word(const std::string& w) {
        skip();
        if (s_.compare(p_, w.size(), w) != 0) fail("expected " + w);
        p_ += w.size();
    }

    std::string id() {
        skip();
        if (p_ >= s_.size()) fail("expected ID");
        if (s_[p_] == '"') {
            std::string out;
            ++p_;
            while (p_ < s_.size() && s_[p_] != '"') {
                if (s_[p_] == '\\') {
                    if (++p_ >= s_.size()) fail("dangling escape");
                } else if (s_[p_] == '\n') {
                    fail("newline in string");
                }
                out += s_[p_++];
            }
            if (p_ >= s_.size()) fail("unterminated string");
            ++p_;
            return out;
        }
        const std::size_t start = p_;
        while (p_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p_])) || s_[p_] == '_')) ++p_;
        if (start == p_) fail("expected ID");
        return s_.substr(start, p_ - start);
    }

    void attrs() {
        expect('[');
        while (!peek(']')) {
            id();
            expect('=');
            id();
            if (peek(',') || peek(';')) ++p_;
        }
        expect(']');
    }

    void block() {
        expect('{');
        ++open_;
        while (!peek('}')) statement();
        expect('}');
        --open_;
    }

    void statement() {
        skip();
        const std::size_t save = p_;
        const std::string first = id();
        if (first == "subgraph") {
            const std::string name = id();
            if (name.rfind("cluster", 0) == 0) ++clusters;
            block();
        } else if (first == "node" || first == "edge" || first == "graph") {
            attrs();
        } else if (peek('=')) {
            ++p_;
            id();
        } else if (peek('-')) {
            expect('-');
            expect('>');
            const std::string second = id();
            ++edges;
            if (!node_ids.count(first) || !node_ids.count(second)) fail("edge uses an undeclared node");
            if (peek('[')) attrs();
        } else {
            if (first.empty()) {
                p_ = save;
                fail("empty statement");
            }
            if (!node_ids.insert(first).second) fail("node " + first + " declared twice");
            if (peek('[')) attrs();
        }
        if (peek(';')) ++p_;
    }

    std::string s_;
    std::size_t p_ = 0;
    int open_ = 0;
};

} // namespace oracle
