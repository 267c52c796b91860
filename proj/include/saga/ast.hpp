#pragma once

#include <string>
#include <vector>

#include "saga/diagnostics.hpp"
#include "saga/lexer.hpp"

namespace saga {

/// A phrase naming a story, section, node or event. Equality is on the canonical
/// (single-space joined) form only; spans are informational.
struct Label {
    std::vector<std::string> words;
    SourceSpan span;

    std::string canonical() const;

    bool operator==(const Label& other) const { return words == other.words; }
};

/// Builds a label from free text by collapsing whitespace runs. Empty text yields no words.
Label make_label(std::string_view text);

/// Canonical form of free text: words split on whitespace and joined by one space.
std::string canonicalize(std::string_view text);

struct TransitionDecl {
    std::vector<Label> pre_nodes;
    Label dest;
    std::vector<Label> events;
    SourceSpan span;

    bool operator==(const TransitionDecl& other) const {
        return pre_nodes == other.pre_nodes && dest == other.dest && events == other.events;
    }
};

struct SectionDecl {
    Label name;
    std::vector<TransitionDecl> transitions;
    SourceSpan span;

    bool operator==(const SectionDecl& other) const {
        return name == other.name && transitions == other.transitions;
    }
};

struct StoryAst {
    Label story_name;
    Label initial;
    std::vector<SectionDecl> sections;
    std::vector<TransitionDecl> where_clauses;

    bool operator==(const StoryAst&) const = default;
};

/// Recursive-descent parse of a token stream ending in Eof. Throws SagaError on the first
/// grammar violation (codes SyntaxError, MissingStoryName, MissingInitial).
StoryAst parse(const std::vector<Token>& tokens);

/// lex + parse.
StoryAst parse_story(std::string_view source);

/// Canonical SAGA text for an AST; re-parsing it yields an equal AST.
std::string print_story(const StoryAst& ast);

} // namespace saga
