#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saga/diagnostics.hpp"

namespace saga {

enum class TokenKind {
    Story,
    Initial,
    Section,
    Goes,
    When,
    Where,
    Or,
    And,
    Word,
    LBrace,
    RBrace,
    Comma,
    Eof,
};

struct Token {
    TokenKind kind = TokenKind::Eof;
    std::string lexeme;
    SourceSpan span;

    bool is_keyword() const;
};

std::string to_string(TokenKind kind);

/// Maps a whole token to its keyword kind. Substrings never match ("GOESx" is a word).
std::optional<TokenKind> keyword_kind(std::string_view lexeme);
bool is_reserved_word(std::string_view lexeme);

enum class CommentReplacement {
    /// Line comments vanish, block comments become one space or just their newlines.
    Collapse,
    /// Every comment character becomes a space (newlines kept), so columns survive.
    Pad,
};

/// Removes `//` and non-nesting `/* */` comments. Throws SagaError(UnterminatedBlockComment).
std::string strip_comments(std::string_view source, CommentReplacement mode = CommentReplacement::Collapse);

/// Splits comment-free text into tokens; always ends with an Eof token.
/// Throws SagaError(NonAsciiInput) for bytes outside printable ASCII and whitespace.
std::vector<Token> tokenize(std::string_view source);

/// strip_comments (column preserving) followed by tokenize.
std::vector<Token> lex(std::string_view source);

} // namespace saga
