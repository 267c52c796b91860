#include "saga/lexer.hpp"

#include <array>
#include <utility>

namespace saga {

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 8> kKeywords{{
    {"STORY", TokenKind::Story},
    {"INITIAL", TokenKind::Initial},
    {"SECTION", TokenKind::Section},
    {"GOES", TokenKind::Goes},
    {"WHEN", TokenKind::When},
    {"WHERE", TokenKind::Where},
    {"OR", TokenKind::Or},
    {"AND", TokenKind::And},
}};

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_punct(char c) { return c == '{' || c == '}' || c == ','; }

// Tracks 1-based line/column while walking the source byte by byte.
struct Cursor {
    int line = 1;
    int col = 1;

    void advance(char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
};

} // namespace

bool Token::is_keyword() const {
    switch (kind) {
        case TokenKind::Word:
        case TokenKind::LBrace:
        case TokenKind::RBrace:
        case TokenKind::Comma:
        case TokenKind::Eof: return false;
        default: return true;
    }
}

std::string to_string(TokenKind kind) {
    for (const auto& [text, k] : kKeywords)
        if (k == kind) return std::string(text);
    switch (kind) {
        case TokenKind::Word: return "word";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::Comma: return "','";
        case TokenKind::Eof: return "end of input";
        default: return "?";
    }
}

std::optional<TokenKind> keyword_kind(std::string_view lexeme) {
    for (const auto& [text, kind] : kKeywords)
        if (text == lexeme) return kind;
    return std::nullopt;
}

bool is_reserved_word(std::string_view lexeme) { return keyword_kind(lexeme).has_value(); }

std::string strip_comments(std::string_view source, CommentReplacement mode) {
    std::string out;
    out.reserve(source.size());
    Cursor cur;
    std::size_t i = 0;
    while (i < source.size()) {
        const char c = source[i];
        const char next = i + 1 < source.size() ? source[i + 1] : '\0';
        if (c == '/' && next == '/') {
            while (i < source.size() && source[i] != '\n') {
                if (mode == CommentReplacement::Pad) out += ' ';
                cur.advance(source[i]);
                ++i;
            }
            continue;
        }
        if (c == '/' && next == '*') {
            const Cursor open = cur;
            const std::size_t close = source.find("*/", i + 2);
            if (close == std::string_view::npos) {
                throw SagaError({Level::Error, "UnterminatedBlockComment", "block comment is never closed",
                                 {open.line, open.col, open.line, open.col + 1}});
            }
            bool saw_newline = false;
            for (std::size_t j = i; j < close + 2; ++j) {
                if (source[j] == '\n') {
                    out += '\n';
                    saw_newline = true;
                } else if (mode == CommentReplacement::Pad) {
                    out += ' ';
                }
                cur.advance(source[j]);
            }
            if (mode == CommentReplacement::Collapse && !saw_newline) out += ' ';
            i = close + 2;
            continue;
        }
        out += c;
        cur.advance(c);
        ++i;
    }
    return out;
}

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    Cursor cur;
    std::size_t i = 0;
    while (i < source.size()) {
        const char c = source[i];
        const auto byte = static_cast<unsigned char>(c);
        if (byte >= 0x80 || (byte < 0x20 && !is_space(c)) || byte == 0x7f) {
            throw SagaError({Level::Error, "NonAsciiInput",
                             "only printable ASCII and whitespace are allowed in stories",
                             {cur.line, cur.col, cur.line, cur.col}});
        }
        if (is_space(c)) {
            cur.advance(c);
            ++i;
            continue;
        }
        if (is_punct(c)) {
            const TokenKind kind = c == '{' ? TokenKind::LBrace : c == '}' ? TokenKind::RBrace : TokenKind::Comma;
            tokens.push_back({kind, std::string(1, c), {cur.line, cur.col, cur.line, cur.col}});
            cur.advance(c);
            ++i;
            continue;
        }
        const Cursor start = cur;
        const std::size_t begin = i;
        while (i < source.size() && !is_space(source[i]) && !is_punct(source[i])) {
            const auto b = static_cast<unsigned char>(source[i]);
            if (b >= 0x80 || b < 0x20 || b == 0x7f) break;
            cur.advance(source[i]);
            ++i;
        }
        std::string lexeme(source.substr(begin, i - begin));
        const TokenKind kind = keyword_kind(lexeme).value_or(TokenKind::Word);
        tokens.push_back({kind, std::move(lexeme), {start.line, start.col, cur.line, cur.col - 1}});
    }
    tokens.push_back({TokenKind::Eof, "", {cur.line, cur.col, cur.line, cur.col}});
    return tokens;
}

std::vector<Token> lex(std::string_view source) { return tokenize(strip_comments(source, CommentReplacement::Pad)); }

} // namespace saga
