#include <sstream>

#include "saga/ast.hpp"

namespace saga {

std::string canonicalize(std::string_view text) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t begin = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > begin) {
            if (!out.empty()) out += ' ';
            out.append(text.substr(begin, i - begin));
        }
    }
    return out;
}

std::string Label::canonical() const {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

Label make_label(std::string_view text) {
    Label label;
    std::istringstream in{std::string(text)};
    std::string word;
    while (in >> word) label.words.push_back(word);
    return label;
}

namespace {

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {
        if (tokens_.empty() || tokens_.back().kind != TokenKind::Eof)
            throw SagaError({Level::Error, "SyntaxError", "token stream must end with end of input", {}});
    }

    StoryAst story() {
        StoryAst ast;
        if (peek().kind != TokenKind::Story) fail("MissingStoryName", "STORY");
        advance();
        if (peek().kind != TokenKind::Word) fail("MissingStoryName", "story name");
        ast.story_name = label();

        if (peek().kind != TokenKind::Initial) fail("MissingInitial", "INITIAL");
        advance();
        if (peek().kind != TokenKind::Word) fail("MissingInitial", "initial node label");
        ast.initial = label();

        do {
            ast.sections.push_back(section());
        } while (peek().kind == TokenKind::Section);

        expect(TokenKind::Where, "SECTION or WHERE");
        if (peek().kind != TokenKind::Eof) ast.where_clauses = transition_list();
        expect(TokenKind::Eof, "',' or end of input");
        return ast;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    const Token& advance() {
        const Token& t = tokens_[pos_];
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& code, const std::string& expected) const {
        const Token& t = peek();
        std::string found = t.kind == TokenKind::Word ? "word '" + t.lexeme + "'" : to_string(t.kind);
        throw SagaError({Level::Error, code, "expected " + expected + ", found " + found, t.span});
    }

    const Token& expect(TokenKind kind, const std::string& expected) {
        if (peek().kind != kind) fail("SyntaxError", expected);
        return advance();
    }

    Label label() {
        Label l;
        const Token& first = expect(TokenKind::Word, "a label");
        l.words.push_back(first.lexeme);
        l.span = first.span;
        while (peek().kind == TokenKind::Word) {
            const Token& t = advance();
            l.words.push_back(t.lexeme);
            l.span.end_line = t.span.end_line;
            l.span.end_col = t.span.end_col;
        }
        return l;
    }

    SectionDecl section() {
        SectionDecl s;
        const Token& kw = expect(TokenKind::Section, "SECTION");
        s.span = kw.span;
        s.name = label();
        expect(TokenKind::LBrace, "'{'");
        s.transitions = transition_list();
        const Token& close = expect(TokenKind::RBrace, "',' or '}'");
        s.span.end_line = close.span.end_line;
        s.span.end_col = close.span.end_col;
        return s;
    }

    std::vector<TransitionDecl> transition_list() {
        std::vector<TransitionDecl> list;
        list.push_back(transition());
        while (peek().kind == TokenKind::Comma) {
            advance();
            list.push_back(transition());
        }
        return list;
    }

    TransitionDecl transition() {
        TransitionDecl t;
        t.pre_nodes.push_back(label());
        while (peek().kind == TokenKind::Or) {
            advance();
            t.pre_nodes.push_back(label());
        }
        expect(TokenKind::Goes, "OR or GOES");
        t.dest = label();
        expect(TokenKind::When, "WHEN");
        t.events.push_back(label());
        while (peek().kind == TokenKind::And) {
            advance();
            t.events.push_back(label());
        }
        const SourceSpan& first = t.pre_nodes.front().span;
        const SourceSpan& last = t.events.back().span;
        t.span = {first.start_line, first.start_col, last.end_line, last.end_col};
        return t;
    }

    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;
};

void print_transition(std::ostream& out, const TransitionDecl& t) {
    for (std::size_t i = 0; i < t.pre_nodes.size(); ++i) {
        if (i) out << " OR ";
        out << t.pre_nodes[i].canonical();
    }
    out << " GOES " << t.dest.canonical() << " WHEN ";
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        if (i) out << " AND ";
        out << t.events[i].canonical();
    }
}

void print_transition_list(std::ostream& out, const std::vector<TransitionDecl>& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
        out << "    ";
        print_transition(out, list[i]);
        out << (i + 1 < list.size() ? ",\n" : "\n");
    }
}

} // namespace

StoryAst parse(const std::vector<Token>& tokens) { return Parser(tokens).story(); }

StoryAst parse_story(std::string_view source) { return parse(lex(source)); }

std::string print_story(const StoryAst& ast) {
    std::ostringstream out;
    out << "STORY " << ast.story_name.canonical() << "\n";
    out << "INITIAL " << ast.initial.canonical() << "\n";
    for (const auto& s : ast.sections) {
        out << "\nSECTION " << s.name.canonical() << " {\n";
        print_transition_list(out, s.transitions);
        out << "}\n";
    }
    out << "\nWHERE\n";
    print_transition_list(out, ast.where_clauses);
    return out.str();
}

} // namespace saga
