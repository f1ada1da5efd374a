#include "kancat/dsl.hpp"

#include <cctype>
#include <limits>

namespace kancat {

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Program: return "program";
        case NodeKind::Ident: return "identifier";
        case NodeKind::PolyLit: return "polynomial";
        case NodeKind::String: return "string";
        case NodeKind::Lan: return "lan";
        case NodeKind::Compose: return "composite";
        case NodeKind::Builtin: return "builtin";
        case NodeKind::Let: return "binding";
        case NodeKind::Check: return "check";
        case NodeKind::Export: return "export";
    }
    return "?";
}

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += ", ";
        out += expected[i];
    }
    return out;
}

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected, std::string found)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected " +
            (expected.size() > 1 ? "one of " : "") + join_expected(expected) + "; found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok { Ident, Nat, Y, String, LParen, RParen, Comma, Dot, Eq, Plus, Caret, Sep, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
    int end_line;
    int end_col;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::Sep: return t.text == ";" ? "';'" : "end of line";
        case Tok::End: return "end of input";
        case Tok::String: return "string \"" + t.text + "\"";
        default: return "'" + t.text + "'";
    }
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        int depth = 0;
        while (true) {
            skip_blanks(depth > 0);
            int line = line_, col = col_;
            if (pos_ >= s_.size()) {
                out.push_back({Tok::End, "", line, col, line, col});
                return out;
            }
            char c = s_[pos_];
            if (c == '\n' || c == ';') {
                advance();
                out.push_back({Tok::Sep, c == ';' ? ";" : "\n", line, col, line_, col_});
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += advance();
                out.push_back({Tok::Nat, digits, line, col, line_, col_});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string word;
                while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                    word += advance();
                }
                out.push_back({word == "y" ? Tok::Y : Tok::Ident, word, line, col, line_, col_});
                continue;
            }
            if (c == '"') {
                advance();
                std::string text;
                while (true) {
                    if (pos_ >= s_.size() || s_[pos_] == '\n') {
                        throw ParseError(line, col, {"closing '\"'"}, "unterminated string");
                    }
                    char d = advance();
                    if (d == '"') break;
                    if (d == '\\' && pos_ < s_.size()) d = advance();
                    text += d;
                }
                out.push_back({Tok::String, text, line, col, line_, col_});
                continue;
            }
            Tok kind;
            switch (c) {
                case '(': kind = Tok::LParen; ++depth; break;
                case ')': kind = Tok::RParen; if (depth > 0) --depth; break;
                case ',': kind = Tok::Comma; break;
                case '.': kind = Tok::Dot; break;
                case '=': kind = Tok::Eq; break;
                case '+': kind = Tok::Plus; break;
                case '^': kind = Tok::Caret; break;
                default:
                    throw ParseError(line, col, {"a token"}, "unexpected character '" + std::string(1, c) + "'");
            }
            advance();
            out.push_back({kind, std::string(1, c), line, col, line_, col_});
        }
    }

private:
    char advance() {
        char c = s_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++col_;
        }
        return c;
    }

    void skip_blanks(bool newlines_too) {
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || (newlines_too && c == '\n')) {
                advance();
            } else {
                return;
            }
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    AstPtr program() {
        auto node = std::make_shared<Ast>();
        node->kind = NodeKind::Program;
        node->span = {peek().line, peek().col, peek().line, peek().col};
        skip_seps();
        while (peek().kind != Tok::End) {
            node->kids.push_back(statement());
            if (peek().kind != Tok::End && peek().kind != Tok::Sep) fail({"end of line", "';'", "'.'"});
            skip_seps();
        }
        node->span.end_line = peek().line;
        node->span.end_col = peek().col;
        return node;
    }

    AstPtr lone_expr() {
        skip_seps();
        auto e = expr();
        skip_seps();
        if (peek().kind != Tok::End) fail({"end of input", "'.'"});
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return t_[std::min(i_ + ahead, t_.size() - 1)]; }
    const Token& next() { return t_[std::min(i_++, t_.size() - 1)]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(peek().line, peek().col, std::move(expected), describe(peek()));
    }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail({what});
        return next();
    }

    void skip_seps() {
        while (peek().kind == Tok::Sep) next();
    }

    static std::shared_ptr<Ast> make(NodeKind kind, const Token& start) {
        auto node = std::make_shared<Ast>();
        node->kind = kind;
        node->span = {start.line, start.col, start.end_line, start.end_col};
        return node;
    }

    void close(Ast& node) const {
        const Token& last = t_[i_ - 1];
        node.span.end_line = last.end_line;
        node.span.end_col = last.end_col;
    }

    AstPtr statement() {
        const Token& start = peek();
        if (start.kind != Tok::Ident) fail({"identifier", "'check'", "'export'"});
        if (start.text == "check" && peek(1).kind == Tok::Ident) {
            next();
            auto node = make(NodeKind::Check, start);
            node->name = next().text;
            expect(Tok::LParen, "'('");
            node->kids = args();
            expect(Tok::RParen, "')'");
            close(*node);
            return node;
        }
        if (start.text == "export" && peek(1).kind == Tok::Ident && peek(2).kind != Tok::Eq) {
            next();
            auto node = make(NodeKind::Export, start);
            node->name = next().text;
            node->kids.push_back(expr());
            close(*node);
            return node;
        }
        next();
        if (start.text == "lan") fail({"identifier other than 'lan'"});
        auto node = make(NodeKind::Let, start);
        node->name = start.text;
        expect(Tok::Eq, "'='");
        node->kids.push_back(expr());
        close(*node);
        return node;
    }

    std::vector<AstPtr> args() {
        std::vector<AstPtr> out;
        if (peek().kind == Tok::RParen) return out;
        out.push_back(expr());
        while (peek().kind == Tok::Comma) {
            next();
            out.push_back(expr());
        }
        if (peek().kind != Tok::RParen) fail({"','", "')'", "'.'"});
        return out;
    }

    AstPtr expr() {
        AstPtr left = atom();
        while (peek().kind == Tok::Dot) {
            next();
            AstPtr right = atom();
            auto node = std::make_shared<Ast>();
            node->kind = NodeKind::Compose;
            node->span = {left->span.line, left->span.col, right->span.end_line, right->span.end_col};
            node->kids = {left, right};
            left = node;
        }
        return left;
    }

    AstPtr atom() {
        const Token& start = peek();
        switch (start.kind) {
            case Tok::Ident: {
                next();
                if (start.text == "lan") {
                    auto node = make(NodeKind::Lan, start);
                    expect(Tok::LParen, "'('");
                    node->kids.push_back(expr());
                    expect(Tok::Comma, "','");
                    node->kids.push_back(expr());
                    expect(Tok::RParen, "')'");
                    close(*node);
                    return node;
                }
                if (peek().kind == Tok::LParen) {
                    next();
                    auto node = make(NodeKind::Builtin, start);
                    node->name = start.text;
                    node->kids = args();
                    expect(Tok::RParen, "')'");
                    close(*node);
                    return node;
                }
                auto node = make(NodeKind::Ident, start);
                node->name = start.text;
                return node;
            }
            case Tok::Nat:
            case Tok::Y:
                return polylit();
            case Tok::String: {
                next();
                auto node = make(NodeKind::String, start);
                node->name = start.text;
                return node;
            }
            case Tok::LParen: {
                next();
                AstPtr inner = expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default:
                fail({"identifier", "number", "'y'", "string", "'('", "'lan'"});
        }
    }

    std::int64_t nat() {
        const Token& t = expect(Tok::Nat, "number");
        std::int64_t v = 0;
        for (char c : t.text) {
            if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
                throw ParseError(t.line, t.col, {"number below 2^63"}, "'" + t.text + "'");
            }
            v = v * 10 + (c - '0');
        }
        return v;
    }

    std::pair<std::int64_t, std::int64_t> term() {
        std::int64_t coef = 1;
        bool has_coef = false;
        if (peek().kind == Tok::Nat) {
            coef = nat();
            has_coef = true;
        }
        if (peek().kind != Tok::Y) {
            if (!has_coef) fail({"number", "'y'"});
            return {coef, 0};
        }
        next();
        std::int64_t exp = 1;
        if (peek().kind == Tok::Caret) {
            next();
            exp = nat();
        }
        return {coef, exp};
    }

    AstPtr polylit() {
        auto node = make(NodeKind::PolyLit, peek());
        node->terms.push_back(term());
        while (peek().kind == Tok::Plus) {
            next();
            if (peek().kind != Tok::Nat && peek().kind != Tok::Y) fail({"number", "'y'"});
            node->terms.push_back(term());
        }
        close(*node);
        return node;
    }

    std::vector<Token> t_;
    std::size_t i_ = 0;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string print_term(std::int64_t coef, std::int64_t exp) {
    if (exp == 0) return std::to_string(coef);
    std::string out = coef == 1 ? "" : std::to_string(coef);
    out += "y";
    if (exp != 1) out += "^" + std::to_string(exp);
    return out;
}

std::string print_args(const std::vector<AstPtr>& kids) {
    std::string out;
    for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += ", ";
        out += print_ast(*kids[i]);
    }
    return out;
}

}  // namespace

AstPtr parse_program(const std::string& text) { return Parser(Lexer(text).run()).program(); }

AstPtr parse_expr(const std::string& text) { return Parser(Lexer(text).run()).lone_expr(); }

std::string print_ast(const Ast& ast) {
    switch (ast.kind) {
        case NodeKind::Program: {
            std::string out;
            for (const auto& k : ast.kids) out += print_ast(*k) + "\n";
            return out;
        }
        case NodeKind::Ident: return ast.name;
        case NodeKind::String: return quote(ast.name);
        case NodeKind::PolyLit: {
            std::string out;
            for (std::size_t i = 0; i < ast.terms.size(); ++i) {
                if (i) out += " + ";
                out += print_term(ast.terms[i].first, ast.terms[i].second);
            }
            return out;
        }
        case NodeKind::Lan:
            return "lan(" + print_ast(*ast.kids[0]) + ", " + print_ast(*ast.kids[1]) + ")";
        case NodeKind::Compose: {
            std::string right = print_ast(*ast.kids[1]);
            if (ast.kids[1]->kind == NodeKind::Compose) right = "(" + right + ")";
            return print_ast(*ast.kids[0]) + " . " + right;
        }
        case NodeKind::Builtin: return ast.name + "(" + print_args(ast.kids) + ")";
        case NodeKind::Let: return ast.name + " = " + print_ast(*ast.kids[0]);
        case NodeKind::Check: return "check " + ast.name + "(" + print_args(ast.kids) + ")";
        case NodeKind::Export: return "export " + ast.name + " " + print_ast(*ast.kids[0]);
    }
    return "";
}

bool same_ast(const Ast& a, const Ast& b) {
    if (a.kind != b.kind || a.name != b.name || a.terms != b.terms || a.kids.size() != b.kids.size()) return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i) {
        if (!same_ast(*a.kids[i], *b.kids[i])) return false;
    }
    return true;
}

}  // namespace kancat
