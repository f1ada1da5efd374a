#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kancat/error.hpp"

namespace kancat {

// 1-based line and column of the first character, and one past the last.
struct Span {
    int line = 1;
    int col = 1;
    int end_line = 1;
    int end_col = 1;
};

enum class NodeKind { Program, Ident, PolyLit, String, Lan, Compose, Builtin, Let, Check, Export };
const char* to_string(NodeKind kind);

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

// Arities: Lan and Compose have two kids; Let, Export one; Builtin and Check
// any number; Ident, PolyLit and String none. `name` holds the identifier,
// builtin, bound name, check name, export format or string contents.
struct Ast {
    NodeKind kind = NodeKind::Ident;
    std::string name;
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;  // PolyLit: (coefficient, exponent)
    std::vector<AstPtr> kids;
    Span span;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, std::vector<std::string> expected, std::string found);
    int line() const { return line_; }
    int column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
    std::string found_;
};

// Statements are separated by newlines or ';'; '#' starts a comment.
AstPtr parse_program(const std::string& text);
AstPtr parse_expr(const std::string& text);

// Canonical source text; parsing it gives back an equal tree.
std::string print_ast(const Ast& ast);
// Structural equality, ignoring spans.
bool same_ast(const Ast& a, const Ast& b);

}  // namespace kancat
