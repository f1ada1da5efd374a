#include <gtest/gtest.h>

#include <random>

#include "kancat/dsl.hpp"

using namespace kancat;

namespace {

using Terms = std::vector<std::pair<std::int64_t, std::int64_t>>;

ParseError parse_failure(const std::string& text) {
    try {
        parse_program(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "parsed: " << text;
    return ParseError(0, 0, {}, "");
}

// Random trees over the whole grammar. Names avoid the reserved words.
class AstGen {
public:
    explicit AstGen(unsigned seed) : rng_(seed) {}

    AstPtr program() {
        auto node = std::make_shared<Ast>();
        node->kind = NodeKind::Program;
        const int n = pick(1, 5);
        for (int i = 0; i < n; ++i) node->kids.push_back(statement());
        return node;
    }

    AstPtr expr(int depth) {
        auto node = std::make_shared<Ast>();
        const int choice = depth <= 0 ? pick(0, 2) : pick(0, 5);
        switch (choice) {
            case 0:
                node->kind = NodeKind::Ident;
                node->name = name();
                break;
            case 1: {
                node->kind = NodeKind::PolyLit;
                const int n = pick(1, 3);
                for (int i = 0; i < n; ++i) node->terms.emplace_back(pick(0, 4), pick(0, 5));
                break;
            }
            case 2:
                node->kind = NodeKind::String;
                node->name = pick(0, 1) ? "a \"q\" \\ b.json" : "x.json";
                break;
            case 3:
                node->kind = NodeKind::Lan;
                node->kids = {expr(depth - 1), expr(depth - 1)};
                break;
            case 4:
                node->kind = NodeKind::Compose;
                node->kids = {expr(depth - 1), expr(depth - 1)};
                break;
            default: {
                node->kind = NodeKind::Builtin;
                node->name = name();
                const int n = pick(0, 3);
                for (int i = 0; i < n; ++i) node->kids.push_back(expr(depth - 1));
            }
        }
        return node;
    }

private:
    AstPtr statement() {
        auto node = std::make_shared<Ast>();
        switch (pick(0, 2)) {
            case 0:
                node->kind = NodeKind::Let;
                node->name = name();
                node->kids.push_back(expr(3));
                break;
            case 1: {
                node->kind = NodeKind::Check;
                node->name = name();
                const int n = pick(0, 3);
                for (int i = 0; i < n; ++i) node->kids.push_back(expr(2));
                break;
            }
            default:
                node->kind = NodeKind::Export;
                node->name = pick(0, 1) ? "dot" : "json";
                node->kids.push_back(expr(3));
        }
        return node;
    }

    std::string name() {
        static const std::vector<std::string> pool = {"p", "q2", "_t", "walking_arrow", "D", "x_y", "yy", "lane", "y2"};
        return pool[static_cast<std::size_t>(pick(0, static_cast<int>(pool.size()) - 1))];
    }

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    std::mt19937 rng_;
};

}  // namespace

TEST(Parse, PolynomialLiteralTerms) {
    const auto e = parse_expr("2y^5 + y^4 + 3y^3");
    ASSERT_EQ(e->kind, NodeKind::PolyLit);
    EXPECT_EQ(e->terms, (Terms{{2, 5}, {1, 4}, {3, 3}}));
    EXPECT_EQ(parse_expr("y + 1")->terms, (Terms{{1, 1}, {1, 0}}));
    EXPECT_EQ(parse_expr("0")->terms, (Terms{{0, 0}}));
    EXPECT_EQ(parse_expr("y^0")->terms, (Terms{{1, 0}}));
}

TEST(Parse, LanAndComposition) {
    const auto e = parse_expr("lan(paths, paths . frcat)");
    ASSERT_EQ(e->kind, NodeKind::Lan);
    ASSERT_EQ(e->kids.size(), 2u);
    EXPECT_EQ(e->kids[0]->kind, NodeKind::Ident);
    EXPECT_EQ(e->kids[1]->kind, NodeKind::Compose);
    EXPECT_EQ(e->kids[1]->kids[1]->name, "frcat");

    // Left associative.
    const auto c = parse_expr("a . b . c");
    ASSERT_EQ(c->kind, NodeKind::Compose);
    EXPECT_EQ(c->kids[0]->kind, NodeKind::Compose);
    EXPECT_EQ(c->kids[1]->name, "c");
    EXPECT_FALSE(same_ast(*c, *parse_expr("a . (b . c)")));
}

TEST(Parse, BuiltinsAndStrings) {
    const auto e = parse_expr("selection(cat(\"w.json\"), y^2)");
    ASSERT_EQ(e->kind, NodeKind::Builtin);
    EXPECT_EQ(e->name, "selection");
    ASSERT_EQ(e->kids.size(), 2u);
    EXPECT_EQ(e->kids[0]->kids[0]->kind, NodeKind::String);
    EXPECT_EQ(e->kids[0]->kids[0]->name, "w.json");
    EXPECT_EQ(parse_expr("paths()")->kids.size(), 0u);
}

TEST(Parse, Statements) {
    const auto p = parse_program("# header\nW = lan(y + 1, y + 1)\n\ncheck iso(W, cat(\"a.json\")); export dot W\n");
    ASSERT_EQ(p->kind, NodeKind::Program);
    ASSERT_EQ(p->kids.size(), 3u);
    EXPECT_EQ(p->kids[0]->kind, NodeKind::Let);
    EXPECT_EQ(p->kids[0]->name, "W");
    EXPECT_EQ(p->kids[1]->kind, NodeKind::Check);
    EXPECT_EQ(p->kids[1]->name, "iso");
    EXPECT_EQ(p->kids[2]->kind, NodeKind::Export);
    EXPECT_EQ(p->kids[2]->name, "dot");
    EXPECT_EQ(parse_program("")->kids.size(), 0u);
    EXPECT_EQ(parse_program("check = y")->kids[0]->kind, NodeKind::Let);
}

TEST(Parse, NewlinesInsideParentheses) {
    const auto p = parse_program("D = lan(paths,\n        paths . frcat)\ncheck comonad_laws(\n  D)\n");
    EXPECT_EQ(p->kids.size(), 2u);
}

TEST(Parse, Spans) {
    const auto p = parse_program("x = y\n  W = lan(p, q)");
    const auto& let = *p->kids[1];
    EXPECT_EQ(let.span.line, 2);
    EXPECT_EQ(let.span.col, 3);
    const auto& lan = *let.kids[0];
    EXPECT_EQ(lan.span.line, 2);
    EXPECT_EQ(lan.span.col, 7);
    EXPECT_EQ(lan.span.end_line, 2);
    EXPECT_EQ(lan.span.end_col, 16);
}

TEST(ParseErrors, LocationAndExpectations) {
    auto e = parse_failure("W = lan(p q)");
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 11);
    EXPECT_EQ(e.expected(), (std::vector<std::string>{"','"}));
    EXPECT_NE(std::string(e.what()).find("line 1, column 11: expected ','; found"), std::string::npos);

    e = parse_failure("a = y\nb = ");
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.expected().size(), 1u);
    EXPECT_NE(std::string(e.what()).find("expected one of"), std::string::npos);

    e = parse_failure("x = y + ");
    EXPECT_EQ(e.expected(), (std::vector<std::string>{"number", "'y'"}));

    e = parse_failure("x = 3 $");
    EXPECT_EQ(e.column(), 7);

    e = parse_failure("lan = y");
    EXPECT_EQ(e.column(), 5);

    EXPECT_THROW(parse_program("x = \"open"), ParseError);
    EXPECT_THROW(parse_program("x = f(a,)"), ParseError);
    EXPECT_THROW(parse_program("= y"), ParseError);
    EXPECT_THROW(parse_expr("a b"), ParseError);
    EXPECT_THROW(parse_expr("99999999999999999999"), ParseError);
}

TEST(Print, CanonicalForm) {
    EXPECT_EQ(print_ast(*parse_expr("2y^5+y^4 +3y^3")), "2y^5 + y^4 + 3y^3");
    EXPECT_EQ(print_ast(*parse_expr("a.(b.c)")), "a . (b . c)");
    EXPECT_EQ(print_ast(*parse_expr("(a.b).c")), "a . b . c");
    EXPECT_EQ(print_ast(*parse_program("x=lan( p ,q);check laws(x)")), "x = lan(p, q)\ncheck laws(x)\n");
}

TEST(Print, RandomProgramsRoundTrip) {
    AstGen gen(20261016);
    for (int trial = 0; trial < 500; ++trial) {
        const auto tree = gen.program();
        const std::string text = print_ast(*tree);
        AstPtr back;
        ASSERT_NO_THROW(back = parse_program(text)) << text;
        EXPECT_TRUE(same_ast(*tree, *back)) << text;
        EXPECT_EQ(print_ast(*back), text);
    }
}

TEST(Print, RandomExpressionsRoundTrip) {
    AstGen gen(5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto tree = gen.expr(4);
        const std::string text = print_ast(*tree);
        AstPtr back;
        ASSERT_NO_THROW(back = parse_expr(text)) << text;
        EXPECT_TRUE(same_ast(*tree, *back)) << text;
    }
}
