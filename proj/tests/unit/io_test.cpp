#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "kancat/builtins.hpp"
#include "kancat/error.hpp"
#include "kancat/io.hpp"
#include "kancat/select.hpp"

using namespace kancat;

namespace {

std::vector<FinCategory> fixtures() {
    return {walking_arrow(),  chain_category(3),   discrete_category(2), cyclic_group(3),
            commutative_square(), terminal_category(), empty_category(),  opposite(walking_arrow()),
            selection_category(walking_arrow(), parse_poly("y^2 + 1"), Bounds{})};
}

std::size_t count_lines(const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) n += line.find(needle) != std::string::npos;
    return n;
}

// Random valid category: a random preorder closed under transitivity.
FinCategory random_preorder(std::mt19937& rng, int n) {
    std::vector<std::vector<bool>> le(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    std::bernoulli_distribution coin(0.4);
    for (int i = 0; i < n; ++i) {
        le[i][i] = true;
        for (int j = i + 1; j < n; ++j) le[i][j] = coin(rng);
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) le[i][j] = le[i][j] || (le[i][k] && le[k][j]);
        }
    }
    CategoryBuilder b("random");
    for (int i = 0; i < n; ++i) b.add_object("o" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j && le[i][j]) b.add_morphism("o" + std::to_string(i) + "<o" + std::to_string(j), i, j);
        }
    }
    auto name = [](int i, int j) { return i == j ? "id_o" + std::to_string(i) : "o" + std::to_string(i) + "<o" + std::to_string(j); };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (i != j && j != k && le[i][j] && le[j][k]) b.set_compose(name(i, j), name(j, k), name(i, k));
            }
        }
    }
    return b.build();
}

}  // namespace

TEST(CategoryJson, RoundTripIsBitExact) {
    for (const auto& c : fixtures()) {
        const std::string text = category_to_json(c).dump(2);
        const FinCategory back = category_from_json(Json::parse(text));
        EXPECT_TRUE(back == c) << c.name();
        EXPECT_EQ(category_to_json(back).dump(2), text) << c.name();
    }
}

TEST(CategoryJson, RandomPreordersRoundTrip) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto c = random_preorder(rng, 1 + trial % 6);
        ASSERT_TRUE(validate_category(c).ok());
        const auto text = category_to_json(c).dump();
        EXPECT_EQ(category_to_json(category_from_json(Json::parse(text))).dump(), text);
    }
}

TEST(CategoryJson, Shape) {
    const auto doc = category_to_json(walking_arrow());
    EXPECT_EQ(doc["kind"], "category");
    EXPECT_EQ(doc["objects"], Json::parse(R"(["a","b"])"));
    EXPECT_EQ(doc["morphisms"][2], Json::parse(R"({"id":"f","dom":"a","cod":"b"})"));
    // id_a;id_a, id_a;f, f;id_b, id_b;id_b
    EXPECT_EQ(doc["composition"].size(), 4u);
    for (const auto& t : doc["composition"]) EXPECT_EQ(t.size(), 3u);
}

TEST(CategoryJson, BrokenTablesLoadAndFailValidation) {
    const auto c = category_from_json(load_json_file(KANCAT_FIXTURE_DIR "/corrupted_z3.json"));
    const auto r = validate_category(c);
    EXPECT_FALSE(r.ok());
    EXPECT_GT(r.count(ViolationKind::Associativity), 0u);

    auto doc = category_to_json(walking_arrow());
    doc["composition"].erase(1);
    const auto missing = validate_category(category_from_json(doc));
    EXPECT_EQ(missing.count(ViolationKind::Missing) + missing.count(ViolationKind::LeftUnit), missing.total);
    EXPECT_FALSE(missing.ok());
}

TEST(CategoryJson, Errors) {
    auto doc = category_to_json(walking_arrow());
    EXPECT_THROW(category_from_json(Json::parse(R"({"objects":[]})")), ShapeError);
    EXPECT_THROW(category_from_json(Json::parse(R"({"kind":"sheaf"})")), ShapeError);
    EXPECT_THROW(category_from_json(poly_to_json(parse_poly("y"))), ShapeError);

    auto bad = doc;
    bad["composition"][0][2] = "nope";
    EXPECT_THROW(category_from_json(bad), LookupError);
    bad = doc;
    bad["objects"].push_back("a");
    EXPECT_THROW(category_from_json(bad), ShapeError);
    bad = doc;
    bad["morphisms"][2]["cod"] = "z";
    EXPECT_THROW(category_from_json(bad), LookupError);
    bad = doc;
    bad["composition"][0] = Json::parse(R"(["f","f"])");
    EXPECT_THROW(category_from_json(bad), ShapeError);
    EXPECT_THROW(load_json_file("/nonexistent/file.json"), Error);
}

TEST(CategoryJson, MissingIdentitiesDefaultToIdPrefix) {
    auto doc = category_to_json(chain_category(2));
    doc.erase("identities");
    EXPECT_TRUE(category_from_json(doc) == chain_category(2));
}

TEST(WindowJson, HomPairArrays) {
    const auto doc = windowed_to_json(build_finset_op(2), 4096);
    EXPECT_EQ(doc["kind"], "category");
    ASSERT_EQ(doc["homs"].size(), 9u);
    for (const auto& h : doc["homs"]) {
        // hom(n, m) = functions m -> n
        const int n = std::stoi(h[0].get<std::string>());
        const int m = std::stoi(h[1].get<std::string>());
        int expect = 1;
        for (int k = 0; k < m; ++k) expect *= n;
        EXPECT_EQ(static_cast<int>(h[2].size()), expect) << h.dump();
    }
    EXPECT_EQ(doc["window"]["n_max"], 2);
    EXPECT_TRUE(validate_category(category_from_json(doc)).ok());
}

TEST(OtherDocuments, RoundTrip) {
    for (const auto& x : {chain_graph(2), representable(std::make_shared<const FinCategory>(walking_arrow()), 0),
                          finite_set(3), make_graph(2, {{0, 1}, {1, 1}, {0, 1}})}) {
        const auto text = copresheaf_to_json(x).dump();
        const auto back = copresheaf_from_json(Json::parse(text));
        EXPECT_TRUE(back == x);
        EXPECT_EQ(copresheaf_to_json(back).dump(), text);
    }
    for (const auto& lit : {"y^2 + y + 1", "3y^3", "0", "y"}) {
        const auto p = parse_poly(lit);
        const auto text = poly_to_json(p).dump();
        EXPECT_EQ(poly_from_json(Json::parse(text)), p);
        EXPECT_EQ(poly_to_json(poly_from_json(Json::parse(text))).dump(), text);
    }
    EXPECT_EQ(poly_from_json(Json::parse(R"({"kind":"polynomial","literal":"y^2 + 1"})")).arities(),
              (std::vector<std::size_t>{2, 0}));

    FinGraph g;
    g.vertices = FinSetRep(std::vector<std::string>{"u", "v"});
    g.edges = {{"e", 0, 1}, {"loop", 1, 1}};
    const auto gtext = graph_to_json(g).dump();
    EXPECT_EQ(graph_to_json(graph_from_json(Json::parse(gtext))).dump(), gtext);

    EXPECT_EQ(functor_expr_from_json(functor_expr_to_json("lan(y, y)")), "lan(y, y)");
}

TEST(CopresheafJson, RejectsBadActions) {
    auto doc = copresheaf_to_json(chain_graph(1));
    doc["act"]["src"] = Json::parse("[7]");
    EXPECT_THROW(copresheaf_from_json(doc), ShapeError);
    doc = copresheaf_to_json(chain_graph(1));
    doc["act"]["src"] = Json::parse("[0, 0]");
    EXPECT_THROW(copresheaf_from_json(doc), ShapeError);
}

TEST(Dot, WalkingArrow) {
    const auto all = category_to_dot(walking_arrow(), false);
    const auto plain = category_to_dot(walking_arrow(), true);
    EXPECT_EQ(plain.rfind("digraph", 0), 0u);
    EXPECT_EQ(count_lines(plain, "->"), 1u);
    EXPECT_EQ(count_lines(all, "->"), 3u);
    EXPECT_EQ(count_lines(plain, ";") - count_lines(plain, "->"), 2u);  // node lines
    EXPECT_EQ(plain.find("subgraph"), std::string::npos);
}

TEST(Dot, SelectionHasFourNodes) {
    const auto dot = category_to_dot(selection_category(walking_arrow(), parse_poly("y^2"), Bounds{}), true);
    EXPECT_EQ(count_lines(dot, ";") - count_lines(dot, "->"), 4u);
}

TEST(Dot, QuotesNames) {
    CategoryBuilder b("q\"uote");
    b.add_object("a\"b");
    const auto dot = category_to_dot(b.build(), false);
    EXPECT_NE(dot.find("\"a\\\"b\""), std::string::npos);
}
