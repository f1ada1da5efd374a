#include <gtest/gtest.h>

#include <algorithm>

#include "kancat/builtins.hpp"
#include "kancat/error.hpp"
#include "kancat/iso.hpp"
#include "kancat/kan.hpp"
#include "kancat/select.hpp"
#include "kancat/windowed.hpp"

using namespace kancat;

namespace {

// |hom((i,c),(j,d))| = Π_b Σ_a |C(c_a, d_b)|, straight from the definition.
std::size_t expected_hom(const FinCategory& c, const std::vector<int>& src, const std::vector<int>& dst) {
    std::size_t prod = 1;
    for (int d : dst) {
        std::size_t sum = 0;
        for (int s : src) sum += c.hom(s, d).size();
        prod *= sum;
    }
    return prod;
}

}  // namespace

TEST(Selection, WalkingArrowSquared) {
    const auto c = walking_arrow();
    const auto s = build_selection(c, parse_poly("y^2"), Bounds{});
    EXPECT_EQ(s.category.num_objects(), 4u);
    EXPECT_TRUE(validate_category(s.category).ok());
    const int aa = s.category.object_index("0(a,a)");
    const int ab = s.category.object_index("0(a,b)");
    EXPECT_EQ(s.category.hom(aa, ab).size(), 4u);
}

TEST(Selection, HomCountsMatchDefinition) {
    for (const auto& c : {walking_arrow(), cyclic_group(2), commutative_square(), discrete_category(2)}) {
        for (const auto& lit : {"y^2", "y + 1", "y^2 + y", "2y"}) {
            const auto s = build_selection(c, parse_poly(lit), Bounds{});
            EXPECT_TRUE(validate_category(s.category).ok()) << c.name() << " " << lit;
            const int n = static_cast<int>(s.category.num_objects());
            for (int x = 0; x < n; ++x) {
                for (int y = 0; y < n; ++y) {
                    const auto want = expected_hom(c, s.assignment[static_cast<std::size_t>(x)], s.assignment[static_cast<std::size_t>(y)]);
                    EXPECT_EQ(s.category.hom(x, y).size(), want);
                }
            }
        }
    }
}

TEST(Selection, DegenerateShapes) {
    for (const auto& c : {walking_arrow(), cyclic_group(3), commutative_square()}) {
        EXPECT_TRUE(category_iso(selection_category(c, poly_y(), Bounds{}), c).found());
        EXPECT_TRUE(category_iso(selection_category(c, parse_poly("1"), Bounds{}), terminal_category()).found());
    }
}

TEST(Selection, ObjectCap) {
    Bounds b;
    b.object_cap = 10;
    try {
        selection_category(discrete_category(3), parse_poly("y^3"), b);
        FAIL();
    } catch (const BoundExceeded& e) {
        EXPECT_NE(std::string(e.what()).find("27"), std::string::npos);
    }
}

TEST(Selection, AgreesWithLeftKanComonad) {
    const Bounds b;
    for (const auto& [c, lit] : std::vector<std::pair<FinCategory, std::string>>{
             {walking_arrow(), "y^2"}, {cyclic_group(2), "y + 1"}, {walking_arrow(), "y^2 + y + 1"}, {chain_category(3), "y^2"}}) {
        const auto p = parse_poly(lit);
        const auto k = cmd_left(poly_family(p), category_comonad(c), b);
        const auto r = category_iso(comonad_to_category(k), selection_category(c, p, b), {.object_cap = 64});
        EXPECT_TRUE(r.found()) << c.name() << " " << lit << ": " << r.reason;
    }
}

TEST(Selection, ListWindowIsProductCompletion) {
    for (const auto& c : {walking_arrow(), cyclic_group(2)}) {
        const auto s = selection_category(c, parse_poly("y^2 + y + 1"), Bounds{});
        EXPECT_TRUE(category_iso(s, materialize(product_completion_oracle(c, 2))).found()) << c.name();
    }
}

TEST(SelectionFunctor, IdentityAndTerminal) {
    const auto p = parse_poly("y^2");
    const auto c = walking_arrow();
    const auto id = selection_functor(identity_cat_functor(c), p, Bounds{});
    EXPECT_TRUE(validate_functor(id).empty());
    EXPECT_TRUE(same_tables(id, identity_cat_functor(id.source)));
    const auto bang = selection_functor(to_terminal(c), p, Bounds{});
    EXPECT_TRUE(validate_functor(bang).empty());
    EXPECT_EQ(bang.target.num_objects(), 1u);
    for (int o : bang.on_objects) EXPECT_EQ(o, 0);
}

TEST(SelectionFunctor, PreservesComposition) {
    const auto arrow = walking_arrow();
    const auto chain = chain_category(3);
    const auto f = functor_from_names(arrow, chain, {{"a", "0"}, {"b", "1"}}, {{"f", "0<1"}});
    const auto g = to_terminal(chain);
    ASSERT_TRUE(validate_functor(f).empty());
    for (const auto& lit : {"y^2", "y + 1", "y^2 + 1"}) {
        const auto p = parse_poly(lit);
        const auto lhs = selection_functor(compose_cat_functors(f, g), p, Bounds{});
        const auto rhs = compose_cat_functors(selection_functor(f, p, Bounds{}), selection_functor(g, p, Bounds{}));
        EXPECT_TRUE(same_tables(lhs, rhs)) << lit;
        EXPECT_TRUE(validate_functor(selection_functor(f, p, Bounds{})).empty());
    }
}

TEST(Profunctor, Examples) {
    const auto c = walking_arrow();
    const auto d = selection_profunctor(c, parse_poly("y^2"), poly_y(), Bounds{});
    const int ab = d.left.category.object_index("0(a,b)");
    const int b = d.right.category.object_index("0(b)");
    EXPECT_EQ(d.het(ab, b).size(), 2u);
    EXPECT_TRUE(check_profunctor(d, Bounds{}).ok());

    const auto diag = selection_profunctor(c, parse_poly("y^2 + 1"), parse_poly("y^2 + 1"), Bounds{});
    for (int x = 0; x < static_cast<int>(diag.left.category.num_objects()); ++x) {
        for (int y = 0; y < static_cast<int>(diag.right.category.num_objects()); ++y) {
            EXPECT_EQ(diag.het(x, y).size(), diag.left.category.hom(x, y).size());
        }
    }
    EXPECT_TRUE(check_profunctor(diag, Bounds{}).ok());

    const auto disc = selection_profunctor(discrete_category(2), parse_poly("y^2"), parse_poly("y^2"), Bounds{});
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) {
            const auto& src = disc.left.assignment[static_cast<std::size_t>(x)];
            const auto& dst = disc.right.assignment[static_cast<std::size_t>(y)];
            std::size_t want = 1;
            for (int t : dst) want *= static_cast<std::size_t>(std::count(src.begin(), src.end(), t));
            EXPECT_EQ(disc.het(x, y).size(), want);
        }
    }
}

TEST(Profunctor, MixedShapesAreLawful) {
    for (const auto& c : {commutative_square(), cyclic_group(2)}) {
        const auto d = selection_profunctor(c, parse_poly("y^2 + y"), parse_poly("y + 1"), Bounds{});
        const auto r = check_profunctor(d, Bounds{});
        EXPECT_TRUE(r.ok()) << r.summary();
        EXPECT_EQ(r.skipped(), 0u);
    }
}

TEST(Boff, Examples) {
    const auto p = parse_poly("y^2 + y");
    const auto disc = discrete_category(2);
    const auto arrow = walking_arrow();
    const auto bo = functor_from_names(disc, arrow, {{"0", "a"}, {"1", "b"}}, {});
    const auto r1 = check_boff(bo, p, Bounds{});
    EXPECT_TRUE(r1.input_bo);
    EXPECT_FALSE(r1.input_ff);
    EXPECT_TRUE(r1.output_bo);
    EXPECT_TRUE(r1.ok());

    const auto ff = functor_from_names(arrow, chain_category(3), {{"a", "0"}, {"b", "1"}}, {{"f", "0<1"}});
    const auto r2 = check_boff(ff, p, Bounds{});
    EXPECT_TRUE(r2.input_ff);
    EXPECT_TRUE(r2.output_ff);
    EXPECT_TRUE(r2.ok());

    const auto r3 = check_boff(identity_cat_functor(commutative_square()), p, Bounds{});
    EXPECT_TRUE(r3.output_bo && r3.output_ff && r3.ok());

    const auto swap = functor_from_names(cyclic_group(2), cyclic_group(2), {{"*", "*"}}, {{"m1", "m1"}});
    const auto r4 = check_boff(swap, parse_poly("y^2"), Bounds{});
    EXPECT_TRUE(r4.output_bo && r4.output_ff);
}
