#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "kancat/error.hpp"
#include "kancat/iso.hpp"
#include "kancat/poly.hpp"

using namespace kancat;

namespace {

std::int64_t ipow(std::int64_t b, std::size_t e) {
    std::int64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= b;
    return r;
}

// The category-form laws restated directly on (counit, cod, comp).
bool comonad_oracle(const PolyComonad& k) {
    const auto& p = k.carrier;
    const int n = static_cast<int>(p.num_positions());
    auto ar = [&](int i) { return static_cast<int>(p.arity(i)); };
    for (int i = 0; i < n; ++i) {
        if (k.counit[i] < 0 || k.counit[i] >= ar(i)) return false;
        for (int f = 0; f < ar(i); ++f) {
            const int j = k.cod[i][f];
            if (j < 0 || j >= n || static_cast<int>(k.comp[i][f].size()) != ar(j)) return false;
            for (int g : k.comp[i][f]) {
                if (g < 0 || g >= ar(i)) return false;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        const int e = k.counit[i];
        if (k.cod[i][e] != i) return false;
        for (int f = 0; f < ar(i); ++f) {
            if (k.comp[i][e][f] != f) return false;                       // e;f = f
            if (k.comp[i][f][k.counit[k.cod[i][f]]] != f) return false;  // f;e = f
            const int j = k.cod[i][f];
            for (int g = 0; g < ar(j); ++g) {
                const int fg = k.comp[i][f][g];
                if (k.cod[i][fg] != k.cod[j][g]) return false;
                const int l = k.cod[j][g];
                for (int h = 0; h < ar(l); ++h) {
                    if (k.comp[i][fg][h] != k.comp[i][f][k.comp[j][g][h]]) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

TEST(Poly, ParseAndPrint) {
    const auto p = parse_poly("2y^5 + y^4 + 3y^0");
    EXPECT_EQ(p.num_positions(), 6u);
    EXPECT_EQ(p.arities(), (std::vector<std::size_t>{5, 5, 4, 0, 0, 0}));
    EXPECT_EQ(p.str(), "2y^5 + y^4 + 3");
    EXPECT_EQ(parse_poly("y + 1").str(), "y + 1");
    EXPECT_EQ(parse_poly("y^2+y").arities(), (std::vector<std::size_t>{2, 1}));
    EXPECT_EQ(parse_poly("4").arities(), (std::vector<std::size_t>{0, 0, 0, 0}));
    EXPECT_THROW(parse_poly("y^"), ShapeError);
    EXPECT_THROW(parse_poly("2x"), ShapeError);
}

TEST(Poly, EvalCardinalities) {
    EXPECT_EQ(eval_poly(parse_poly("y^2 + y"), FinSetRep(3)).size(), 12u);
    for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(eval_poly(parse_poly("1"), FinSetRep(n)).size(), 1u);
    EXPECT_EQ(eval_poly(parse_poly("2y^3"), FinSetRep(2)).size(), 16u);
}

TEST(Poly, EvalIsCanonicallyOrdered) {
    const auto elems = eval_poly(parse_poly("y^2 + y"), FinSetRep(2));
    ASSERT_EQ(elems.size(), 6u);
    EXPECT_TRUE(std::is_sorted(elems.begin(), elems.end()));
    EXPECT_EQ(elems[0].str(), "0(0,0)");
    EXPECT_EQ(elems[3].str(), "0(1,1)");
    EXPECT_EQ(elems[4].str(), "1(0)");
}

TEST(Poly, ComposeExamples) {
    const auto q = parse_poly("y^3 + 2y + 1");
    const auto yq = compose_poly(poly_y(), q).poly;
    EXPECT_EQ(yq.arities(), q.arities());
    const auto sq = compose_poly(parse_poly("y^2"), parse_poly("y + 1")).poly;
    EXPECT_EQ(sq.arities(), (std::vector<std::size_t>{2, 1, 1, 0}));
    EXPECT_EQ(compose_poly(parse_poly("1"), q).poly.num_positions(), 1u);
    EXPECT_THROW(compose_poly(parse_poly("y^10"), parse_poly("5"), 1000), BoundExceeded);
}

// Property: (p∘q)(x) is in explicit bijection with p(q(x)).
TEST(PolyProperty, CompositeEvaluatesAsNesting) {
    const std::vector<std::string> lits = {"y^2 + y", "y + 1", "2y^2 + 1", "y^3", "1", "y"};
    for (const auto& pl : lits) {
        for (const auto& ql : lits) {
            const auto p = parse_poly(pl);
            const auto q = parse_poly(ql);
            const auto pq = compose_poly(p, q);
            for (std::size_t n = 0; n <= 3; ++n) {
                const auto qx = eval_poly(q, FinSetRep(n));
                const auto pqx = eval_poly(p, FinSetRep(qx.size()));
                const auto lhs = eval_poly(pq.poly, FinSetRep(n));
                ASSERT_EQ(lhs.size(), pqx.size()) << pl << " . " << ql << " at " << n;
                std::vector<Value> images;
                for (const auto& v : lhs) {
                    const auto k = static_cast<std::size_t>(v.tag());
                    std::vector<std::vector<Value>> per_dir(pq.assignment[k].size());
                    for (std::size_t d = 0; d < v.size(); ++d) per_dir[static_cast<std::size_t>(pq.pairs[k][d].first)].push_back(v[d]);
                    std::vector<Value> outer;
                    for (std::size_t a = 0; a < per_dir.size(); ++a) {
                        const Value qelem = Value::node(pq.assignment[k][a], per_dir[a]);
                        const auto it = std::lower_bound(qx.begin(), qx.end(), qelem);
                        ASSERT_TRUE(it != qx.end() && *it == qelem);
                        outer.push_back(Value::atom(it - qx.begin()));
                    }
                    images.push_back(Value::node(pq.outer[k], outer));
                }
                std::sort(images.begin(), images.end());
                EXPECT_TRUE(std::adjacent_find(images.begin(), images.end()) == images.end());
                EXPECT_EQ(images, pqx);
            }
        }
    }
}

TEST(PolyProperty, CompositionAssociativeAndUnital) {
    const std::vector<std::string> lits = {"y^2 + y", "y + 1", "2y^2 + 1", "1", "y"};
    for (const auto& a : lits) {
        for (const auto& b : lits) {
            for (const auto& c : lits) {
                const auto p = parse_poly(a), q = parse_poly(b), r = parse_poly(c);
                const auto left = compose_poly(compose_poly(p, q).poly, r).poly;
                const auto right = compose_poly(p, compose_poly(q, r).poly).poly;
                auto l = left.arities(), rr = right.arities();
                std::sort(l.begin(), l.end());
                std::sort(rr.begin(), rr.end());
                EXPECT_EQ(l, rr);
                for (std::int64_t n = 0; n <= 3; ++n) EXPECT_EQ(poly_cardinality(left, n), poly_cardinality(right, n));
            }
            const auto p = parse_poly(a);
            EXPECT_EQ(compose_poly(p, poly_y()).poly.arities(), p.arities());
            EXPECT_EQ(compose_poly(poly_y(), p).poly.arities(), p.arities());
        }
    }
}

TEST(PolyProperty, CardinalityFormula) {
    for (const auto& lit : {"y^2 + y", "2y^5 + y^4 + 3", "y^3 + y^3 + 1", "0y"}) {
        const auto p = parse_poly(lit);
        for (std::int64_t n = 0; n <= 3; ++n) {
            std::int64_t expect = 0;
            for (auto a : p.arities()) expect += ipow(n, a);
            EXPECT_EQ(static_cast<std::int64_t>(eval_poly(p, FinSetRep(static_cast<std::size_t>(n))).size()), expect);
            EXPECT_EQ(poly_cardinality(p, n), expect);
        }
    }
}

TEST(PolyMap, Equality) {
    const auto p = parse_poly("y^2 + y");
    EXPECT_TRUE(poly_map_equal(p, p, identity_poly_map(p), identity_poly_map(p)));
    const auto two = parse_poly("2");
    PolyMap f{{0}, {{}}}, g{{1}, {{}}};
    EXPECT_FALSE(poly_map_equal(poly_y(), two, f, g));
    EXPECT_THROW(poly_map_equal(p, p, identity_poly_map(p), PolyMap{{0}, {{0}}}), ShapeError);
    const auto k = category_to_comonad(walking_arrow());
    EXPECT_EQ(comult_map(k), comult_map(k));
}

TEST(CategoryComonad, Carriers) {
    EXPECT_EQ(category_to_comonad(walking_arrow()).carrier.str(), "y^2 + y");
    EXPECT_EQ(category_to_comonad(discrete_category(4)).carrier.str(), "4y");
    const auto z2 = category_to_comonad(cyclic_group(2));
    EXPECT_EQ(z2.carrier.str(), "y^2");
    EXPECT_EQ(z2.counit[0], 0);
    EXPECT_EQ(z2.comp[0][1][1], 0);
    EXPECT_EQ(z2.comp[0][1][0], 1);
}

TEST(CategoryComonad, WalkingArrowFromExplicitStructure) {
    PolyComonad k;
    k.name = "walking";
    k.carrier = parse_poly("y^2 + y");
    k.counit = {0, 0};
    k.cod = {{0, 1}, {1}};
    k.comp = {{{0, 1}, {1}}, {{0}}};
    EXPECT_TRUE(check_comonad_laws(k).ok());
    const auto c = comonad_to_category(k);
    EXPECT_TRUE(validate_category(c).ok());
    EXPECT_TRUE(category_iso(c, walking_arrow()).found());
    k.carrier = parse_poly("3y");
    k.counit = {0, 0, 0};
    k.cod = {{0}, {1}, {2}};
    k.comp = {{{0}}, {{0}}, {{0}}};
    EXPECT_TRUE(category_iso(comonad_to_category(k), discrete_category(3)).found());
}

TEST(CategoryComonad, Roundtrips) {
    for (const auto& c : {walking_arrow(), chain_category(3), cyclic_group(3), discrete_category(2), commutative_square(),
                          opposite(commutative_square()), empty_category()}) {
        const auto k = category_to_comonad(c);
        EXPECT_TRUE(check_comonad_laws(k).ok());
        const auto back = comonad_to_category(k);
        EXPECT_TRUE(category_iso(back, c).found()) << c.name();
        const auto again = category_to_comonad(back);
        EXPECT_EQ(again.counit, k.counit);
        EXPECT_EQ(again.cod, k.cod);
        EXPECT_EQ(again.comp, k.comp);
    }
}

TEST(CategoryComonad, CorruptedCompositionIsReportedWithWitness) {
    auto k = category_to_comonad(chain_category(3));
    // at object 0, direction 1 (0<1) followed by 1<2 should be 0<2
    k.comp[0][1][1] = 1;
    const auto report = check_comonad_laws(k);
    ASSERT_FALSE(report.ok());
    EXPECT_FALSE(report.violations.front().directions.empty());
    EXPECT_THROW(comonad_to_category(k), LawFailure);
}

TEST(CategoryComonad, InvalidCategoryRejected) {
    const auto c = walking_arrow();
    EXPECT_THROW(category_to_comonad(c.with_compose_entry(c.morphism_index("f"), c.morphism_index("id_b"), 0)), LawFailure);
}

// Property: the (ε, δ) checker agrees with the category-form oracle on every
// single-entry corruption of cod, comp and counit for fixture categories.
TEST(PolyComonadProperty, SingleEntryCorruptionsAgreeWithOracle) {
    std::size_t mutants = 0, unlawful = 0;
    for (const auto& c : {walking_arrow(), chain_category(3), cyclic_group(2), cyclic_group(3), commutative_square()}) {
        const auto k = category_to_comonad(c);
        const int n = static_cast<int>(k.carrier.num_positions());
        auto test = [&](const PolyComonad& m) {
            ++mutants;
            const bool lawful = comonad_oracle(m);
            unlawful += lawful ? 0 : 1;
            EXPECT_EQ(check_comonad_laws(m).ok(), lawful);
        };
        for (int i = 0; i < n; ++i) {
            for (std::size_t f = 0; f < k.comp[i].size(); ++f) {
                for (std::size_t g = 0; g < k.comp[i][f].size(); ++g) {
                    for (int v = 0; v < static_cast<int>(k.carrier.arity(i)); ++v) {
                        if (v == k.comp[i][f][g]) continue;
                        auto m = k;
                        m.comp[i][f][g] = v;
                        test(m);
                    }
                }
                for (int j = 0; j < n; ++j) {
                    if (j == k.cod[i][f]) continue;
                    auto m = k;
                    m.cod[i][f] = j;
                    test(m);
                }
            }
            for (int e = 0; e < static_cast<int>(k.carrier.arity(i)); ++e) {
                if (e == k.counit[i]) continue;
                auto m = k;
                m.counit[i] = e;
                test(m);
            }
        }
    }
    EXPECT_GT(mutants, 50u);
    EXPECT_GT(unlawful, 0u);
}
