#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "kancat/copresheaf.hpp"
#include "kancat/error.hpp"

using namespace kancat;

namespace {

// Independent brute force: every pair of (vertex map, edge map) checked directly.
std::size_t brute_graph_homs(const Copresheaf& a, const Copresheaf& x) {
    const std::size_t av = a.size(kVertex), ae = a.size(kEdge), xv = x.size(kVertex), xe = x.size(kEdge);
    std::size_t count = 0;
    std::vector<std::size_t> vm(av, 0), em(ae, 0);
    std::function<void(std::size_t)> edges = [&](std::size_t k) {
        if (k == ae) {
            ++count;
            return;
        }
        for (std::size_t y = 0; y < xe; ++y) {
            if (static_cast<std::size_t>(x.act(kSrc, static_cast<int>(y))) != vm[static_cast<std::size_t>(a.act(kSrc, static_cast<int>(k)))]) continue;
            if (static_cast<std::size_t>(x.act(kTgt, static_cast<int>(y))) != vm[static_cast<std::size_t>(a.act(kTgt, static_cast<int>(k)))]) continue;
            em[k] = y;
            edges(k + 1);
        }
    };
    std::function<void(std::size_t)> verts = [&](std::size_t k) {
        if (k == av) {
            edges(0);
            return;
        }
        for (std::size_t y = 0; y < xv; ++y) {
            vm[k] = y;
            verts(k + 1);
        }
    };
    verts(0);
    return count;
}

Copresheaf random_graph(std::mt19937& rng, int max_v, int max_e) {
    const int nv = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_v));
    const int ne = static_cast<int>(rng() % static_cast<unsigned>(max_e + 1));
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < ne; ++e) {
        edges.emplace_back(static_cast<int>(rng() % static_cast<unsigned>(nv)), static_cast<int>(rng() % static_cast<unsigned>(nv)));
    }
    return make_graph(nv, edges);
}

// Renames every element so that the canonical order is reversed.
Copresheaf relabeled(const Copresheaf& x) {
    std::vector<std::vector<Value>> elements;
    for (int o = 0; o < static_cast<int>(x.base().num_objects()); ++o) {
        std::vector<Value> list;
        for (const auto& v : x.elements(o)) list.push_back(Value::atom(-v.tag() - 1));
        elements.push_back(list);
    }
    return Copresheaf::from_function(x.base_ptr(), elements, [&](int f, const Value& v) {
        const Value orig = Value::atom(-v.tag() - 1);
        return Value::atom(-x.act_value(f, orig).tag() - 1);
    });
}

}  // namespace

TEST(Copresheaf, GraphsAndRepresentablesAreValid) {
    EXPECT_TRUE(validate_copresheaf(chain_graph(3)).empty());
    EXPECT_TRUE(validate_copresheaf(representable(graph_base(), kEdge)).empty());
    EXPECT_TRUE(validate_copresheaf(representable(graph_base(), kVertex)).empty());
    const auto c = std::make_shared<const FinCategory>(commutative_square());
    for (int o = 0; o < 4; ++o) EXPECT_TRUE(validate_copresheaf(representable(c, o)).empty());
    EXPECT_EQ(representable(graph_base(), kEdge).size(kVertex), 2u);
}

TEST(Copresheaf, RepresentableAtVertexCountsVertices) {
    const auto point = representable(graph_base(), kVertex);
    EXPECT_EQ(point.size(kVertex), 1u);
    EXPECT_EQ(point.size(kEdge), 0u);
    for (const auto& x : {chain_graph(0), chain_graph(3), make_graph(4, {{0, 0}, {1, 2}})}) {
        EXPECT_EQ(count_copresheaf_hom(point, x), x.size(kVertex));
    }
}

TEST(Copresheaf, ChainIntoLongerChain) {
    EXPECT_EQ(count_copresheaf_hom(chain_graph(2), chain_graph(4)), 3u);
    EXPECT_EQ(brute_graph_homs(chain_graph(2), chain_graph(4)), 3u);
}

TEST(Copresheaf, EmptyIsInitial) {
    const auto empty = empty_copresheaf(graph_base());
    EXPECT_EQ(count_copresheaf_hom(empty, chain_graph(2)), 1u);
    EXPECT_EQ(count_copresheaf_hom(empty, empty), 1u);
    EXPECT_EQ(count_copresheaf_hom(finite_set(0), finite_set(3)), 1u);
    EXPECT_EQ(count_copresheaf_hom(finite_set(2), finite_set(0)), 0u);
}

TEST(Copresheaf, HomsAreNaturalAndLexicographic) {
    const auto maps = copresheaf_hom(chain_graph(1), make_graph(3, {{0, 1}, {1, 2}, {0, 2}}));
    ASSERT_EQ(maps.size(), 3u);
    for (std::size_t k = 1; k < maps.size(); ++k) {
        EXPECT_LT(maps[k - 1].components, maps[k].components);
    }
    for (const auto& m : maps) EXPECT_TRUE(is_natural(chain_graph(1), make_graph(3, {{0, 1}, {1, 2}, {0, 2}}), m));
}

TEST(Copresheaf, SetHomsAreFunctions) {
    EXPECT_EQ(count_copresheaf_hom(finite_set(3), finite_set(2)), 8u);
    EXPECT_EQ(count_copresheaf_hom(finite_set(2), finite_set(3)), 9u);
}

TEST(Copresheaf, FindCycle) {
    EXPECT_FALSE(find_cycle(chain_graph(3)).has_value());
    const auto loop = make_graph(3, {{0, 1}, {1, 2}, {2, 1}});
    const auto cycle = find_cycle(loop);
    ASSERT_TRUE(cycle.has_value());
    EXPECT_EQ(cycle->size(), 2u);
    EXPECT_TRUE(find_cycle(make_graph(1, {{0, 0}})).has_value());
}

TEST(Copresheaf, FromFunctionRejectsForeignImages) {
    EXPECT_THROW(Copresheaf::from_function(graph_base(), {{Value::atom(0)}, {Value::atom(0)}},
                                           [](int, const Value&) { return Value::atom(9); }),
                 ShapeError);
}

TEST(Copresheaf, DefaultSuites) {
    Bounds b;
    EXPECT_EQ(default_suite(set_base(), b).objects.size(), 5u);
    for (const auto& g : default_suite(graph_base(), b).objects) {
        EXPECT_LE(g.size(kVertex), 4u);
        EXPECT_FALSE(find_cycle(g).has_value());
    }
    const auto c = std::make_shared<const FinCategory>(walking_arrow());
    for (const auto& x : default_suite(c, b).objects) EXPECT_TRUE(validate_copresheaf(x).empty());
}

// Property: hom counts match brute force and are invariant under relabeling.
TEST(CopresheafProperty, HomCountsMatchBruteForceAndRelabeling) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = random_graph(rng, 3, 3);
        const auto x = random_graph(rng, 4, 5);
        const auto n = count_copresheaf_hom(a, x);
        EXPECT_EQ(n, brute_graph_homs(a, x));
        EXPECT_EQ(n, count_copresheaf_hom(relabeled(a), relabeled(x)));
    }
}
