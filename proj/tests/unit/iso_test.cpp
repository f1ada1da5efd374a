#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "kancat/fincat.hpp"
#include "kancat/iso.hpp"

using namespace kancat;

namespace {

// Relabels c by random permutations of objects and morphisms.
FinCategory shuffled(const FinCategory& c, std::mt19937& rng) {
    std::vector<int> op(c.num_objects()), mp(c.num_morphisms());
    std::iota(op.begin(), op.end(), 0);
    std::iota(mp.begin(), mp.end(), 0);
    std::shuffle(op.begin(), op.end(), rng);
    std::shuffle(mp.begin(), mp.end(), rng);
    std::vector<std::string> objects(c.num_objects());
    for (std::size_t o = 0; o < op.size(); ++o) objects[static_cast<std::size_t>(op[o])] = "o" + std::to_string(o);
    std::vector<Morphism> morphisms(c.num_morphisms());
    for (std::size_t f = 0; f < mp.size(); ++f) {
        morphisms[static_cast<std::size_t>(mp[f])] = {"m" + std::to_string(f), op[static_cast<std::size_t>(c.dom(static_cast<int>(f)))],
                                                      op[static_cast<std::size_t>(c.cod(static_cast<int>(f)))]};
    }
    std::vector<int> ids(c.num_objects());
    for (std::size_t o = 0; o < op.size(); ++o) ids[static_cast<std::size_t>(op[o])] = mp[static_cast<std::size_t>(c.identity(static_cast<int>(o)))];
    const std::size_t m = c.num_morphisms();
    std::vector<int> table(m * m, -1);
    for (std::size_t f = 0; f < m; ++f) {
        for (std::size_t g = 0; g < m; ++g) {
            const int h = c.compose(static_cast<int>(f), static_cast<int>(g));
            table[static_cast<std::size_t>(mp[f]) * m + static_cast<std::size_t>(mp[g])] = h < 0 ? -1 : mp[static_cast<std::size_t>(h)];
        }
    }
    return FinCategory("shuffled", objects, morphisms, ids, table);
}

}  // namespace

TEST(CategoryIso, WalkingArrowWithItself) {
    const auto r = category_iso(walking_arrow(), walking_arrow());
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.objects, (std::vector<int>{0, 1}));
    EXPECT_EQ(r.morphisms, (std::vector<int>{0, 1, 2}));
}

TEST(CategoryIso, WalkingArrowWithOppositeSwapsObjects) {
    const auto c = walking_arrow();
    const auto r = category_iso(c, opposite(c));
    ASSERT_TRUE(r.found());
    EXPECT_EQ(r.objects, (std::vector<int>{1, 0}));
}

TEST(CategoryIso, WalkingArrowVersusDiscrete) {
    const auto r = category_iso(walking_arrow(), discrete_category(2));
    EXPECT_EQ(r.status, IsoStatus::None);
}

TEST(CategoryIso, DistinguishesSameCounts) {
    // Z/4 and Z/2 x Z/2 have the same counts.
    const auto klein = monoid_category("klein", {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
    EXPECT_EQ(category_iso(cyclic_group(4), klein).status, IsoStatus::None);
    // Same object and morphism counts, different shapes.
    CategoryBuilder b("vee");
    for (const char* o : {"a", "b", "c", "d"}) b.add_object(o);
    b.add_morphism("f", "a", "b");
    b.add_morphism("g", "a", "c");
    b.add_morphism("h", "a", "d");
    b.add_morphism("k", "b", "d");
    b.add_morphism("l", "c", "d");
    EXPECT_EQ(category_iso(commutative_square(), b.build()).status, IsoStatus::None);
}

TEST(CategoryIso, CapGivesUndecided) {
    const auto big = discrete_category(9);
    const auto r = category_iso(big, big);
    EXPECT_EQ(r.status, IsoStatus::Undecided);
    EXPECT_NE(r.reason.find("undecided under cap"), std::string::npos);
    EXPECT_TRUE(category_iso(big, big, {.object_cap = 9}).found());
    // Different counts are decided even above the cap.
    EXPECT_EQ(category_iso(big, discrete_category(10)).status, IsoStatus::None);
}

TEST(CategoryIso, StepBudgetGivesUndecided) {
    const auto r = category_iso(cyclic_group(7), cyclic_group(7), {.object_cap = 8, .step_budget = 0});
    EXPECT_EQ(r.status, IsoStatus::Undecided);
    EXPECT_NE(r.reason.find("iso_steps"), std::string::npos);
}

// Property: random relabelings are recognized, witnesses verify, inverses
// and composites of witnesses are isomorphisms.
TEST(CategoryIsoProperty, PartialEquivalence) {
    std::mt19937 rng(11);
    for (const auto& c : {walking_arrow(), chain_category(4), cyclic_group(4), commutative_square(),
                          discrete_category(5), opposite(chain_category(3))}) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto d = shuffled(c, rng);
            const auto e = shuffled(c, rng);
            const auto cd = category_iso(c, d);
            const auto de = category_iso(d, e);
            ASSERT_TRUE(cd.found()) << c.name();
            ASSERT_TRUE(de.found());
            EXPECT_TRUE(is_isomorphism(c, d, cd.objects, cd.morphisms));
            const auto back = invert_iso(cd);
            EXPECT_TRUE(is_isomorphism(d, c, back.objects, back.morphisms));
            const auto ce = compose_iso(cd, de);
            EXPECT_TRUE(is_isomorphism(c, e, ce.objects, ce.morphisms));
        }
    }
}
