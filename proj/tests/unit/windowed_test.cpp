#include <gtest/gtest.h>

#include "kancat/error.hpp"
#include "kancat/iso.hpp"
#include "kancat/windowed.hpp"

using namespace kancat;

namespace {

std::uint64_t binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::uint64_t power(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

TEST(DeltaOp, HomCounts) {
    const auto w = build_delta_op(3);
    auto hom = [&](int n, int m) { return w.hom(Value::atom(n), Value::atom(m)).size(); };
    EXPECT_EQ(hom(1, 1), 3u);
    EXPECT_EQ(hom(2, 1), 6u);
    for (int m = 0; m <= 3; ++m) EXPECT_EQ(hom(0, m), 1u);
    for (int n = 0; n <= 3; ++n) {
        for (int m = 0; m <= 3; ++m) EXPECT_EQ(hom(n, m), binomial(n + m + 1, m + 1)) << n << "," << m;
    }
}

TEST(DeltaOp, MonotoneMapsListedExplicitly) {
    const auto maps = build_delta_op(1).hom(Value::atom(1), Value::atom(1));
    ASSERT_EQ(maps.size(), 3u);
    EXPECT_EQ(maps[0].str(), "0(0,0)");
    EXPECT_EQ(maps[1].str(), "0(0,1)");
    EXPECT_EQ(maps[2].str(), "0(1,1)");
}

TEST(DeltaOp, WindowIsValid) {
    const auto c = materialize(build_delta_op(3));
    EXPECT_TRUE(validate_category(c).ok()) << validate_category(c).summary();
}

TEST(FinSetOp, HomCountsAndLaws) {
    const auto w = build_finset_op(3);
    auto hom = [&](int n, int m) { return w.hom(Value::atom(n), Value::atom(m)).size(); };
    EXPECT_EQ(hom(2, 3), 8u);
    EXPECT_EQ(hom(0, 1), 0u);
    for (int n = 0; n <= 3; ++n) {
        EXPECT_EQ(hom(n, 0), 1u);
        for (int m = 0; m <= 3; ++m) EXPECT_EQ(hom(n, m), power(static_cast<std::uint64_t>(n), m));
    }
    EXPECT_TRUE(validate_category(materialize(w)).ok());
}

TEST(ProductCompletion, HomCountsAndTerminalObject) {
    const auto w = product_completion_oracle(walking_arrow(), 2);
    const Value aa = Value::tuple({Value::atom(0), Value::atom(0)});
    const Value b = Value::tuple({Value::atom(1)});
    EXPECT_EQ(w.hom(aa, b).size(), 2u);
    const Value empty = Value::tuple({});
    for (const auto& o : w.objects) EXPECT_EQ(w.hom(o, empty).size(), 1u);
    EXPECT_EQ(w.objects.size(), 7u);
    EXPECT_TRUE(validate_category(materialize(w)).ok());
}

TEST(ProductCompletion, TerminalBaseMatchesFinSetOp) {
    for (int n = 0; n <= 3; ++n) {
        const auto pc = materialize(product_completion_oracle(terminal_category(), n));
        const auto fs = materialize(build_finset_op(n));
        EXPECT_TRUE(category_iso(pc, fs).found()) << n;
    }
}

TEST(Windowed, RestrictKeepsPrefix) {
    const auto w = restrict_window(build_delta_op(3), 2);
    const auto c = materialize(w);
    EXPECT_EQ(c.num_objects(), 2u);
    EXPECT_TRUE(category_iso(c, materialize(build_delta_op(1))).found());
}

TEST(Windowed, MorphismCap) {
    EXPECT_THROW(materialize(build_finset_op(3), 10), BoundExceeded);
}
