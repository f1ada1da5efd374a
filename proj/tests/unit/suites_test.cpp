#include <gtest/gtest.h>

#include <algorithm>

#include "kancat/error.hpp"
#include "kancat/suites.hpp"

using namespace kancat;

class SuiteRun : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteRun, EveryCheckPasses) {
    const auto r = run_suite(GetParam(), Bounds{});
    EXPECT_FALSE(r.checks.empty());
    for (const auto& c : r.checks) EXPECT_EQ(c.status, Outcome::Pass) << c.name << ": " << c.witness;
    EXPECT_TRUE(std::is_sorted(r.checks.begin(), r.checks.end(),
                               [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; }));
}

INSTANTIATE_TEST_SUITE_P(All, SuiteRun, ::testing::ValuesIn(suite_names()),
                         [](const auto& info) { return info.param; });

TEST(Suites, UnknownNameThrows) { EXPECT_THROW(run_suite("nosuch", Bounds{}), LookupError); }

TEST(Suites, NamesAreUnique) {
    auto names = suite_names();
    std::sort(names.begin(), names.end());
    EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
    EXPECT_EQ(names.size(), 11u);
}
