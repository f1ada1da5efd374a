#include <gtest/gtest.h>

#include <set>

#include "kancat/builtins.hpp"
#include "kancat/error.hpp"

using namespace kancat;

namespace {

std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= b;
    return r;
}

Copresheaf run(const Functor& f, const Copresheaf& x) { return f->apply_obj(x, 1'000'000); }

TestSuite set_suite(std::int64_t max = 4) {
    Bounds b;
    b.set_suite_max = max;
    return default_suite(set_base(), b);
}

}  // namespace

TEST(Funcal, OutputSizes) {
    for (std::int64_t n = 0; n <= 4; ++n) {
        const auto x = finite_set(n);
        EXPECT_EQ(run(maybe_monad().t, x).total_size(), static_cast<std::size_t>(n + 1));
        EXPECT_EQ(run(powerset_monad().t, x).total_size(), static_cast<std::size_t>(ipow(2, n)));
        EXPECT_EQ(run(list_functor(2), x).total_size(), static_cast<std::size_t>(1 + n + n * n));
        EXPECT_EQ(run(category_comonad(walking_arrow()).k, x).total_size(), static_cast<std::size_t>(n * n + n));
        EXPECT_EQ(run(exceptions_monad(2).t, x).total_size(), static_cast<std::size_t>(n + 2));
        EXPECT_EQ(run(poly_functor(parse_poly("y^2 + 1")), x).total_size(), static_cast<std::size_t>(n * n + 1));
    }
}

TEST(Funcal, FreeCategoryOnWalkingArrowGraph) {
    const auto frcat = frcat_monad();
    const auto ul1 = chain_graph(1);
    const auto fc = run(frcat.t, ul1);
    EXPECT_EQ(fc.size(kVertex), 2u);
    EXPECT_EQ(fc.size(kEdge), 3u);
    EXPECT_TRUE(validate_copresheaf(fc).empty());
    const auto paths = pra_to_eval(paths_family(2));
    EXPECT_EQ(run(paths, fc).total_size(), 9u);
}

TEST(Funcal, FreeCategoryOnCycleIsInfinite) {
    const auto cyc = make_graph(2, {{0, 1}, {1, 0}});
    try {
        run(frcat_monad().t, cyc);
        FAIL() << "expected InfiniteResult";
    } catch (const InfiniteResult& e) {
        EXPECT_NE(std::string(e.what()).find("cycle"), std::string::npos);
    }
    ASSERT_TRUE(frcat_monad().t->apply_graded);
    const auto graded = frcat_monad().t->apply_graded(cyc, 2, 1'000'000);
    EXPECT_EQ(graded.size(kEdge), 2u + 2u + 2u);  // identities, edges, two-step loops
}

TEST(Funcal, WhiskeredUnitOfMaybe) {
    const auto m = maybe_monad();
    const auto w = whisker_left(m.t, m.unit);
    for (std::int64_t n = 0; n <= 3; ++n) {
        const auto x = finite_set(n);
        const auto src = run(w.source, x);
        const auto tgt = run(w.target, x);
        EXPECT_EQ(src.total_size(), static_cast<std::size_t>(n + 1));
        EXPECT_EQ(tgt.total_size(), static_cast<std::size_t>(n + 2));
        std::set<Value> images;
        for (const auto& v : src.elements(0)) {
            const auto img = w(ObjRef(x), 0, v);
            EXPECT_TRUE(tgt.find(0, img).has_value());
            images.insert(img);
        }
        EXPECT_EQ(images.size(), src.total_size());
    }
}

TEST(Funcal, ComposeRejectsMismatchedBases) {
    EXPECT_THROW(compose_eval(maybe_monad().t, frcat_monad().t), ShapeError);
    EXPECT_NO_THROW(compose_eval(frcat_monad().t, frcat_monad().t));
}

TEST(Funcal, FunctorLaws) {
    const Bounds b;
    for (const auto& f : {maybe_monad().t, powerset_monad().t, list_functor(2), poly_functor(parse_poly("y^2 + y + 1")),
                          category_comonad(commutative_square()).k}) {
        const auto r = check_functor_laws(*f, set_suite(3), b);
        EXPECT_TRUE(r.ok()) << f->name << "\n" << r.summary();
    }
    const auto r = check_functor_laws(*frcat_monad().t, default_suite(graph_base(), b), b);
    EXPECT_TRUE(r.ok()) << r.summary();
}

TEST(BuiltinLaws, MaybeAndPowerset) {
    const Bounds b;
    for (const auto& m : {maybe_monad(), powerset_monad(), exceptions_monad(2), identity_monad(set_base())}) {
        const auto r = check_monad_laws(m, set_suite(4), b);
        EXPECT_TRUE(r.ok()) << m.name << "\n" << r.summary();
        // P(P(P(X))) is out of reach from |X| = 3 on; only that square may be skipped
        for (const auto& e : r.entries) {
            if (e.status == CheckStatus::Skipped) {
                EXPECT_EQ(m.name, "powerset");
                EXPECT_NE(e.law.find("assoc"), std::string::npos) << e.law;
            }
        }
        EXPECT_GT(r.passed(), 0u);
    }
}

TEST(BuiltinLaws, PowersetSkipsPastEnumCap) {
    Bounds b;
    b.enum_cap = 100;
    const auto r = check_monad_laws(powerset_monad(), set_suite(4), b);
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.skipped(), 0u);
}

TEST(BuiltinLaws, Writer) {
    const Bounds b;
    const auto z3 = writer_monad(cyclic_group(3));
    EXPECT_TRUE(check_monad_laws(z3, set_suite(3), b).ok());
    const auto mon = monoid_category("and", {{0, 1}, {1, 1}});
    EXPECT_TRUE(check_monad_laws(writer_monad(mon), set_suite(3), b).ok());
    EXPECT_THROW(writer_monad(walking_arrow()), ShapeError);
}

TEST(BuiltinLaws, FreeCategoryOnAcyclicGraphs) {
    const Bounds b;
    const auto r = check_monad_laws(frcat_monad(), default_suite(graph_base(), b), b);
    EXPECT_TRUE(r.ok()) << r.summary();
    EXPECT_GT(r.passed(), 0u);
}

TEST(BuiltinLaws, CategoryComonads) {
    const Bounds b;
    for (const auto& c : {walking_arrow(), cyclic_group(2), chain_category(3), commutative_square()}) {
        const auto r = check_comonad_pkg_laws(category_comonad(c), set_suite(3), b);
        EXPECT_TRUE(r.ok()) << c.name() << "\n" << r.summary();
    }
}

TEST(BuiltinLaws, WriterStrength) {
    const Bounds b;
    for (const auto& c : {walking_arrow(), cyclic_group(2)}) {
        const auto r = check_dist_laws(writer_strength(c, cyclic_group(2)), set_suite(3), b);
        EXPECT_TRUE(r.ok()) << r.summary();
        EXPECT_EQ(r.skipped(), 0u);
    }
    EXPECT_TRUE(check_dist_laws(identity_dist_law(maybe_monad()), set_suite(3), b).ok());
    EXPECT_TRUE(check_dist_laws(identity_dist_law(category_comonad(walking_arrow())), set_suite(3), b).ok());
}

TEST(BuiltinLaws, BrokenMultiplicationIsCaught) {
    auto m = maybe_monad();
    m.name = "maybe-broken";
    m.mult.component = [](const ObjRef&, int, const Value&) { return Value::node(1, {}); };
    const auto r = check_monad_laws(m, set_suite(3), Bounds{});
    EXPECT_FALSE(r.ok());
    bool witnessed = false;
    for (const auto& e : r.entries) witnessed |= e.status == CheckStatus::Fail && !e.detail.empty();
    EXPECT_TRUE(witnessed);
}

TEST(BuiltinLaws, BrokenStrengthIsCaught) {
    auto d = writer_strength(walking_arrow(), cyclic_group(2));
    const auto good = d.alpha;
    // forget the log: still natural, but the multiplication square fails
    d.alpha.component = [good](const ObjRef& x, int obj, const Value& v) {
        const Value out = good(x, obj, v);
        std::vector<Value> kids;
        for (const auto& k : out.kids()) kids.push_back(Value::tuple({k[0], Value::atom(0)}));
        return Value::node(out.tag(), kids);
    };
    EXPECT_FALSE(check_dist_laws(d, set_suite(2), Bounds{}).ok());
}

TEST(FuncalProperty, PraElementRoundtrip) {
    const auto p = paths_family(2);
    for (const auto& g : default_suite(graph_base(), Bounds{}).objects) {
        for (int i = 0; i < static_cast<int>(p.size()); ++i) {
            for (const auto& m : copresheaf_hom(p.reps[static_cast<std::size_t>(i)], g)) {
                const auto v = pra_element(p, i, g, m);
                const auto fn = pra_element_fn(p, v);
                const auto& a = p.reps[static_cast<std::size_t>(i)];
                for (int o = 0; o < 2; ++o) {
                    for (std::size_t k = 0; k < a.size(o); ++k) {
                        EXPECT_EQ(fn(o, a.element(o, static_cast<int>(k))),
                                  g.element(o, m.components[static_cast<std::size_t>(o)][k]));
                    }
                }
            }
        }
    }
}
