#include "kancat/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>

#include "kancat/builtins.hpp"
#include "kancat/error.hpp"
#include "kancat/eval.hpp"
#include "kancat/iso.hpp"
#include "kancat/kan.hpp"
#include "kancat/kleisli.hpp"
#include "kancat/select.hpp"
#include "kancat/windowed.hpp"

namespace kancat {

namespace {

using Clock = std::chrono::steady_clock;

struct NamedCheck {
    std::string name;
    std::function<CheckRecord(const Bounds&)> run;
};

CheckRecord verdict(bool ok, std::string detail, std::string witness = "") {
    CheckRecord r;
    r.status = ok ? Outcome::Pass : Outcome::Fail;
    r.detail = std::move(detail);
    if (!ok) r.witness = std::move(witness);
    return r;
}

std::string shape(const FinCategory& c) {
    return std::to_string(c.num_objects()) + " objects, " + std::to_string(c.num_morphisms()) + " morphisms";
}

CheckRecord iso_record(const FinCategory& a, const FinCategory& b, IsoOptions opt) {
    IsoResult r = category_iso(a, b, opt);
    CheckRecord rec = verdict(r.found(), shape(a) + " vs " + shape(b), r.reason);
    if (r.status == IsoStatus::Undecided) rec.status = Outcome::Undecided;
    return rec;
}

IsoOptions iso_options(const Bounds& b) { return {b.iso_cap, b.iso_steps}; }

// Every hom(a, b) of the window against expected(a, b).
CheckRecord hom_counts(const FinCategory& c, const std::function<std::int64_t(int, int)>& expected) {
    std::size_t checked = 0;
    for (int a = 0; a < static_cast<int>(c.num_objects()); ++a) {
        for (int b = 0; b < static_cast<int>(c.num_objects()); ++b) {
            auto got = static_cast<std::int64_t>(c.hom(a, b).size());
            ++checked;
            if (got != expected(a, b)) {
                return verdict(false, "", "|hom(" + c.object_name(a) + ", " + c.object_name(b) + ")| = " +
                                              std::to_string(got) + ", expected " + std::to_string(expected(a, b)));
            }
        }
    }
    return verdict(true, std::to_string(checked) + " hom counts");
}

CheckRecord both(CheckRecord a, const CheckRecord& b) {
    if (a.status == Outcome::Pass) {
        a.status = b.status;
        a.witness = b.witness;
    }
    a.detail += a.detail.empty() || b.detail.empty() ? b.detail : "; " + b.detail;
    return a;
}

std::int64_t ipow(std::int64_t base, std::int64_t e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}

std::int64_t binom(std::int64_t n, std::int64_t k) {
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::string window_tag(int n) { return "n, m <= " + std::to_string(n); }

std::vector<FinCategory> site_fixtures() {
    return {walking_arrow(), chain_category(3), cyclic_group(2), discrete_category(3), commutative_square()};
}

// ---- density, walking ------------------------------------------------------

std::vector<NamedCheck> density_suite() {
    std::vector<NamedCheck> out;
    for (const auto& c : site_fixtures()) {
        out.push_back({"density/" + c.name(), [c](const Bounds& b) {
                           auto k = density_comonad(elts_family(c), b);
                           auto laws = check_comonad_laws(k);
                           auto rec = iso_record(comonad_to_category(k), c, iso_options(b));
                           auto arities = k.carrier.arities();
                           auto expected = category_to_comonad(c).carrier.arities();
                           std::sort(arities.begin(), arities.end());
                           std::sort(expected.begin(), expected.end());
                           rec = both(rec, verdict(arities == expected, "carrier " + k.carrier.str(), "carrier arities differ"));
                           return both(rec, verdict(laws.ok(), "comonad laws", laws.summary()));
                       }});
    }
    return out;
}

std::vector<NamedCheck> walking_suite() {
    return {
        {"walking/lan(y + 1, y + 1)",
         [](const Bounds& b) {
             Env env;
             env.bounds = b;
             auto v = eval_ast(*parse_expr("lan(y + 1, y + 1)"), env);
             FinCategory w = as_category(v, b);
             std::size_t non_id = 0;
             for (int f = 0; f < static_cast<int>(w.num_morphisms()); ++f) non_id += !w.is_identity(f);
             bool counts = w.num_objects() == 2 && w.num_morphisms() == 3 && non_id == 1;
             auto rec = verdict(counts, shape(w) + ", " + std::to_string(non_id) + " non-identity",
                                "expected 2 objects, 3 morphisms, 1 non-identity");
             return both(rec, iso_record(w, walking_arrow(), iso_options(b)));
         }},
        {"walking/constant 1 is terminal",
         [](const Bounds& b) {
             return iso_record(comonad_to_category(density_comonad(poly_family(parse_poly("1")), b)), terminal_category(),
                               iso_options(b));
         }},
    };
}

// ---- windows ---------------------------------------------------------------

std::vector<NamedCheck> finset_suite() {
    return {{"finset/kleisli window", [](const Bounds& b) {
                 const int n = 3;
                 auto w = materialize(kleisli_subcategory(finite_sets_family(n), identity_monad(set_base()), n, b), b.morphism_cap);
                 auto rec = hom_counts(w, [](int a, int c) { return ipow(a, c); });
                 rec = both(rec, iso_record(w, materialize(build_finset_op(n), b.morphism_cap), iso_options(b)));
                 rec.window = window_tag(n);
                 return rec;
             }}};
}

std::vector<NamedCheck> lawvere_suite() {
    return {
        {"lawvere/maybe", [](const Bounds& b) {
             const int n = 3;
             auto w = materialize(kleisli_subcategory(finite_sets_family(n), maybe_monad(), n, b), b.morphism_cap);
             auto rec = hom_counts(w, [](int a, int c) { return ipow(a + 1, c); });
             auto v = validate_category(w);
             rec = both(rec, verdict(v.ok(), "category laws on the window", v.summary()));
             rec.window = window_tag(n);
             return rec;
         }},
        {"lawvere/powerset", [](const Bounds& b) {
             const int n = 3;
             auto w = materialize(kleisli_subcategory(finite_sets_family(n), powerset_monad(), n, b), b.morphism_cap);
             auto rec = hom_counts(w, [](int a, int c) { return ipow(ipow(2, a), c); });
             auto v = validate_category(w);
             rec = both(rec, verdict(v.ok(), "category laws on the window", v.summary()));
             rec.window = window_tag(n);
             return rec;
         }},
    };
}

std::vector<NamedCheck> deltaop_suite() {
    return {
        {"deltaop/kleisli window", [](const Bounds& b) {
             const int n = 3;
             auto w = materialize(kleisli_subcategory(paths_family(n), frcat_monad(), n, b), b.morphism_cap);
             auto rec = hom_counts(w, [](int a, int c) { return binom(a + c + 1, c + 1); });
             rec = both(rec, iso_record(w, materialize(build_delta_op(n), b.morphism_cap), iso_options(b)));
             rec.window = window_tag(n);
             return rec;
         }},
        {"deltaop/script", [](const Bounds& b) {
             Env env;
             env.bounds = b;
             auto report = run_script("D = lan(paths, paths . frcat)\ncheck iso_window(D, delta_op)\n", env);
             CheckRecord rec = report.checks.at(0);
             rec.detail = "lan(paths, paths . frcat) against delta_op: " + rec.detail;
             return rec;
         }},
    };
}

std::vector<NamedCheck> product_suite() {
    return {
        {"product/walking arrow", [](const Bounds& b) {
             auto c = walking_arrow();
             auto left = comonad_to_category(cmd_left(list_family(2), category_comonad(c), b));
             auto rec = iso_record(left, materialize(product_completion_oracle(c, 2), b.morphism_cap), iso_options(b));
             rec.window = "arity <= 2";
             return rec;
         }},
        {"product/terminal", [](const Bounds& b) {
             auto left = comonad_to_category(cmd_left(list_family(2), category_comonad(terminal_category()), b));
             auto rec = iso_record(left, materialize(build_finset_op(2), b.morphism_cap), iso_options(b));
             rec.window = "arity <= 2";
             return rec;
         }},
    };
}

// ---- selection, laws -------------------------------------------------------

std::vector<std::pair<FinCategory, std::string>> selection_fixtures() {
    return {{walking_arrow(), "y^2"},    {cyclic_group(2), "y + 1"},     {walking_arrow(), "y^2 + y + 1"},
            {chain_category(3), "y^2"},  {commutative_square(), "y^2"},  {cyclic_group(2), "y^2 + 1"},
            {walking_arrow(), "y^3"},    {discrete_category(4), "y^3"}};
}

std::vector<NamedCheck> selection_suite() {
    std::vector<NamedCheck> out;
    for (const auto& [c, lit] : selection_fixtures()) {
        out.push_back({"selection/" + c.name() + " x " + lit, [c = c, lit = lit](const Bounds& b) {
                           auto p = parse_poly(lit);
                           auto left = comonad_to_category(cmd_left(poly_family(p), category_comonad(c), b));
                           auto sel = selection_category(c, p, b);
                           IsoOptions opt = iso_options(b);
                           opt.object_cap = std::max<std::int64_t>(opt.object_cap, 64);
                           auto rec = iso_record(left, sel, opt);
                           auto v1 = validate_category(left);
                           auto v2 = validate_category(sel);
                           return both(rec, verdict(v1.ok() && v2.ok(), "associativity on both",
                                                    v1.ok() ? v2.summary() : v1.summary()));
                       }});
    }
    return out;
}

CheckRecord comonad_record(const PolyComonad& k) {
    auto r = check_comonad_laws(k);
    return verdict(r.ok(), k.carrier.str(), r.summary());
}

std::vector<NamedCheck> laws_suite() {
    std::vector<NamedCheck> out;
    for (const auto& c : site_fixtures()) {
        out.push_back({"laws/density " + c.name(), [c](const Bounds& b) { return comonad_record(density_comonad(elts_family(c), b)); }});
    }
    out.push_back({"laws/cmd_left y^2 walking_arrow", [](const Bounds& b) {
                       return comonad_record(cmd_left(poly_family(parse_poly("y^2")), category_comonad(walking_arrow()), b));
                   }});
    out.push_back({"laws/cmd_right y + 1 maybe", [](const Bounds& b) {
                       return comonad_record(cmd_right(poly_family(parse_poly("y + 1")), maybe_monad(), b));
                   }});
    out.push_back({"laws/cmd_right paths frcat", [](const Bounds& b) {
                       return comonad_record(cmd_right(paths_family(2), frcat_monad(), b));
                   }});
    out.push_back({"laws/cmd_dist writer(Z2)", [](const Bounds& b) {
                       auto p = poly_family(parse_poly("y^2"));
                       return comonad_record(cmd_dist(p, writer_strength(walking_arrow(), cyclic_group(2)), b));
                   }});
    out.push_back({"laws/cmd_dist trivial monoid is cmd_left", [](const Bounds& b) {
                       auto p = poly_family(parse_poly("y^2"));
                       auto one = cmd_dist(p, writer_strength(walking_arrow(), monoid_category("1", {{0}})), b);
                       auto plain = cmd_left(p, category_comonad(walking_arrow()), b);
                       auto rec = comonad_record(one);
                       return both(rec, iso_record(comonad_to_category(one), comonad_to_category(plain), iso_options(b)));
                   }});
    return out;
}

// ---- adjunction ------------------------------------------------------------

// Transpose of the unit is the identity, and transposing back reproduces a
// transformation p ⇒ ⟨p|q⟩∘q built from the unit.
CheckRecord roundtrip(const PraFunctor& p, const Functor& q, const Bounds& b) {
    auto k = kan_carrier(p, q, b);
    auto eta = kan_unit(k);
    auto back = transpose_to_kan(k, k.functor, kan_transpose(p, eta));
    std::size_t checked = 0;
    for (int n = 0; n <= b.set_suite_max; ++n) {
        auto y = finite_set(n);
        auto ly = k.functor->apply_obj(y, b.enum_cap);
        for (const auto& w : ly.elements(0)) {
            ++checked;
            if (back(ObjRef(y), 0, w) != w) return verdict(false, "", "transpose of the unit moves " + w.str());
        }
    }
    auto phi = vcomp(eta, whisker_left(k.functor, identity_nat(q)));
    auto rebuilt = transpose_inv(k, k.functor, kan_transpose(p, phi));
    for (const auto& x : default_suite(p.base, b).objects) {
        auto px = phi.source->apply_obj(x, b.enum_cap);
        for (int o = 0; o < static_cast<int>(px.base().num_objects()); ++o) {
            for (const auto& v : px.elements(o)) {
                ++checked;
                if (rebuilt(ObjRef(x), o, v) != phi(ObjRef(x), o, v)) {
                    return verdict(false, "", "inverse transpose differs at " + v.str() + " in " + describe(x));
                }
            }
        }
    }
    return verdict(true, std::to_string(checked) + " elements");
}

std::vector<NamedCheck> adjunction_suite() {
    std::vector<NamedCheck> out;
    out.push_back({"adjunction/triangle y + 1", [](const Bounds& b) {
                       auto p = poly_family(parse_poly("y + 1"));
                       return both(roundtrip(p, pra_to_eval(p), b), roundtrip(p, maybe_monad().t, b));
                   }});
    out.push_back({"adjunction/triangle elts chain3", [](const Bounds& b) {
                       auto p = elts_family(chain_category(3));
                       return roundtrip(p, pra_to_eval(p), b);
                   }});
    out.push_back({"adjunction/triangle paths frcat", [](const Bounds& b) {
                       auto p = paths_family(1);
                       return roundtrip(p, compose_eval(pra_to_eval(p), frcat_monad().t), b);
                   }});
    struct Triple {
        std::string name;
        std::function<LawReport(const Bounds&)> run;
    };
    auto id = identity_functor(set_base());
    std::vector<Triple> triples = {
        {"y + 1, id, id", [id](const Bounds& b) { return along_composites_check(poly_family(parse_poly("y + 1")), id, id, b); }},
        {"elts walking_arrow, elts, maybe",
         [](const Bounds& b) {
             auto p = elts_family(walking_arrow());
             return along_composites_check(p, pra_to_eval(p), maybe_monad().t, b);
         }},
        {"y + 1, maybe, maybe",
         [](const Bounds& b) {
             return along_composites_check(poly_family(parse_poly("y + 1")), maybe_monad().t, maybe_monad().t, b);
         }},
        {"y^2 + 1, maybe, powerset",
         [](const Bounds& b) {
             return along_composites_check(poly_family(parse_poly("y^2 + 1")), maybe_monad().t, powerset_monad().t, b);
         }},
        {"elts chain3, elts, id",
         [id](const Bounds& b) {
             auto p = elts_family(chain_category(3));
             return along_composites_check(p, pra_to_eval(p), id, b);
         }},
    };
    for (const auto& t : triples) {
        out.push_back({"adjunction/along " + t.name, [t](const Bounds& b) {
                           auto r = t.run(b);
                           return verdict(r.ok(), r.summary(), r.summary());
                       }});
    }
    out.push_back({"adjunction/contravariant functoriality", [](const Bounds& b) {
                       auto r = contravariant_functoriality_check(poly_family(parse_poly("y^2 + 1")), b);
                       return verdict(r.ok(), r.summary(), r.summary());
                   }});
    return out;
}

// ---- enriched --------------------------------------------------------------

std::vector<NamedCheck> enriched_suite() {
    std::vector<NamedCheck> out;
    out.push_back({"enriched/selection functor composition", [](const Bounds& b) {
                       auto arrow = walking_arrow();
                       auto chain = chain_category(3);
                       auto f = functor_from_names(arrow, chain, {{"a", "0"}, {"b", "1"}}, {{"f", "0<1"}});
                       auto g = to_terminal(chain);
                       auto h = functor_from_names(discrete_category(2), arrow, {{"0", "a"}, {"1", "b"}}, {});
                       std::vector<std::pair<CatFunctor, CatFunctor>> pairs = {{f, g}, {h, f}, {h, to_terminal(arrow)}};
                       for (const auto& lit : {"y^2", "y + 1"}) {
                           auto p = parse_poly(lit);
                           for (const auto& [x, y] : pairs) {
                               auto lhs = selection_functor(compose_cat_functors(x, y), p, b);
                               auto rhs = compose_cat_functors(selection_functor(x, p, b), selection_functor(y, p, b));
                               if (!same_tables(lhs, rhs)) {
                                   return verdict(false, "", "S(" + x.source.name() + " -> " + y.target.name() +
                                                                 ") differs from the composite at " + lit);
                               }
                           }
                       }
                       return verdict(true, "3 composable pairs, 2 polynomials");
                   }});
    out.push_back({"enriched/profunctor associativity", [](const Bounds& b) {
                       std::size_t entries = 0;
                       for (const auto& c : {walking_arrow(), commutative_square(), cyclic_group(2)}) {
                           auto d = selection_profunctor(c, parse_poly("y^2 + y"), parse_poly("y + 1"), b);
                           auto r = check_profunctor(d, b);
                           if (!r.ok()) return verdict(false, "", c.name() + ": " + r.summary());
                           entries += r.entries.size();
                       }
                       return verdict(true, std::to_string(entries) + " law entries");
                   }});
    out.push_back({"enriched/boff", [](const Bounds& b) {
                       auto arrow = walking_arrow();
                       auto p = parse_poly("y^2 + y");
                       std::vector<CatFunctor> fixtures = {
                           functor_from_names(discrete_category(2), arrow, {{"0", "a"}, {"1", "b"}}, {}),
                           functor_from_names(arrow, chain_category(3), {{"a", "0"}, {"b", "1"}}, {{"f", "0<1"}}),
                           identity_cat_functor(commutative_square()),
                           to_terminal(chain_category(3)),
                       };
                       bool bo_not_ff = false, ff_not_bo = false;
                       for (const auto& f : fixtures) {
                           auto r = check_boff(f, p, b);
                           bo_not_ff = bo_not_ff || (r.input_bo && !r.input_ff);
                           ff_not_bo = ff_not_bo || (r.input_ff && !r.input_bo);
                           if (!r.ok()) return verdict(false, "", f.source.name() + ": " + r.summary());
                       }
                       return verdict(bo_not_ff && ff_not_bo, "4 functors, no implication violations",
                                      "fixture set lacks a bo-not-ff or ff-not-bo functor");
                   }});
    return out;
}

// ---- mutation --------------------------------------------------------------

// The category laws restated directly over the tables.
bool lawful_table(const FinCategory& c) {
    const int n = static_cast<int>(c.num_morphisms());
    for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) {
        int e = c.identity(o);
        if (c.dom(e) != o || c.cod(e) != o) return false;
    }
    for (int f = 0; f < n; ++f) {
        if (c.compose(c.identity(c.dom(f)), f) != f || c.compose(f, c.identity(c.cod(f))) != f) return false;
        for (int g = 0; g < n; ++g) {
            int h = c.compose(f, g);
            if (c.cod(f) != c.dom(g)) continue;
            if (h < 0 || c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g)) return false;
        }
    }
    for (int f = 0; f < n; ++f) {
        for (int g : c.out_arrows(c.cod(f))) {
            for (int h : c.out_arrows(c.cod(g))) {
                if (c.compose(c.compose(f, g), h) != c.compose(f, c.compose(g, h))) return false;
            }
        }
    }
    return true;
}

// Counit, typing and associativity of a comonad in category form.
bool lawful_delta(const PolyComonad& k) {
    const std::size_t np = k.carrier.num_positions();
    auto in = [](int x, std::size_t n) { return x >= 0 && static_cast<std::size_t>(x) < n; };
    for (std::size_t i = 0; i < np; ++i) {
        std::size_t ai = k.carrier.arity(static_cast<int>(i));
        if (!in(k.counit[i], ai)) return false;
        for (std::size_t f = 0; f < ai; ++f) {
            int j = k.cod[i][f];
            if (!in(j, np) || k.comp[i][f].size() != k.carrier.arity(j)) return false;
            for (int d : k.comp[i][f]) {
                if (!in(d, ai)) return false;
            }
        }
    }
    for (std::size_t i = 0; i < np; ++i) {
        auto e = static_cast<std::size_t>(k.counit[i]);
        if (k.cod[i][e] != static_cast<int>(i)) return false;
        for (std::size_t f = 0; f < k.comp[i].size(); ++f) {
            auto j = static_cast<std::size_t>(k.cod[i][f]);
            if (k.comp[i][e][f] != static_cast<int>(f)) return false;
            if (k.comp[i][f][static_cast<std::size_t>(k.counit[j])] != static_cast<int>(f)) return false;
            for (std::size_t g = 0; g < k.comp[i][f].size(); ++g) {
                auto fg = static_cast<std::size_t>(k.comp[i][f][g]);
                if (k.cod[i][fg] != k.cod[j][g]) return false;
                for (std::size_t h = 0; h < k.comp[j][g].size(); ++h) {
                    if (k.comp[i][fg][h] != k.comp[i][f][static_cast<std::size_t>(k.comp[j][g][h])]) return false;
                }
            }
        }
    }
    return true;
}

struct MutationTally {
    std::size_t mutants = 0;
    std::size_t unlawful = 0;
    std::size_t detected = 0;
    std::size_t disagreements = 0;
    std::string first_miss;

    void add(bool oracle_lawful, bool flagged, bool has_witness, const std::string& label) {
        ++mutants;
        if (!oracle_lawful) {
            ++unlawful;
            if (flagged && has_witness) {
                ++detected;
            } else if (first_miss.empty()) {
                first_miss = label;
            }
        } else if (flagged) {
            ++disagreements;
            if (first_miss.empty()) first_miss = label + " (flagged but lawful)";
        }
    }

    CheckRecord record() const {
        bool ok = unlawful > 0 && detected == unlawful && disagreements == 0;
        return verdict(ok,
                       std::to_string(mutants) + " mutants, " + std::to_string(unlawful) + " unlawful, " +
                           std::to_string(detected) + " detected",
                       first_miss.empty() ? "no unlawful mutants" : "missed " + first_miss);
    }
};

CheckRecord composition_mutants() {
    MutationTally tally;
    for (const auto& c : {walking_arrow(), chain_category(3), commutative_square(), cyclic_group(2)}) {
        const int n = static_cast<int>(c.num_morphisms());
        for (int f = 0; f < n; ++f) {
            for (int g = 0; g < n; ++g) {
                int h = c.compose(f, g);
                if (h < 0) continue;
                for (int h2 = -1; h2 < n; ++h2) {
                    if (h2 == h) continue;
                    auto m = c.with_compose_entry(f, g, h2);
                    auto r = validate_category(m);
                    bool witness = !r.violations.empty() && !r.violations.front().message.empty();
                    tally.add(lawful_table(m), !r.ok(), witness,
                              c.name() + " " + c.morphism(f).name + ";" + c.morphism(g).name);
                }
            }
        }
    }
    return tally.record();
}

CheckRecord delta_mutants() {
    MutationTally tally;
    for (const auto& c : {walking_arrow(), cyclic_group(2), chain_category(3), cyclic_group(3)}) {
        const auto k = category_to_comonad(c);
        for (std::size_t i = 0; i < k.comp.size(); ++i) {
            for (std::size_t f = 0; f < k.comp[i].size(); ++f) {
                for (std::size_t g = 0; g < k.comp[i][f].size(); ++g) {
                    for (int d = 0; d < static_cast<int>(k.comp[i].size()); ++d) {
                        if (d == k.comp[i][f][g]) continue;
                        auto m = k;
                        m.comp[i][f][g] = d;
                        auto r = check_comonad_laws(m);
                        bool witness = !r.violations.empty() && !r.violations.front().message.empty();
                        tally.add(lawful_delta(m), !r.ok(), witness,
                                  c.name() + " comp[" + std::to_string(i) + "][" + std::to_string(f) + "][" +
                                      std::to_string(g) + "]");
                    }
                }
            }
        }
    }
    return tally.record();
}

// Writer strength over the walking arrow, corrupted at one element of t(k(2)).
// The oracle evaluates the unit, counit and comultiplication laws at that
// element directly in the element encodings.
bool lawful_strength_mutant(const PolyComonad& cat, std::int64_t unit, const Value& v, const Value& w) {
    auto alpha = [&](const Value& x) {
        if (x == v) return w;
        std::vector<Value> kids;
        for (const auto& e : x[0].kids()) kids.push_back(Value::tuple({e, x[1]}));
        return Value::node(x[0].tag(), std::move(kids));
    };
    const Value& kv = v[0];
    const Value& m = v[1];
    const auto c = static_cast<std::size_t>(kv.tag());
    // unit
    if (m.tag() == unit) {
        std::vector<Value> kids;
        for (const auto& e : kv.kids()) kids.push_back(Value::tuple({e, m}));
        if (w != Value::node(kv.tag(), kids)) return false;
    }
    // counit
    const auto c2 = static_cast<std::size_t>(w.tag());
    if (c2 >= cat.counit.size() || w.size() != cat.carrier.arity(static_cast<int>(c2))) return false;
    if (w[static_cast<std::size_t>(cat.counit[c2])] != Value::tuple({kv[static_cast<std::size_t>(cat.counit[c])], m})) {
        return false;
    }
    // comultiplication
    if (c2 != c) return false;
    for (std::size_t f = 0; f < kv.size(); ++f) {
        const int j = cat.cod[c][f];
        std::vector<Value> lhs, inner;
        for (int g : cat.comp[c][f]) {
            lhs.push_back(w[static_cast<std::size_t>(g)]);
            inner.push_back(kv[static_cast<std::size_t>(g)]);
        }
        if (Value::node(j, lhs) != alpha(Value::tuple({Value::node(j, inner), m}))) return false;
    }
    return true;
}

CheckRecord dist_mutants(const Bounds& b) {
    MutationTally tally;
    const auto c = walking_arrow();
    const auto monoid = cyclic_group(2);
    const auto dl = writer_strength(c, monoid);
    const auto cat = category_to_comonad(c);
    const auto x = finite_set(2);
    constexpr std::int64_t kAll = std::numeric_limits<std::int64_t>::max();
    const auto tkx = dl.t.t->apply_obj(dl.k.k->apply_obj(x, kAll), kAll);
    const auto ktx = dl.k.k->apply_obj(dl.t.t->apply_obj(x, kAll), kAll);
    TestSuite suite = default_suite(set_base(), b);
    const auto& targets = ktx.elements(0);
    for (const auto& v : tkx.elements(0)) {
        const Value right = dl.alpha(ObjRef(x), 0, v);
        const auto at = std::find(targets.begin(), targets.end(), right) - targets.begin();
        std::vector<Value> choices = {targets[static_cast<std::size_t>(at + 1) % targets.size()]};
        for (const auto& t : targets) {
            if (t.tag() != right.tag()) {
                choices.push_back(t);
                break;
            }
        }
        for (const auto& w : choices) {
            DistLaw bad = dl;
            auto original = dl.alpha.component;
            bad.alpha.component = [original, x, v, w](const ObjRef& obj, int o, const Value& e) {
                if (e == v && obj.get() == x) return w;
                return original(obj, o, e);
            };
            auto r = check_dist_laws(bad, suite, b);
            bool witness = false;
            for (const auto& e : r.entries) witness = witness || (e.status == CheckStatus::Fail && !e.detail.empty());
            tally.add(lawful_strength_mutant(cat, monoid.identity(0), v, w),
                      !r.ok(), witness, "alpha at " + v.str() + " -> " + w.str());
        }
    }
    return tally.record();
}

std::vector<NamedCheck> mutation_suite() {
    return {
        {"mutation/baselines lawful", [](const Bounds& b) {
             bool ok = validate_category(walking_arrow()).ok() && check_comonad_laws(category_to_comonad(cyclic_group(3))).ok() &&
                       check_dist_laws(writer_strength(walking_arrow(), cyclic_group(2)), default_suite(set_base(), b), b).ok();
             return verdict(ok, "unmutated tables pass their checkers", "an unmutated table fails");
         }},
        {"mutation/composition tables", [](const Bounds&) { return composition_mutants(); }},
        {"mutation/delta tables", [](const Bounds&) { return delta_mutants(); }},
        {"mutation/distributive law", [](const Bounds& b) { return dist_mutants(b); }},
    };
}

using SuiteFn = std::vector<NamedCheck> (*)();

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"density", density_suite},   {"walking", walking_suite},       {"finset", finset_suite},
        {"lawvere", lawvere_suite},   {"deltaop", deltaop_suite},       {"product", product_suite},
        {"selection", selection_suite}, {"laws", laws_suite},           {"adjunction", adjunction_suite},
        {"enriched", enriched_suite}, {"mutation", mutation_suite},
    };
    return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

RunReport run_suite(const std::string& name, const Bounds& bounds) {
    const auto& table = registry();
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == name; });
    if (it == table.end()) throw LookupError("unknown suite '" + name + "'");
    auto start = Clock::now();
    std::vector<NamedCheck> checks = it->second();
    std::vector<std::future<CheckRecord>> running;
    for (const auto& c : checks) {
        running.push_back(std::async(std::launch::async, [&c, &bounds] {
            auto t0 = Clock::now();
            CheckRecord rec;
            try {
                rec = c.run(bounds);
            } catch (const BoundExceeded& e) {
                rec.status = Outcome::Undecided;
                rec.witness = e.what();
            } catch (const std::exception& e) {
                rec.status = Outcome::Fail;
                rec.witness = std::string("error: ") + e.what();
            }
            rec.name = c.name;
            rec.millis = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
            return rec;
        }));
    }
    RunReport report;
    report.subject = "suite " + name;
    report.bounds = bounds;
    for (auto& f : running) report.checks.push_back(f.get());
    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    report.wall_millis = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return report;
}

}  // namespace kancat
