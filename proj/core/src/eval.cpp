#include "kancat/eval.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <random>

#include "kancat/builtins.hpp"
#include "kancat/error.hpp"
#include "kancat/io.hpp"
#include "kancat/iso.hpp"
#include "kancat/kan.hpp"
#include "kancat/kleisli.hpp"
#include "kancat/select.hpp"

namespace kancat {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::shared_ptr<const PraFunctor> as_pra(const DslValue& v) {
    if (const auto* p = std::get_if<PolyFunctor>(&v)) return std::make_shared<const PraFunctor>(poly_family(*p));
    if (const auto* p = std::get_if<PraVal>(&v)) return p->pra;
    return nullptr;
}

bool same_pra(const PraFunctor& a, const PraFunctor& b) {
    return same_base(a.base, b.base) && a.reps == b.reps;
}

Functor as_functor(const DslValue& v) {
    return std::visit(overloaded{
                          [](const PolyFunctor& p) -> Functor { return poly_functor(p); },
                          [](const PraVal& p) -> Functor { return pra_to_eval(*p.pra); },
                          [](const FunctorVal& f) -> Functor { return f.functor; },
                          [](const MonadVal& m) -> Functor { return m.pkg.t; },
                          [](const ComonadVal& k) -> Functor { return k.pkg.k; },
                          [](const std::shared_ptr<const CompositeVal>& c) -> Functor {
                              Functor right = std::holds_alternative<IdentityVal>(c->right)
                                                  ? identity_functor(c->p->base)
                                                  : as_functor(c->right);
                              if (!right) return nullptr;
                              return compose_eval(pra_to_eval(*c->p), right);
                          },
                          [](const auto&) -> Functor { return nullptr; },
                      },
                      v);
}

std::optional<MonadVal> as_monad(const DslValue& v, const BaseRef& base) {
    if (const auto* m = std::get_if<MonadVal>(&v)) return *m;
    if (std::holds_alternative<IdentityVal>(v)) return MonadVal{identity_monad(base), "identity", std::nullopt};
    return std::nullopt;
}

std::optional<ComonadVal> as_comonad(const DslValue& v, const BaseRef& base) {
    if (const auto* k = std::get_if<ComonadVal>(&v)) return *k;
    if (std::holds_alternative<IdentityVal>(v)) return ComonadVal{identity_comonad(base), "identity", std::nullopt};
    return std::nullopt;
}

std::int64_t as_number(const DslValue& v, const char* what) {
    if (const auto* n = std::get_if<NumberVal>(&v)) return n->value;
    if (const auto* p = std::get_if<PolyFunctor>(&v)) {
        bool constant = true;
        for (auto a : p->arities()) constant = constant && a == 0;
        if (constant) return static_cast<std::int64_t>(p->num_positions());
    }
    throw ShapeError(std::string(what) + " must be a number, got " + kind_name(v));
}

std::string as_text(const DslValue& v, const char* what) {
    if (const auto* t = std::get_if<TextVal>(&v)) return t->text;
    throw ShapeError(std::string(what) + " must be a string, got " + kind_name(v));
}

int as_small(const DslValue& v, const char* what, std::int64_t limit) {
    auto n = as_number(v, what);
    if (n > limit) throw BoundExceeded(std::string(what) + " = " + std::to_string(n) + " exceeds " + std::to_string(limit));
    return static_cast<int>(n);
}

// The full subcategory on objects 0..k-1.
FinCategory first_objects(const FinCategory& c, std::size_t k) {
    if (k >= c.num_objects()) return c;
    std::vector<std::string> objects(c.object_names().begin(), c.object_names().begin() + static_cast<long>(k));
    std::vector<int> keep(c.num_morphisms(), -1);
    std::vector<Morphism> morphisms;
    for (int f = 0; f < static_cast<int>(c.num_morphisms()); ++f) {
        if (static_cast<std::size_t>(c.dom(f)) < k && static_cast<std::size_t>(c.cod(f)) < k) {
            keep[static_cast<std::size_t>(f)] = static_cast<int>(morphisms.size());
            morphisms.push_back(c.morphism(f));
        }
    }
    std::vector<int> ids;
    for (std::size_t o = 0; o < k; ++o) ids.push_back(keep[static_cast<std::size_t>(c.identity(static_cast<int>(o)))]);
    std::size_t n = morphisms.size();
    std::vector<int> table(n * n, -1);
    for (int f = 0; f < static_cast<int>(c.num_morphisms()); ++f) {
        for (int g = 0; g < static_cast<int>(c.num_morphisms()); ++g) {
            int nf = keep[static_cast<std::size_t>(f)], ng = keep[static_cast<std::size_t>(g)];
            if (nf < 0 || ng < 0) continue;
            int h = c.compose(f, g);
            if (h >= 0) table[static_cast<std::size_t>(nf) * n + static_cast<std::size_t>(ng)] = keep[static_cast<std::size_t>(h)];
        }
    }
    return FinCategory(c.name(), objects, morphisms, ids, table);
}

PolyFunctor poly_from_terms(const std::vector<std::pair<std::int64_t, std::int64_t>>& terms, const std::string& name,
                            const Bounds& bounds) {
    std::vector<std::size_t> arities;
    std::int64_t total = 0;
    for (auto [coef, exp] : terms) {
        total += coef;
        if (coef > bounds.enum_cap || total > bounds.enum_cap) {
            throw BoundExceeded("polynomial " + name + " has more than enum_cap = " + std::to_string(bounds.enum_cap) +
                                " positions");
        }
        if (exp > bounds.enum_cap) {
            throw BoundExceeded("exponent " + std::to_string(exp) + " exceeds enum_cap");
        }
        arities.insert(arities.end(), static_cast<std::size_t>(coef), static_cast<std::size_t>(exp));
    }
    return poly_from_arities(arities, name);
}

CategoryVal built(PolyComonad k, std::string provenance) {
    FinCategory c = comonad_to_category(k);
    return CategoryVal{std::move(c), std::move(k), std::move(provenance)};
}

DistLaw find_dist_law(const MonadVal& t, const ComonadVal& k) {
    if (k.family == "identity") return identity_dist_law(t.pkg);
    if (t.family == "identity") return identity_dist_law(k.pkg);
    if (t.family == "writer" && k.family == "category_comonad") return writer_strength(*k.arg, *t.arg);
    throw ShapeError("no distributive law of " + t.pkg.name + " over " + k.pkg.name + " is known");
}

std::string bounds_tag(const Bounds& b) { return "[" + b.str() + "]"; }

DslValue eval_lan(const Ast& node, const DslValue& a, const DslValue& b, Env& env) {
    const Bounds& bounds = env.bounds;
    const std::string expr = print_ast(node);
    auto shape_error = [&] {
        return ShapeError("lan needs a pra-functor, optionally composed with a comonad, first and a functor second; got " +
                          kind_name(a) + " and " + kind_name(b));
    };

    std::shared_ptr<const PraFunctor> p = as_pra(a);
    std::optional<ComonadVal> k;
    if (!p) {
        const auto* comp = std::get_if<std::shared_ptr<const CompositeVal>>(&a);
        if (!comp) throw shape_error();
        p = (*comp)->p;
        k = as_comonad((*comp)->right, p->base);
        if (!k) throw shape_error();
    }

    std::shared_ptr<const PraFunctor> q = as_pra(b);
    std::optional<MonadVal> t;
    if (!q) {
        if (const auto* comp = std::get_if<std::shared_ptr<const CompositeVal>>(&b)) {
            q = (*comp)->p;
            t = as_monad((*comp)->right, q->base);
        }
    }

    auto record = [&](const std::string& route) {
        std::string line = expr + " via " + route + " " + bounds_tag(bounds);
        env.provenance.push_back(line);
        return line;
    };

    if (q && same_pra(*p, *q) && (t || !std::holds_alternative<std::shared_ptr<const CompositeVal>>(b))) {
        // Each result is computed before its provenance line is recorded.
        if (!k && !t) {
            auto c = density_comonad(*p, bounds);
            return built(std::move(c), record("density"));
        }
        if (k && !t) {
            auto c = cmd_left(*p, k->pkg, bounds);
            return built(std::move(c), record("cmd_left"));
        }
        if (!k && t) {
            std::optional<PolyComonad> c;
            try {
                c = cmd_right(*p, t->pkg, bounds);
            } catch (const InfiniteResult&) {
            } catch (const BoundExceeded&) {
            }
            if (c) return built(std::move(*c), record("cmd_right"));
            int window = static_cast<int>(std::min<std::int64_t>(bounds.n_max, static_cast<std::int64_t>(p->size()) - 1));
            auto w = kleisli_subcategory(*p, t->pkg, window, bounds);
            return WindowedVal{std::move(w), record("kleisli window " + std::to_string(window))};
        }
        DistLaw dl = find_dist_law(*t, *k);
        auto c = cmd_dist(*p, dl, bounds);
        return built(std::move(c), record("cmd_dist"));
    }
    if (k) throw shape_error();
    Functor f = as_functor(b);
    if (!f) throw shape_error();
    KanResult r = kan_carrier(*p, f, bounds);
    r.carrier.name = expr;
    record("carrier");
    return r.carrier;
}

DslValue eval_compose(const DslValue& a, const DslValue& b, const Env& env) {
    if (const auto* pa = std::get_if<PolyFunctor>(&a)) {
        if (const auto* pb = std::get_if<PolyFunctor>(&b)) {
            auto c = compose_poly(*pa, *pb, env.bounds.compose_cap).poly;
            c.name = "(" + pa->str() + ") . (" + pb->str() + ")";
            return c;
        }
    }
    auto p = as_pra(a);
    bool b_is_structure = std::holds_alternative<MonadVal>(b) || std::holds_alternative<ComonadVal>(b) ||
                          std::holds_alternative<IdentityVal>(b);
    if (p && b_is_structure) return std::make_shared<const CompositeVal>(CompositeVal{p, b});
    Functor fa = as_functor(a);
    Functor fb = std::holds_alternative<IdentityVal>(b) && fa ? identity_functor(fa->dom) : as_functor(b);
    if (!fa || !fb) throw ShapeError("cannot compose " + kind_name(a) + " with " + kind_name(b));
    if (!same_base(fa->dom, fb->cod)) {
        throw ShapeError("cannot compose " + fa->name + " after " + fb->name + ": bases differ");
    }
    if (p) {
        if (!same_base(p->base, set_base()) && !same_base(fb->cod, p->base)) throw ShapeError("bases differ");
        return std::make_shared<const CompositeVal>(CompositeVal{p, FunctorVal{fb}});
    }
    return FunctorVal{compose_eval(fa, fb)};
}

using BuiltinFn = std::function<DslValue(const std::vector<DslValue>&, Env&)>;

void arity(const std::string& name, const std::vector<DslValue>& args, std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
        std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
        throw ShapeError(name + " takes " + want + " argument(s), got " + std::to_string(args.size()));
    }
}

DslValue load_document(const std::string& path, Env& env);

const std::map<std::string, BuiltinFn>& builtins() {
    static const std::map<std::string, BuiltinFn> table = [] {
        std::map<std::string, BuiltinFn> m;
        auto category = [](const std::string& name, std::function<FinCategory()> make) {
            return [name, make](const std::vector<DslValue>& args, Env&) -> DslValue {
                arity(name, args, 0, 0);
                return CategoryVal{make(), std::nullopt, name};
            };
        };
        auto sized_category = [](const std::string& name, std::function<FinCategory(int)> make) {
            return [name, make](const std::vector<DslValue>& args, Env& env) -> DslValue {
                arity(name, args, 1, 1);
                return CategoryVal{make(as_small(args[0], name.c_str(), env.bounds.object_cap)), std::nullopt, name};
            };
        };
        auto bound_arg = [](const std::string& name, const std::vector<DslValue>& args, const Env& env) {
            arity(name, args, 0, 1);
            return args.empty() ? static_cast<int>(env.bounds.n_max) : as_small(args[0], name.c_str(), env.bounds.object_cap);
        };
        auto cat_arg = [](const std::vector<DslValue>& args, std::size_t i, const Env& env) {
            return as_category(args[i], env.bounds);
        };

        m["walking_arrow"] = category("walking_arrow", walking_arrow);
        m["comm_square"] = category("comm_square", commutative_square);
        m["terminal"] = category("terminal", terminal_category);
        m["empty"] = category("empty", empty_category);
        m["chain"] = sized_category("chain", chain_category);
        m["discrete"] = sized_category("discrete", discrete_category);
        m["cyclic"] = sized_category("cyclic", cyclic_group);
        m["op"] = [cat_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("op", args, 1, 1);
            return CategoryVal{opposite(cat_arg(args, 0, env)), std::nullopt, "op"};
        };
        m["cat"] = [](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("cat", args, 1, 1);
            return load_document(as_text(args[0], "cat path"), env);
        };

        m["elts"] = [cat_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("elts", args, 1, 1);
            return PraVal{std::make_shared<const PraFunctor>(elts_family(cat_arg(args, 0, env)))};
        };
        m["paths"] = [bound_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            return PraVal{std::make_shared<const PraFunctor>(paths_family(bound_arg("paths", args, env)))};
        };
        m["finsets"] = [bound_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            return PraVal{std::make_shared<const PraFunctor>(finite_sets_family(bound_arg("finsets", args, env)))};
        };
        m["list"] = [bound_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            return PraVal{std::make_shared<const PraFunctor>(list_family(bound_arg("list", args, env)))};
        };
        m["span_elts"] = [cat_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("span_elts", args, 1, 1);
            return PraVal{std::make_shared<const PraFunctor>(span_family(cat_arg(args, 0, env)))};
        };
        m["random_poly"] = [](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("random_poly", args, 1, 1);
            int n = as_small(args[0], "random_poly size", env.bounds.object_cap);
            std::mt19937_64 rng(env.seed);
            std::uniform_int_distribution<std::int64_t> pick(0, env.bounds.n_max);
            std::vector<std::size_t> arities;
            for (int i = 0; i < n; ++i) arities.push_back(static_cast<std::size_t>(pick(rng)));
            std::sort(arities.rbegin(), arities.rend());
            return poly_from_arities(arities, "random_poly(" + std::to_string(n) + ", seed " + std::to_string(env.seed) + ")");
        };

        m["identity"] = [](const std::vector<DslValue>& args, Env&) -> DslValue {
            arity("identity", args, 0, 0);
            return IdentityVal{};
        };
        m["maybe"] = [](const std::vector<DslValue>& args, Env&) -> DslValue {
            arity("maybe", args, 0, 0);
            return MonadVal{maybe_monad(), "maybe", std::nullopt};
        };
        m["powerset"] = [](const std::vector<DslValue>& args, Env&) -> DslValue {
            arity("powerset", args, 0, 0);
            return MonadVal{powerset_monad(), "powerset", std::nullopt};
        };
        m["frcat"] = [](const std::vector<DslValue>& args, Env&) -> DslValue {
            arity("frcat", args, 0, 0);
            return MonadVal{frcat_monad(), "frcat", std::nullopt};
        };
        m["exceptions"] = [](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("exceptions", args, 0, 1);
            int n = args.empty() ? 1 : as_small(args[0], "exceptions", env.bounds.object_cap);
            return MonadVal{exceptions_monad(n), "exceptions", std::nullopt};
        };
        m["writer"] = [cat_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("writer", args, 1, 1);
            FinCategory monoid = cat_arg(args, 0, env);
            return MonadVal{writer_monad(monoid), "writer", monoid};
        };
        m["span"] = [cat_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("span", args, 1, 1);
            FinCategory c = cat_arg(args, 0, env);
            return MonadVal{span_monad(c), "span", c};
        };
        m["category_comonad"] = [cat_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("category_comonad", args, 1, 1);
            FinCategory c = cat_arg(args, 0, env);
            return ComonadVal{category_comonad(c), "category_comonad", c};
        };
        m["strength"] = [cat_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("strength", args, 2, 2);
            return DistVal{writer_strength(cat_arg(args, 0, env), cat_arg(args, 1, env))};
        };
        m["list_functor"] = [bound_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            return FunctorVal{list_functor(bound_arg("list_functor", args, env))};
        };

        m["delta_op"] = [bound_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            int n = bound_arg("delta_op", args, env);
            return WindowedVal{build_delta_op(n), "delta_op(" + std::to_string(n) + ")"};
        };
        m["finset_op"] = [bound_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            int n = bound_arg("finset_op", args, env);
            return WindowedVal{build_finset_op(n), "finset_op(" + std::to_string(n) + ")"};
        };
        m["product_completion"] = [cat_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("product_completion", args, 2, 2);
            int n = as_small(args[1], "arity", env.bounds.object_cap);
            return WindowedVal{product_completion_oracle(cat_arg(args, 0, env), n), "product_completion"};
        };
        m["selection"] = [cat_arg](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("selection", args, 2, 2);
            const auto* p = std::get_if<PolyFunctor>(&args[1]);
            if (!p) throw ShapeError("selection needs a polynomial, got " + kind_name(args[1]));
            return CategoryVal{selection_category(cat_arg(args, 0, env), *p, env.bounds), std::nullopt, "selection"};
        };
        m["kleisli"] = [](const std::vector<DslValue>& args, Env& env) -> DslValue {
            arity("kleisli", args, 2, 3);
            auto p = as_pra(args[0]);
            if (!p) throw ShapeError("kleisli needs a pra-functor, got " + kind_name(args[0]));
            auto t = as_monad(args[1], p->base);
            if (!t) throw ShapeError("kleisli needs a monad, got " + kind_name(args[1]));
            int w = args.size() == 3 ? as_small(args[2], "window", env.bounds.object_cap)
                                     : static_cast<int>(std::min<std::int64_t>(env.bounds.n_max,
                                                                               static_cast<std::int64_t>(p->size()) - 1));
            return WindowedVal{kleisli_subcategory(*p, t->pkg, w, env.bounds), "kleisli"};
        };
        return m;
    }();
    return table;
}

DslValue call_builtin(const std::string& name, const std::vector<DslValue>& args, Env& env) {
    const auto& table = builtins();
    auto it = table.find(name);
    if (it == table.end()) throw LookupError("unknown name '" + name + "'");
    return it->second(args, env);
}

DslValue load_document(const std::string& path, Env& env) {
    std::filesystem::path full(path);
    if (full.is_relative()) full = std::filesystem::path(env.base_dir) / full;
    Json doc = load_json_file(full.string());
    std::string kind = document_kind(doc);
    if (kind == "category") return CategoryVal{category_from_json(doc), std::nullopt, "cat(" + path + ")"};
    if (kind == "graph") return graph_copresheaf(graph_from_json(doc));
    if (kind == "copresheaf") return copresheaf_from_json(doc);
    if (kind == "polynomial") return poly_from_json(doc);
    return eval_ast(*parse_expr(functor_expr_from_json(doc)), env);
}

CheckRecord from_law_report(CheckRecord rec, const LawReport& r) {
    rec.status = r.ok() ? Outcome::Pass : Outcome::Fail;
    rec.detail = r.summary();
    for (const auto& e : r.entries) {
        if (e.status == CheckStatus::Fail) {
            rec.witness = e.law + " at " + e.object + ": " + e.detail;
            break;
        }
    }
    return rec;
}

CheckRecord from_category_report(CheckRecord rec, const CategoryReport& r) {
    rec.status = r.ok() ? Outcome::Pass : Outcome::Fail;
    rec.detail = r.summary();
    if (!r.violations.empty()) rec.witness = r.violations.front().message;
    return rec;
}

CheckRecord from_comonad_report(CheckRecord rec, const ComonadReport& r) {
    rec.status = r.ok() ? Outcome::Pass : Outcome::Fail;
    rec.detail = r.summary();
    if (!r.violations.empty()) rec.witness = r.violations.front().message;
    return rec;
}

CheckRecord category_laws(CheckRecord rec, const DslValue& v, const Env& env) {
    return from_category_report(std::move(rec), validate_category(as_category(v, env.bounds)));
}

CheckRecord laws(CheckRecord rec, const DslValue& v, const Env& env) {
    if (const auto* c = std::get_if<CategoryVal>(&v)) {
        if (c->comonad) return from_comonad_report(std::move(rec), check_comonad_laws(*c->comonad));
        CategoryReport cr = validate_category(c->category);
        if (!cr.ok()) return from_category_report(std::move(rec), cr);
        return from_comonad_report(std::move(rec), check_comonad_laws(category_to_comonad(c->category)));
    }
    if (std::holds_alternative<WindowedVal>(v)) return category_laws(std::move(rec), v, env);
    if (const auto* m = std::get_if<MonadVal>(&v)) {
        return from_law_report(std::move(rec), check_monad_laws(m->pkg, default_suite(m->pkg.t->dom, env.bounds), env.bounds));
    }
    if (const auto* k = std::get_if<ComonadVal>(&v)) {
        return from_law_report(std::move(rec),
                               check_comonad_pkg_laws(k->pkg, default_suite(k->pkg.k->dom, env.bounds), env.bounds));
    }
    if (const auto* d = std::get_if<DistVal>(&v)) {
        return from_law_report(std::move(rec),
                               check_dist_laws(d->law, default_suite(d->law.k.k->dom, env.bounds), env.bounds));
    }
    if (Functor f = as_functor(v)) {
        return from_law_report(std::move(rec), check_functor_laws(*f, default_suite(f->dom, env.bounds), env.bounds));
    }
    throw ShapeError("no laws to check for " + kind_name(v));
}

int object_arg(const FinCategory& c, const DslValue& v) {
    if (const auto* t = std::get_if<TextVal>(&v)) return c.object_index(t->text);
    auto n = as_number(v, "object");
    if (n < 0 || static_cast<std::size_t>(n) >= c.num_objects()) throw LookupError("no object " + std::to_string(n));
    return static_cast<int>(n);
}

CheckRecord count_check(CheckRecord rec, std::int64_t actual, std::int64_t expected, const std::string& what) {
    rec.status = actual == expected ? Outcome::Pass : Outcome::Fail;
    rec.detail = what + " = " + std::to_string(actual);
    if (actual != expected) rec.witness = "expected " + std::to_string(expected) + ", found " + std::to_string(actual);
    return rec;
}

CheckRecord iso_check(CheckRecord rec, const FinCategory& a, const FinCategory& b, const Bounds& bounds) {
    IsoOptions opt{bounds.iso_cap, bounds.iso_steps};
    IsoResult r = category_iso(a, b, opt);
    rec.detail = std::to_string(a.num_objects()) + "/" + std::to_string(a.num_morphisms()) + " vs " +
                 std::to_string(b.num_objects()) + "/" + std::to_string(b.num_morphisms()) + " objects/morphisms";
    rec.status = r.found() ? Outcome::Pass : r.status == IsoStatus::Undecided ? Outcome::Undecided : Outcome::Fail;
    if (!r.found()) rec.witness = r.reason;
    return rec;
}

CheckRecord run_check(const Ast& node, std::vector<DslValue> args, Env& env) {
    CheckRecord rec;
    rec.name = print_ast(node).substr(6);
    const std::string& name = node.name;
    const Bounds& b = env.bounds;
    auto need = [&](std::size_t n) { arity(name, args, n, n); };

    if (name == "laws" || name == "comonad_laws" || name == "monad_laws" || name == "dist_laws" ||
        name == "functor_laws") {
        need(1);
        return laws(std::move(rec), args[0], env);
    }
    if (name == "category_laws") {
        need(1);
        return category_laws(std::move(rec), args[0], env);
    }
    if (name == "iso") {
        need(2);
        return iso_check(std::move(rec), as_category(args[0], b), as_category(args[1], b), b);
    }
    if (name == "iso_window") {
        need(2);
        auto size = [&](const DslValue& v) {
            if (const auto* w = std::get_if<WindowedVal>(&v)) return w->window.objects.size();
            return as_category(v, b).num_objects();
        };
        std::size_t k = std::min(size(args[0]), size(args[1]));
        auto cut = [&](const DslValue& v) {
            if (const auto* w = std::get_if<WindowedVal>(&v)) return materialize(restrict_window(w->window, k), b.morphism_cap);
            return first_objects(as_category(v, b), k);
        };
        rec = iso_check(std::move(rec), cut(args[0]), cut(args[1]), b);
        rec.window = "first " + std::to_string(k) + " objects, n <= " + std::to_string(k == 0 ? 0 : k - 1);
        return rec;
    }
    if (name == "equal") {
        need(2);
        bool same = as_category(args[0], b) == as_category(args[1], b);
        rec.status = same ? Outcome::Pass : Outcome::Fail;
        if (!same) rec.witness = "tables differ";
        return rec;
    }
    if (name == "objects" || name == "morphisms") {
        need(2);
        FinCategory c = as_category(args[0], b);
        auto n = static_cast<std::int64_t>(name == "objects" ? c.num_objects() : c.num_morphisms());
        return count_check(std::move(rec), n, as_number(args[1], "count"), name);
    }
    if (name == "hom_count") {
        need(4);
        FinCategory c = as_category(args[0], b);
        int x = object_arg(c, args[1]), y = object_arg(c, args[2]);
        return count_check(std::move(rec), static_cast<std::int64_t>(c.hom(x, y).size()), as_number(args[3], "count"),
                           "|hom(" + c.object_name(x) + ", " + c.object_name(y) + ")|");
    }
    if (name == "along_composites") {
        need(3);
        auto p = as_pra(args[0]);
        Functor q = as_functor(args[1]), q2 = as_functor(args[2]);
        if (!p || !q || !q2) throw ShapeError("along_composites needs a pra-functor and two functors");
        return from_law_report(std::move(rec), along_composites_check(*p, q, q2, b));
    }
    if (name == "functoriality") {
        need(1);
        auto p = as_pra(args[0]);
        if (!p) throw ShapeError("functoriality needs a pra-functor, got " + kind_name(args[0]));
        return from_law_report(std::move(rec), contravariant_functoriality_check(*p, b));
    }
    throw LookupError("unknown check '" + name + "'");
}

}  // namespace

std::string kind_name(const DslValue& v) {
    return std::visit(overloaded{
                          [](const NumberVal&) { return std::string("number"); },
                          [](const TextVal&) { return std::string("string"); },
                          [](const CategoryVal&) { return std::string("category"); },
                          [](const WindowedVal&) { return std::string("windowed category"); },
                          [](const PolyFunctor&) { return std::string("polynomial"); },
                          [](const PraVal&) { return std::string("pra-functor"); },
                          [](const FunctorVal&) { return std::string("functor"); },
                          [](const MonadVal&) { return std::string("monad"); },
                          [](const ComonadVal&) { return std::string("comonad"); },
                          [](const IdentityVal&) { return std::string("identity"); },
                          [](const DistVal&) { return std::string("distributive law"); },
                          [](const Copresheaf&) { return std::string("copresheaf"); },
                          [](const std::shared_ptr<const CompositeVal>&) { return std::string("composite"); },
                      },
                      v);
}

FinCategory as_category(const DslValue& v, const Bounds& bounds) {
    if (const auto* c = std::get_if<CategoryVal>(&v)) return c->category;
    if (const auto* w = std::get_if<WindowedVal>(&v)) return materialize(w->window, bounds.morphism_cap);
    throw ShapeError("expected a category, got " + kind_name(v));
}

DslValue eval_ast(const Ast& ast, Env& env) {
    switch (ast.kind) {
        case NodeKind::Ident: {
            auto it = env.bindings.find(ast.name);
            if (it != env.bindings.end()) return it->second;
            if (!builtins().count(ast.name)) throw LookupError("unbound name '" + ast.name + "'");
            return call_builtin(ast.name, {}, env);
        }
        case NodeKind::PolyLit:
            return poly_from_terms(ast.terms, print_ast(ast), env.bounds);
        case NodeKind::String:
            return TextVal{ast.name};
        case NodeKind::Lan: {
            DslValue a = eval_ast(*ast.kids[0], env);
            DslValue b = eval_ast(*ast.kids[1], env);
            return eval_lan(ast, a, b, env);
        }
        case NodeKind::Compose:
            return eval_compose(eval_ast(*ast.kids[0], env), eval_ast(*ast.kids[1], env), env);
        case NodeKind::Builtin: {
            std::vector<DslValue> args;
            for (const auto& k : ast.kids) args.push_back(eval_ast(*k, env));
            return call_builtin(ast.name, args, env);
        }
        case NodeKind::Let: {
            DslValue v = eval_ast(*ast.kids[0], env);
            env.bindings[ast.name] = v;
            return v;
        }
        default:
            throw ShapeError(std::string("a ") + to_string(ast.kind) + " is not an expression");
    }
}

std::string export_value(const DslValue& v, const std::string& format, const Env& env, bool omit_identities) {
    if (format == "dot") return category_to_dot(as_category(v, env.bounds), omit_identities);
    if (format != "json") throw ShapeError("unknown export format '" + format + "' (expected dot or json)");
    if (const auto* w = std::get_if<WindowedVal>(&v)) return windowed_to_json(w->window, env.bounds.morphism_cap).dump(2) + "\n";
    if (const auto* c = std::get_if<CategoryVal>(&v)) return category_to_json(c->category).dump(2) + "\n";
    if (const auto* p = std::get_if<PolyFunctor>(&v)) return poly_to_json(*p).dump(2) + "\n";
    if (const auto* x = std::get_if<Copresheaf>(&v)) return copresheaf_to_json(*x).dump(2) + "\n";
    throw ShapeError("cannot export a " + kind_name(v));
}

RunReport run_program(const Ast& program, Env& env) {
    auto start = Clock::now();
    RunReport report;
    report.bounds = env.bounds;
    for (const auto& stmt : program.kids) {
        if (stmt->kind == NodeKind::Check) {
            std::vector<DslValue> args;
            for (const auto& k : stmt->kids) args.push_back(eval_ast(*k, env));
            auto t0 = Clock::now();
            CheckRecord rec;
            try {
                rec = run_check(*stmt, std::move(args), env);
            } catch (const BoundExceeded& e) {
                rec.name = print_ast(*stmt).substr(6);
                rec.status = Outcome::Undecided;
                rec.witness = e.what();
            }
            rec.millis = millis_since(t0);
            report.checks.push_back(std::move(rec));
        } else if (stmt->kind == NodeKind::Export) {
            report.exports.push_back(export_value(eval_ast(*stmt->kids[0], env), stmt->name, env, env.omit_identities));
        } else {
            eval_ast(*stmt, env);
        }
    }
    report.notes = env.provenance;
    report.wall_millis = millis_since(start);
    return report;
}

RunReport run_script(const std::string& text, Env& env) { return run_program(*parse_program(text), env); }

}  // namespace kancat
