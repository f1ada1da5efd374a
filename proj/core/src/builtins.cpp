#include "kancat/builtins.hpp"

#include <algorithm>
#include <limits>

#include "kancat/error.hpp"

namespace kancat {

PraFunctor elts_family(const BaseRef& c) {
    PraFunctor p;
    p.name = "elts(" + c->name() + ")";
    p.base = c;
    for (int o = 0; o < static_cast<int>(c->num_objects()); ++o) {
        p.labels.push_back(c->object_name(o));
        p.reps.push_back(representable(c, o));
    }
    return p;
}

PraFunctor elts_family(const FinCategory& c) { return elts_family(std::make_shared<const FinCategory>(c)); }

PraFunctor paths_family(int bound) {
    PraFunctor p;
    p.name = "paths(" + std::to_string(bound) + ")";
    p.base = graph_base();
    for (int n = 0; n <= bound; ++n) {
        p.labels.push_back("ul_" + std::to_string(n));
        p.reps.push_back(chain_graph(n));
    }
    return p;
}

namespace {

PraFunctor set_family(std::string name, int n_max) {
    PraFunctor p;
    p.name = std::move(name);
    p.base = set_base();
    for (int n = 0; n <= n_max; ++n) {
        p.labels.push_back(std::to_string(n));
        p.reps.push_back(finite_set(n));
    }
    return p;
}

}  // namespace

PraFunctor finite_sets_family(int n_max) { return set_family("finsets(" + std::to_string(n_max) + ")", n_max); }

PraFunctor list_family(int bound) { return set_family("list(" + std::to_string(bound) + ")", bound); }

PraFunctor poly_family(const PolyFunctor& p) {
    PraFunctor out;
    out.name = p.name.empty() ? p.str() : p.name;
    out.base = set_base();
    for (std::size_t i = 0; i < p.num_positions(); ++i) {
        out.labels.push_back(p.positions[i]);
        out.reps.push_back(finite_set(static_cast<std::int64_t>(p.directions[i].size)));
    }
    return out;
}

Functor poly_functor(const PolyFunctor& p) { return pra_to_eval(poly_family(p)); }

Functor list_functor(int bound) { return pra_to_eval(list_family(bound)); }

namespace {

constexpr std::int64_t kAll = std::numeric_limits<std::int64_t>::max();

using SetApply = std::function<std::vector<Value>(const std::vector<Value>& x, std::int64_t cap)>;
using SetElem = std::function<Value(const Value& v, const std::function<Value(const Value&)>& h)>;

Functor set_functor(std::string name, SetApply apply, SetElem elem) {
    auto f = std::make_shared<EvalFunctor>();
    f->name = name;
    f->dom = set_base();
    f->cod = set_base();
    f->apply_obj = [apply, name](const Copresheaf& x, std::int64_t cap) {
        if (!same_base(x.base_ptr(), set_base())) throw ShapeError("'" + name + "' is a functor on Set");
        auto out = apply(x.elements(0), cap);
        if (static_cast<std::int64_t>(out.size()) > cap) {
            throw BoundExceeded("'" + name + "' output has " + std::to_string(out.size()) + " elements");
        }
        return set_of(std::move(out));
    };
    f->apply_elem = [elem](int, const Value& v, const ElemFn& h) {
        return elem(v, [&h](const Value& x) { return h(0, x); });
    };
    return f;
}

NatTrans set_nat(std::string name, Functor source, Functor target, std::function<Value(const Value&)> fn) {
    return {std::move(name), std::move(source), std::move(target),
            [fn = std::move(fn)](const ObjRef&, int, const Value& v) { return fn(v); }};
}

Value just(const Value& x) { return Value::node(0, {x}); }
Value nothing() { return Value::node(1, {}); }

}  // namespace

MonadPackage identity_monad(const BaseRef& base) {
    auto id = identity_functor(base);
    return {"identity", id, identity_nat(id), retype(identity_nat(id), compose_eval(id, id), id)};
}

ComonadPackage identity_comonad(const BaseRef& base) {
    auto id = identity_functor(base);
    return {"identity", id, identity_nat(id), retype(identity_nat(id), id, compose_eval(id, id))};
}

MonadPackage maybe_monad() {
    auto t = set_functor(
        "maybe",
        [](const std::vector<Value>& x, std::int64_t) {
            std::vector<Value> out;
            for (const auto& v : x) out.push_back(just(v));
            out.push_back(nothing());
            return out;
        },
        [](const Value& v, const auto& h) { return v.tag() == 0 ? just(h(v[0])) : v; });
    auto id = identity_functor(set_base());
    auto unit = set_nat("just", id, t, [](const Value& x) { return just(x); });
    auto mult = set_nat("join", compose_eval(t, t), t, [](const Value& v) { return v.tag() == 0 ? v[0] : v; });
    return {"maybe", t, unit, mult};
}

MonadPackage powerset_monad() {
    auto t = set_functor(
        "powerset",
        [](const std::vector<Value>& x, std::int64_t cap) {
            if (x.size() >= 62 || (std::int64_t{1} << x.size()) > cap) {
                throw BoundExceeded("powerset of a " + std::to_string(x.size()) + "-element set exceeds " +
                                    std::to_string(cap) + " elements");
            }
            std::vector<Value> out;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.size()); ++mask) {
                std::vector<Value> kids;
                for (std::size_t k = 0; k < x.size(); ++k) {
                    if (mask & (std::uint64_t{1} << k)) kids.push_back(x[k]);
                }
                out.push_back(Value::tuple(std::move(kids)));
            }
            std::sort(out.begin(), out.end());
            return out;
        },
        [](const Value& v, const auto& h) {
            std::vector<Value> kids;
            for (const auto& x : v.kids()) kids.push_back(h(x));
            std::sort(kids.begin(), kids.end());
            kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
            return Value::tuple(std::move(kids));
        });
    auto id = identity_functor(set_base());
    auto unit = set_nat("singleton", id, t, [](const Value& x) { return Value::tuple({x}); });
    auto mult = set_nat("union", compose_eval(t, t), t, [](const Value& v) {
        std::vector<Value> kids;
        for (const auto& s : v.kids()) kids.insert(kids.end(), s.kids().begin(), s.kids().end());
        std::sort(kids.begin(), kids.end());
        kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
        return Value::tuple(std::move(kids));
    });
    return {"powerset", t, unit, mult};
}

NatTrans maybe_to_powerset() {
    return set_nat("support", maybe_monad().t, powerset_monad().t, [](const Value& v) {
        return v.tag() == 0 ? Value::tuple({v[0]}) : Value::tuple({});
    });
}

MonadPackage writer_monad(const FinCategory& m) {
    if (m.num_objects() != 1) throw ShapeError("writer: '" + m.name() + "' is not a one-object category (monoid)");
    if (!validate_category(m).ok()) throw ShapeError("writer: '" + m.name() + "' is not a valid monoid");
    auto mon = std::make_shared<const FinCategory>(m);
    const std::string name = "writer(" + m.name() + ")";
    auto t = set_functor(
        name,
        [mon](const std::vector<Value>& x, std::int64_t) {
            std::vector<Value> out;
            for (const auto& v : x) {
                for (std::size_t e = 0; e < mon->num_morphisms(); ++e) {
                    out.push_back(Value::tuple({v, Value::atom(static_cast<std::int64_t>(e))}));
                }
            }
            return out;
        },
        [](const Value& v, const auto& h) { return Value::tuple({h(v[0]), v[1]}); });
    auto id = identity_functor(set_base());
    auto unit = set_nat("tell_unit", id, t, [mon](const Value& x) { return Value::tuple({x, Value::atom(mon->identity(0))}); });
    auto mult = set_nat("multiply", compose_eval(t, t), t, [mon](const Value& v) {
        const Value& inner = v[0];
        const int prod = mon->compose(static_cast<int>(inner[1].tag()), static_cast<int>(v[1].tag()));
        return Value::tuple({inner[0], Value::atom(prod)});
    });
    return {name, t, unit, mult};
}

MonadPackage exceptions_monad(int exceptions) {
    if (exceptions < 0) throw ShapeError("exceptions: count must be non-negative");
    const std::string name = "exceptions(" + std::to_string(exceptions) + ")";
    auto t = set_functor(
        name,
        [exceptions](const std::vector<Value>& x, std::int64_t) {
            std::vector<Value> out;
            for (const auto& v : x) out.push_back(Value::node(0, {v}));
            for (int e = 0; e < exceptions; ++e) out.push_back(Value::node(1, {Value::atom(e)}));
            return out;
        },
        [](const Value& v, const auto& h) { return v.tag() == 0 ? Value::node(0, {h(v[0])}) : v; });
    auto id = identity_functor(set_base());
    auto unit = set_nat("return", id, t, [](const Value& x) { return Value::node(0, {x}); });
    auto mult = set_nat("flatten", compose_eval(t, t), t, [](const Value& v) { return v.tag() == 0 ? v[0] : v; });
    return {name, t, unit, mult};
}

namespace {

// Paths of `g` with at most `max_len` edges (all paths when max_len < 0).
Copresheaf path_graph(const Copresheaf& g, std::int64_t max_len, std::int64_t cap) {
    const int nv = static_cast<int>(g.size(kVertex));
    const int ne = static_cast<int>(g.size(kEdge));
    std::vector<std::vector<int>> out_edges(static_cast<std::size_t>(nv));
    for (int e = 0; e < ne; ++e) out_edges[static_cast<std::size_t>(g.act(kSrc, e))].push_back(e);
    std::vector<Value> paths;
    std::vector<Value> cur;
    std::function<void(int, std::int64_t)> extend = [&](int v, std::int64_t len) {
        paths.push_back(Value::tuple(cur));
        if (static_cast<std::int64_t>(paths.size()) > cap) {
            throw BoundExceeded("frcat: more than " + std::to_string(cap) + " paths");
        }
        if (max_len >= 0 && len >= max_len) return;
        for (int e : out_edges[static_cast<std::size_t>(v)]) {
            cur.push_back(g.element(kEdge, e));
            extend(g.act(kTgt, e), len + 1);
            cur.pop_back();
        }
    };
    for (int v = 0; v < nv; ++v) {
        cur = {g.element(kVertex, v)};
        extend(v, 0);
    }
    return Copresheaf::from_function(graph_base(), {g.elements(kVertex), std::move(paths)},
                                     [&g](int f, const Value& x) -> Value {
                                         if (f == kSrc) return x[0];
                                         if (f == kTgt) return x.size() == 1 ? x[0] : g.act_value(kTgt, x[x.size() - 1]);
                                         return x;
                                     });
}

}  // namespace

MonadPackage frcat_monad() {
    auto t = std::make_shared<EvalFunctor>();
    t->name = "frcat";
    t->dom = graph_base();
    t->cod = graph_base();
    t->apply_obj = [](const Copresheaf& g, std::int64_t cap) {
        if (!same_base(g.base_ptr(), graph_base())) throw ShapeError("frcat is a functor on graphs");
        if (auto cycle = find_cycle(g)) {
            std::string edges;
            for (int e : *cycle) edges += (edges.empty() ? "" : ", ") + g.element(kEdge, e).str();
            throw InfiniteResult("frcat: the graph has a directed cycle through edges [" + edges +
                                 "], so its free category is infinite");
        }
        return path_graph(g, -1, cap);
    };
    t->apply_graded = [](const Copresheaf& g, std::int64_t grade, std::int64_t cap) { return path_graph(g, grade, cap); };
    t->apply_elem = [](int obj, const Value& v, const ElemFn& h) {
        if (obj == kVertex) return h(kVertex, v);
        std::vector<Value> kids{h(kVertex, v[0])};
        for (std::size_t k = 1; k < v.size(); ++k) kids.push_back(h(kEdge, v[k]));
        return Value::tuple(std::move(kids));
    };
    t->grade = [](int obj, const Value& v) { return obj == kVertex ? 0 : static_cast<std::int64_t>(v.size()) - 1; };
    Functor tf = t;
    auto id = identity_functor(graph_base());
    NatTrans unit{"edge_as_path", id, tf, [](const ObjRef& x, int obj, const Value& v) {
                      if (obj == kVertex) return v;
                      return Value::tuple({x.get().act_value(kSrc, v), v});
                  }};
    NatTrans mult{"flatten", compose_eval(tf, tf), tf, [](const ObjRef&, int obj, const Value& v) {
                      if (obj == kVertex) return v;
                      std::vector<Value> kids{v[0]};
                      for (std::size_t k = 1; k < v.size(); ++k) {
                          const auto& inner = v[k].kids();
                          kids.insert(kids.end(), inner.begin() + 1, inner.end());
                      }
                      return Value::tuple(std::move(kids));
                  }};
    return {"frcat", tf, unit, mult};
}

ComonadPackage category_comonad(const FinCategory& c) {
    auto data = std::make_shared<const PolyComonad>(category_to_comonad(c));
    auto carrier = data->carrier;
    carrier.name = "cat_comonad(" + c.name() + ")";
    auto k = poly_functor(carrier);
    auto id = identity_functor(set_base());
    NatTrans counit{"counit", k, id, [data](const ObjRef&, int, const Value& v) {
                        return v[static_cast<std::size_t>(data->counit[static_cast<std::size_t>(v.tag())])];
                    }};
    NatTrans comult{"comult", k, compose_eval(k, k), [data](const ObjRef&, int, const Value& v) {
                        const auto i = static_cast<std::size_t>(v.tag());
                        std::vector<Value> outer;
                        for (std::size_t f = 0; f < v.size(); ++f) {
                            const int j = data->cod[i][f];
                            std::vector<Value> inner;
                            for (int h : data->comp[i][f]) inner.push_back(v[static_cast<std::size_t>(h)]);
                            outer.push_back(Value::node(j, std::move(inner)));
                        }
                        return Value::node(v.tag(), std::move(outer));
                    }};
    return {carrier.name, k, counit, comult};
}

DistLaw identity_dist_law(const MonadPackage& t) {
    auto k = identity_comonad(t.t->dom);
    NatTrans alpha = retype(identity_nat(t.t), compose_eval(t.t, k.k), compose_eval(k.k, t.t));
    return {"identity/" + t.name, t, k, alpha};
}

DistLaw identity_dist_law(const ComonadPackage& k) {
    auto t = identity_monad(k.k->dom);
    NatTrans alpha = retype(identity_nat(k.k), compose_eval(t.t, k.k), compose_eval(k.k, t.t));
    return {k.name + "/identity", t, k, alpha};
}

DistLaw writer_strength(const FinCategory& c, const FinCategory& monoid) {
    auto t = writer_monad(monoid);
    auto k = category_comonad(c);
    NatTrans alpha{"strength", compose_eval(t.t, k.k), compose_eval(k.k, t.t), [](const ObjRef&, int, const Value& v) {
                       const Value& kv = v[0];
                       std::vector<Value> kids;
                       for (const auto& x : kv.kids()) kids.push_back(Value::tuple({x, v[1]}));
                       return Value::node(kv.tag(), std::move(kids));
                   }};
    return {"strength(" + t.name + "," + k.name + ")", t, k, alpha};
}

}  // namespace kancat
