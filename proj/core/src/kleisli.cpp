#include "kancat/kleisli.hpp"

#include <algorithm>

#include "kancat/builtins.hpp"
#include "kancat/error.hpp"
#include "kancat/kan.hpp"

namespace kancat {

namespace {

struct KleisliData {
    PraFunctor p;
    MonadPackage t;
    std::vector<Copresheaf> images;  // t(A_i)
};

// Values of a pra element grouped by the object of the slot they fill.
std::vector<int> slot_objects(const Copresheaf& a) {
    std::vector<int> out;
    for (int o = 0; o < static_cast<int>(a.base().num_objects()); ++o) out.insert(out.end(), a.size(o), o);
    return out;
}

}  // namespace

WindowedCategory kleisli_subcategory(const PraFunctor& p, const MonadPackage& t, int window, const Bounds& bounds) {
    if (!same_base(t.t->dom, p.base) || !same_base(t.t->cod, p.base)) {
        throw ShapeError("kleisli: monad '" + t.name + "' does not act on " + p.base->name() + "-Set");
    }
    if (window < 0) throw ShapeError("kleisli: negative window");
    auto data = std::make_shared<KleisliData>();
    data->p = p;
    data->t = t;
    const auto n = std::min<std::size_t>(static_cast<std::size_t>(window) + 1, p.reps.size());
    for (std::size_t i = 0; i < n; ++i) {
        try {
            data->images.push_back(t.t->apply_obj(p.reps[i], bounds.enum_cap));
        } catch (const InfiniteResult& e) {
            throw InfiniteResult("kleisli: " + t.name + "(" + p.labels[i] + ") is infinite: " + e.what());
        }
    }
    WindowedCategory w;
    w.name = "kleisli(" + p.name + "," + t.name + ")";
    for (std::size_t i = 0; i < n; ++i) w.objects.push_back(Value::atom(static_cast<std::int64_t>(i)));
    w.window = {{"window", window}};
    w.object_label = [data](const Value& obj) { return data->p.labels.at(static_cast<std::size_t>(obj.tag())); };
    w.hom = [data](const Value& a, const Value& b) {
        const auto i = static_cast<std::size_t>(a.tag());
        const auto j = static_cast<int>(b.tag());
        std::vector<Value> out;
        for_each_copresheaf_hom(data->p.reps[static_cast<std::size_t>(j)], data->images[i], [&](const CopresheafMap& m) {
            out.push_back(pra_element(data->p, j, data->images[i], m));
            return true;
        });
        std::sort(out.begin(), out.end());
        return out;
    };
    w.identity = [data](const Value& a) {
        const auto i = static_cast<std::size_t>(a.tag());
        const auto& rep = data->p.reps[i];
        const ObjRef ref(rep);
        const auto objs = slot_objects(rep);
        const auto id = pra_identity_element(data->p, static_cast<int>(i));
        std::vector<Value> images;
        for (std::size_t s = 0; s < id.size(); ++s) images.push_back(data->t.unit(ref, objs[s], id[s]));
        return Value::node(static_cast<std::int64_t>(i), std::move(images));
    };
    w.compose = [data](const Value& a, const Value&, const Value& c, const Value& f, const Value& g) {
        const auto i = static_cast<std::size_t>(a.tag());
        const ObjRef ref(data->p.reps[i]);
        const auto phi = pra_element_fn(data->p, f);
        const auto objs = slot_objects(data->p.reps[static_cast<std::size_t>(c.tag())]);
        std::vector<Value> images;
        for (std::size_t s = 0; s < g.size(); ++s) {
            const auto ttx = data->t.t->apply_elem(objs[s], g[s], phi);
            images.push_back(data->t.mult(ref, objs[s], ttx));
        }
        return Value::node(c.tag(), std::move(images));
    };
    return w;
}

MonadPackage span_monad(const FinCategory& c) {
    if (!validate_category(c).ok()) throw ShapeError("span_monad: '" + c.name() + "' is not a category");
    auto cat = std::make_shared<const FinCategory>(c);
    auto disc = std::make_shared<const FinCategory>([&] {
        CategoryBuilder b("disc(" + c.name() + ")");
        for (const auto& o : c.object_names()) b.add_object(o);
        return b.build();
    }());
    auto t = std::make_shared<EvalFunctor>();
    t->name = "span(" + c.name() + ")";
    t->dom = disc;
    t->cod = disc;
    t->apply_obj = [cat, disc](const Copresheaf& x, std::int64_t cap) {
        if (!same_base(x.base_ptr(), disc)) throw ShapeError("span monad applied on the wrong base");
        std::vector<std::vector<Value>> elems(cat->num_objects());
        std::int64_t total = 0;
        for (int f = 0; f < static_cast<int>(cat->num_morphisms()); ++f) {
            for (const auto& v : x.elements(cat->dom(f))) {
                elems[static_cast<std::size_t>(cat->cod(f))].push_back(Value::tuple({Value::atom(f), v}));
                if (++total > cap) throw BoundExceeded("span monad output exceeds " + std::to_string(cap));
            }
        }
        return Copresheaf::from_function(disc, std::move(elems), [](int, const Value& v) { return v; });
    };
    t->apply_elem = [cat](int, const Value& v, const ElemFn& h) {
        return Value::tuple({v[0], h(cat->dom(static_cast<int>(v[0].tag())), v[1])});
    };
    auto id = identity_functor(disc);
    NatTrans unit{"unit", id, t, [cat](const ObjRef&, int obj, const Value& x) {
                      return Value::tuple({Value::atom(cat->identity(obj)), x});
                  }};
    NatTrans mult{"mult", compose_eval(t, t), t, [cat](const ObjRef&, int, const Value& v) {
                      const auto g = static_cast<int>(v[0].tag());
                      const auto f = static_cast<int>(v[1][0].tag());
                      return Value::tuple({Value::atom(cat->compose(f, g)), v[1][1]});
                  }};
    return {t->name, t, unit, mult};
}

PraFunctor span_family(const FinCategory& c) { return elts_family(span_monad(c).t->dom); }

PolyFunctor span_monad_recover(const FinCategory& c, const Bounds& bounds) {
    const auto m = span_monad(c);
    const auto p = elts_family(m.t->dom);
    auto carrier = kan_carrier(p, compose_eval(pra_to_eval(p), m.t), bounds).carrier;
    return carrier;
}

}  // namespace kancat
