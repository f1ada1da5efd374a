#include "kancat/kan.hpp"

#include <map>
#include <set>

#include "kancat/builtins.hpp"
#include "kancat/error.hpp"

namespace kancat {

namespace {

Copresheaf model_at(const PraFunctor& p, const EvalFunctor& q, std::size_t i, const Bounds& bounds,
                    bool* truncated) {
    const std::string where = "<" + p.name + "|" + q.name + "> at index " + std::to_string(i) + " (" +
                              p.labels[i] + ")";
    try {
        return apply_bounded(q, p.reps[i], bounds, truncated);
    } catch (const InfiniteResult& e) {
        throw InfiniteResult(where + ": " + e.what());
    } catch (const BoundExceeded& e) {
        throw BoundExceeded(where + ": " + e.what());
    }
}

void check_domain(const PraFunctor& p, const EvalFunctor& q) {
    if (!same_base(q.dom, p.base)) {
        throw ShapeError("<" + p.name + "|" + q.name + ">: '" + q.name + "' starts from '" + q.dom->name() +
                         "-Set' but '" + p.name + "' is over '" + p.base->name() + "'");
    }
}

std::vector<std::string> position_names(const PraFunctor& p) {
    std::set<std::string> seen(p.labels.begin(), p.labels.end());
    bool usable = seen.size() == p.labels.size() && p.labels.size() == p.reps.size();
    for (const auto& l : p.labels) usable = usable && !l.empty();
    if (usable) return p.labels;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < p.reps.size(); ++i) out.push_back(std::to_string(i));
    return out;
}

const Copresheaf& model(const KanResult& k, const Value& element) {
    return k.direction_model.at(static_cast<std::size_t>(element.tag()));
}

Value evaluate_at_identity(const PraFunctor& p, const NatTrans& phi, std::size_t i) {
    return phi(ObjRef(p.reps[i]), 0, pra_identity_element(p, static_cast<int>(i)));
}

void require_finite(const KanResult& k) {
    if (k.truncated) {
        throw InfiniteResult(k.carrier.name + " has infinite directions; use the Kleisli window instead");
    }
}

PolyComonad assemble(const KanResult& k, const NatTrans& eps, const NatTrans& delta) {
    const auto counit = transpose_as_counit(k, kan_transpose(*k.p, eps));
    const auto comult = transpose_as_comult(k, kan_transpose(*k.p, delta));
    return comonad_from_maps(k.carrier.name, k.carrier, counit, comult);
}

}  // namespace

PraFunctor kan_pra(const PraFunctor& p, const Functor& q, const Bounds& bounds) {
    check_domain(p, *q);
    PraFunctor out;
    out.name = "<" + p.name + "|" + q->name + ">";
    out.base = q->cod;
    out.labels = position_names(p);
    for (std::size_t i = 0; i < p.reps.size(); ++i) out.reps.push_back(model_at(p, *q, i, bounds, nullptr));
    return out;
}

KanResult kan_carrier(const PraFunctor& p, const Functor& q, const Bounds& bounds) {
    check_domain(p, *q);
    if (!same_base(q->cod, set_base())) {
        throw ShapeError("<" + p.name + "|" + q->name + ">: '" + q->name + "' must land in Set for a polynomial carrier");
    }
    KanResult k;
    k.p = std::make_shared<const PraFunctor>(p);
    k.q = q;
    k.carrier.name = "<" + p.name + "|" + q->name + ">";
    k.carrier.positions = position_names(p);
    for (std::size_t i = 0; i < p.reps.size(); ++i) {
        auto m = model_at(p, *q, i, bounds, &k.truncated);
        std::vector<std::string> labels;
        for (const auto& v : m.elements(0)) labels.push_back(v.str());
        k.carrier.directions.emplace_back(std::move(labels));
        k.position_index.push_back(static_cast<int>(i));
        k.direction_model.push_back(std::move(m));
    }
    k.provenance = "p=" + p.name + ", q=" + q->name;
    if (k.truncated) k.provenance += ", grade<=" + std::to_string(bounds.grade_cap);
    k.functor = poly_functor(k.carrier);
    return k;
}

PolyFunctor kan_of_sets(const FinSetRep& P, const FinSetRep& Q) {
    PolyFunctor out;
    out.name = std::to_string(P.size) + "y^" + std::to_string(Q.size);
    for (std::size_t i = 0; i < P.size; ++i) {
        out.positions.push_back(P.label(i));
        out.directions.push_back(Q);
    }
    return out;
}

NatTrans kan_unit(const KanResult& k) {
    auto shared = std::make_shared<const KanResult>(k);
    NatTrans out;
    out.name = "unit" + k.carrier.name;
    out.source = pra_to_eval(*k.p);
    out.target = compose_eval(k.functor, k.q);
    out.component = [shared](const ObjRef&, int, const Value& v) {
        const auto phi = pra_element_fn(*shared->p, v);
        std::vector<Value> images;
        for (const auto& d : model(*shared, v).elements(0)) images.push_back(shared->q->apply_elem(0, d, phi));
        return Value::node(v.tag(), std::move(images));
    };
    return out;
}

YonedaTranspose kan_transpose(const PraFunctor& p, const NatTrans& phi) {
    if (!same_base(phi.source->dom, p.base)) throw ShapeError("transpose: '" + phi.name + "' is not defined on " + p.name);
    YonedaTranspose t;
    for (std::size_t i = 0; i < p.reps.size(); ++i) t.elements.push_back(evaluate_at_identity(p, phi, i));
    return t;
}

NatTrans transpose_to_kan(const KanResult& k, const Functor& r, const YonedaTranspose& t) {
    if (!same_base(r->dom, set_base())) throw ShapeError("transpose: '" + r->name + "' is not a functor on Set");
    if (t.elements.size() != k.direction_model.size()) throw ShapeError("transpose: wrong number of elements");
    auto shared = std::make_shared<const KanResult>(k);
    NatTrans out;
    out.name = "transpose" + k.carrier.name;
    out.source = k.functor;
    out.target = r;
    out.component = [shared, r, rho = t.elements](const ObjRef&, int, const Value& w) {
        const auto& m = model(*shared, w);
        return r->apply_elem(0, rho[static_cast<std::size_t>(w.tag())],
                             [&](int, const Value& d) { return w[static_cast<std::size_t>(m.index_of(0, d))]; });
    };
    return out;
}

NatTrans transpose_inv(const KanResult& k, const Functor& r, const YonedaTranspose& t) {
    if (!same_base(r->dom, set_base())) throw ShapeError("transpose: '" + r->name + "' is not a functor on Set");
    if (t.elements.size() != k.direction_model.size()) throw ShapeError("transpose: wrong number of elements");
    auto shared = std::make_shared<const KanResult>(k);
    NatTrans out;
    out.name = "transpose_inv" + k.carrier.name;
    out.source = pra_to_eval(*k.p);
    out.target = compose_eval(r, k.q);
    out.component = [shared, r, rho = t.elements](const ObjRef&, int, const Value& v) {
        const auto phi = pra_element_fn(*shared->p, v);
        return r->apply_elem(0, rho[static_cast<std::size_t>(v.tag())],
                             [&](int, const Value& d) { return shared->q->apply_elem(0, d, phi); });
    };
    return out;
}

PolyMap transpose_as_counit(const KanResult& k, const YonedaTranspose& t) {
    PolyMap m;
    for (std::size_t i = 0; i < t.elements.size(); ++i) {
        const auto idx = k.direction_model[i].find(0, t.elements[i]);
        if (!idx) throw LawFailure("counit transpose at " + k.carrier.positions[i] + " is not a direction");
        m.on_positions.push_back(0);
        m.on_directions.push_back({*idx});
    }
    return m;
}

CompositeMap transpose_as_comult(const KanResult& k, const YonedaTranspose& t) {
    CompositeMap out;
    const auto n = static_cast<std::int64_t>(k.carrier.num_positions());
    for (std::size_t i = 0; i < t.elements.size(); ++i) {
        const auto& rho = t.elements[i];
        const auto& m = k.direction_model[i];
        auto bad = [&] { return LawFailure("comultiplication transpose at " + k.carrier.positions[i] + " is malformed: " + rho.str()); };
        if (rho.is_atom() || rho.tag() < 0 || rho.tag() >= n) throw bad();
        CompositeEntry e;
        e.outer = static_cast<int>(rho.tag());
        if (rho.size() != k.carrier.arity(e.outer)) throw bad();
        for (const auto& kid : rho.kids()) {
            if (kid.is_atom() || kid.tag() < 0 || kid.tag() >= n) throw bad();
            e.assignment.push_back(static_cast<int>(kid.tag()));
            std::vector<int> back;
            for (const auto& d : kid.kids()) {
                const auto idx = m.find(0, d);
                if (!idx) throw bad();
                back.push_back(*idx);
            }
            e.back.push_back(std::move(back));
        }
        out.push_back(std::move(e));
    }
    return out;
}

PraComposite pra_compose(const PraFunctor& p, const Functor& k, const Bounds& bounds) {
    const auto P = pra_to_eval(p);
    if (k->is_identity) {
        if (!same_base(k->dom, p.base)) throw ShapeError("pra_compose: identity on the wrong base");
        PraComposite out{p, identity_nat(P), identity_nat(P)};
        out.to_pra = retype(out.to_pra, compose_eval(P, k), P);
        out.from_pra = retype(out.from_pra, P, compose_eval(P, k));
        return out;
    }
    if (!k->pra || !same_base(p.base, set_base()) || !same_base(k->pra->base, set_base()) ||
        !same_base(k->cod, set_base())) {
        throw ShapeError("pra_compose: '" + p.name + "." + k->name +
                         "' needs the identity or a pra-functor on Set after a pra-functor on Set");
    }
    const auto& kp = *k->pra;
    struct Layout {
        std::map<std::vector<int>, int> index;   // (i, c_0, ..., c_{n-1}) -> composite index
        std::vector<std::vector<int>> key;       // inverse
    };
    auto layout = std::make_shared<Layout>();
    PraComposite out;
    out.pra.name = p.name + "." + k->name;
    out.pra.base = set_base();
    const auto names = position_names(kp);
    const auto outer_names = position_names(p);
    for (std::size_t i = 0; i < p.reps.size(); ++i) {
        const auto& a = p.reps[i].elements(0);
        std::vector<int> c(a.size(), 0);
        while (true) {
            if (kp.reps.empty() && !a.empty()) break;
            std::vector<Value> elems;
            std::string label = outer_names[i] + "[";
            for (std::size_t s = 0; s < a.size(); ++s) {
                for (const auto& b : kp.reps[static_cast<std::size_t>(c[s])].elements(0)) elems.push_back(Value::tuple({a[s], b}));
                label += (s ? "," : "") + names[static_cast<std::size_t>(c[s])];
            }
            std::vector<int> key{static_cast<int>(i)};
            key.insert(key.end(), c.begin(), c.end());
            layout->index.emplace(key, static_cast<int>(out.pra.reps.size()));
            layout->key.push_back(key);
            out.pra.labels.push_back(label + "]");
            out.pra.reps.push_back(set_of(std::move(elems)));
            if (static_cast<std::int64_t>(out.pra.reps.size()) > bounds.enum_cap) {
                throw BoundExceeded("pra_compose: " + out.pra.name + " has more than " + std::to_string(bounds.enum_cap) +
                                    " representing objects");
            }
            std::size_t s = a.size();
            while (s > 0 && c[s - 1] + 1 == static_cast<int>(kp.reps.size())) c[--s] = 0;
            if (s == 0) break;
            ++c[s - 1];
        }
    }
    const auto composite = compose_eval(P, k);
    const auto pra = pra_to_eval(out.pra);
    out.to_pra.name = "to_pra";
    out.to_pra.source = composite;
    out.to_pra.target = pra;
    out.to_pra.component = [layout](const ObjRef&, int, const Value& v) {
        std::vector<int> key{static_cast<int>(v.tag())};
        std::vector<Value> images;
        for (const auto& kv : v.kids()) {
            key.push_back(static_cast<int>(kv.tag()));
            images.insert(images.end(), kv.kids().begin(), kv.kids().end());
        }
        return Value::node(layout->index.at(key), std::move(images));
    };
    auto sizes = std::make_shared<std::vector<std::size_t>>();
    for (const auto& r : kp.reps) sizes->push_back(r.size(0));
    out.from_pra.name = "from_pra";
    out.from_pra.source = pra;
    out.from_pra.target = composite;
    out.from_pra.component = [layout, sizes](const ObjRef&, int, const Value& v) {
        const auto& key = layout->key.at(static_cast<std::size_t>(v.tag()));
        std::vector<Value> outer;
        std::size_t at = 0;
        for (std::size_t s = 1; s < key.size(); ++s) {
            const auto n = (*sizes)[static_cast<std::size_t>(key[s])];
            outer.push_back(Value::node(key[s], std::vector<Value>(v.kids().begin() + static_cast<std::ptrdiff_t>(at),
                                                                   v.kids().begin() + static_cast<std::ptrdiff_t>(at + n))));
            at += n;
        }
        return Value::node(key[0], std::move(outer));
    };
    return out;
}

PolyComonad density_comonad(const PraFunctor& p, const Bounds& bounds) {
    const auto P = pra_to_eval(p);
    const auto k = kan_carrier(p, P, bounds);
    require_finite(k);
    const auto eta = kan_unit(k);
    // ε ↔ id_p ; δ ↔ (L η)·η
    return assemble(k, identity_nat(P), vcomp(eta, whisker_left(k.functor, eta)));
}

PolyComonad cmd_left(const PraFunctor& p, const ComonadPackage& c, const Bounds& bounds) {
    const auto P = pra_to_eval(p);
    const auto pk = pra_compose(p, c.k, bounds);
    const auto k = kan_carrier(pk.pra, P, bounds);
    require_finite(k);
    const auto& L = k.functor;
    const auto eta = kan_unit(k);  // pk ⇒ L p
    // ε ↔ pk ≅ p k ⇒ p
    const auto eps = vcomp(pk.from_pra, whisker_left(P, c.counit));
    // δ ↔ pk ≅ p k ⇒ p k k ≅ (pk) k ⇒ L p k ≅ L (pk) ⇒ L L p
    auto delta = vcomp(pk.from_pra, whisker_left(P, c.comult));
    delta = vcomp(delta, whisker_right(pk.to_pra, c.k));
    delta = vcomp(delta, whisker_right(eta, c.k));
    delta = vcomp(delta, whisker_left(L, pk.to_pra));
    delta = vcomp(delta, whisker_left(L, eta));
    return assemble(k, eps, delta);
}

PolyComonad cmd_right(const PraFunctor& p, const MonadPackage& t, const Bounds& bounds) {
    const auto P = pra_to_eval(p);
    const auto k = kan_carrier(p, compose_eval(P, t.t), bounds);
    require_finite(k);
    const auto& L = k.functor;
    const auto eta = kan_unit(k);  // p ⇒ L p t
    // ε ↔ p η_t
    const auto eps = whisker_left(P, t.unit);
    // δ ↔ p ⇒ L p t ⇒ L L p t t ⇒ L L p t
    auto delta = vcomp(eta, whisker_left(L, whisker_right(eta, t.t)));
    delta = vcomp(delta, whisker_left(compose_eval(L, compose_eval(L, P)), t.mult));
    return assemble(k, eps, delta);
}

PolyComonad cmd_dist(const PraFunctor& p, const DistLaw& dl, const Bounds& bounds) {
    const auto P = pra_to_eval(p);
    const auto& t = dl.t;
    const auto& c = dl.k;
    const auto pk = pra_compose(p, c.k, bounds);
    const auto k = kan_carrier(pk.pra, compose_eval(P, t.t), bounds);
    require_finite(k);
    const auto& L = k.functor;
    const auto eta = kan_unit(k);  // pk ⇒ L p t
    // ε ↔ pk ≅ p k ⇒ p ⇒ p t
    const auto eps = vcomp(vcomp(pk.from_pra, whisker_left(P, c.counit)), whisker_left(P, t.unit));
    // δ ↔ pk ≅ p k ⇒ p k k ≅ (pk) k ⇒ L p t k ⇒ L p k t ≅ L (pk) t ⇒ L L p t t ⇒ L L p t
    auto delta = vcomp(pk.from_pra, whisker_left(P, c.comult));
    delta = vcomp(delta, whisker_right(pk.to_pra, c.k));
    delta = vcomp(delta, whisker_right(eta, c.k));
    delta = vcomp(delta, whisker_left(L, whisker_left(P, dl.alpha)));
    delta = vcomp(delta, whisker_left(L, whisker_right(pk.to_pra, t.t)));
    delta = vcomp(delta, whisker_left(L, whisker_right(eta, t.t)));
    delta = vcomp(delta, whisker_left(compose_eval(L, compose_eval(L, P)), t.mult));
    return assemble(k, eps, delta);
}

PolyMap kan_precompose(const KanResult& to_q, const KanResult& to_q2, const NatTrans& psi) {
    if (!same_base(to_q.p->base, to_q2.p->base) || to_q.p->reps.size() != to_q2.p->reps.size()) {
        throw ShapeError("kan_precompose: carriers come from different pra-functors");
    }
    // ⟨p|q⟩ → ⟨p|q2⟩ ↔ p ⇒ ⟨p|q2⟩ q2 ⇒ ⟨p|q2⟩ q
    const auto phi = vcomp(kan_unit(to_q2), whisker_left(to_q2.functor, psi));
    const auto t = kan_transpose(*to_q.p, phi);
    PolyMap m;
    for (std::size_t i = 0; i < t.elements.size(); ++i) {
        const auto& rho = t.elements[i];
        m.on_positions.push_back(static_cast<int>(rho.tag()));
        std::vector<int> dirs;
        for (const auto& d : rho.kids()) dirs.push_back(to_q.direction_model[i].index_of(0, d));
        m.on_directions.push_back(std::move(dirs));
    }
    return m;
}

namespace {

template <typename Body>
void record(LawReport& report, const std::string& law, const std::string& object, Body&& body) {
    LawEntry e{law, object, CheckStatus::Pass, ""};
    try {
        if (auto failure = body()) {
            e.status = CheckStatus::Fail;
            e.detail = *failure;
        }
    } catch (const BoundExceeded& ex) {
        e.status = CheckStatus::Skipped;
        e.detail = ex.what();
    } catch (const InfiniteResult& ex) {
        e.status = CheckStatus::Skipped;
        e.detail = ex.what();
    }
    report.entries.push_back(std::move(e));
}

PraFunctor as_set_pra(const KanResult& k) {
    PraFunctor out;
    out.name = k.carrier.name;
    out.base = set_base();
    out.labels = k.carrier.positions;
    out.reps = k.direction_model;
    return out;
}

}  // namespace

LawReport along_composites_check(const PraFunctor& p, const Functor& q, const Functor& q2, const Bounds& bounds) {
    LawReport report;
    report.subject = "<<" + p.name + "|" + q->name + ">|" + q2->name + "> vs <" + p.name + "|" + q2->name + "." +
                     q->name + ">";
    const auto suite = default_suite(p.base, bounds);
    report.suite = suite.name;
    const auto inner = kan_carrier(p, q, bounds);
    const auto nested = kan_carrier(as_set_pra(inner), q2, bounds);
    const auto direct = kan_carrier(p, compose_eval(q2, q), bounds);
    for (std::size_t i = 0; i < p.reps.size(); ++i) {
        record(report, "directions", inner.carrier.positions[i], [&]() -> std::optional<std::string> {
            const auto& a = nested.direction_model[i].elements(0);
            const auto& b = direct.direction_model[i].elements(0);
            if (a == b) return std::nullopt;
            return std::to_string(a.size()) + " nested directions vs " + std::to_string(b.size()) + " direct";
        });
    }
    const auto eta_nested = vcomp(kan_unit(inner), whisker_right(kan_unit(nested), q));
    const auto eta_direct = kan_unit(direct);
    for (const auto& x : suite.objects) {
        record(report, "unit", describe(x), [&]() -> std::optional<std::string> {
            const auto px = apply_bounded(*eta_direct.source, x, bounds);
            const ObjRef ref(x);
            for (const auto& v : px.elements(0)) {
                const auto a = eta_nested(ref, 0, v);
                const auto b = eta_direct(ref, 0, v);
                if (a != b) return "at " + v.str() + ": " + a.str() + " vs " + b.str();
            }
            return std::nullopt;
        });
    }
    const auto with_id = kan_pra(p, identity_functor(p.base), bounds);
    for (std::size_t i = 0; i < p.reps.size(); ++i) {
        record(report, "identity", with_id.labels[i], [&]() -> std::optional<std::string> {
            if (with_id.reps[i] == p.reps[i]) return std::nullopt;
            return "representing object changed under <-|id>";
        });
    }
    return report;
}

LawReport contravariant_functoriality_check(const PraFunctor& p, const Bounds& bounds) {
    LawReport report;
    report.subject = "functoriality of <" + p.name + "|-> along id => maybe => powerset";
    report.suite = "carrier maps";
    const auto r = pra_to_eval(p);
    const auto maybe = maybe_monad();
    const auto q0 = r;
    const auto q1 = compose_eval(maybe.t, r);
    const auto q2 = compose_eval(powerset_monad().t, r);
    const auto psi1 = retype(whisker_right(maybe.unit, r), q0, q1);
    const auto psi2 = whisker_right(maybe_to_powerset(), r);
    std::vector<KanResult> ks;
    for (const auto& q : {q0, q1, q2}) ks.push_back(kan_carrier(p, q, bounds));
    for (const auto& k : ks) {
        record(report, "identity", k.carrier.name, [&]() -> std::optional<std::string> {
            const auto m = kan_precompose(k, k, identity_nat(k.q));
            if (poly_map_equal(k.carrier, k.carrier, m, identity_poly_map(k.carrier))) return std::nullopt;
            return "identity does not induce the identity carrier map";
        });
    }
    record(report, "composite", ks[2].carrier.name, [&]() -> std::optional<std::string> {
        const auto m1 = kan_precompose(ks[1], ks[0], psi1);
        const auto m2 = kan_precompose(ks[2], ks[1], psi2);
        const auto m12 = kan_precompose(ks[2], ks[0], vcomp(psi1, psi2));
        if (!poly_map_valid(ks[1].carrier, ks[0].carrier, m1) || !poly_map_valid(ks[2].carrier, ks[1].carrier, m2)) {
            return "induced map is not a polynomial map";
        }
        if (poly_map_equal(ks[2].carrier, ks[0].carrier, m12, compose_poly_maps(m2, m1))) return std::nullopt;
        return "composite does not induce the composite carrier map";
    });
    report.assumptions.push_back("accessibility of the functors involved is assumed");
    return report;
}

}  // namespace kancat
