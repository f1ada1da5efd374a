#include "kancat/funcal.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>

#include "kancat/error.hpp"

namespace kancat {

namespace {
constexpr std::int64_t kNoCap = std::numeric_limits<std::int64_t>::max();
}

ElemFn map_elem_fn(const Copresheaf& a, const Copresheaf& x, const CopresheafMap& m) {
    return [&a, &x, m](int obj, const Value& v) {
        return x.element(obj, m.components[static_cast<std::size_t>(obj)][static_cast<std::size_t>(a.index_of(obj, v))]);
    };
}

struct ObjRef::State {
    std::once_flag once;
    std::optional<Copresheaf> value;
    std::function<Copresheaf()> thunk;
};

ObjRef::ObjRef(Copresheaf x) : state_(std::make_shared<State>()) {
    std::call_once(state_->once, [&] { state_->value = std::move(x); });
}

ObjRef::ObjRef(std::function<Copresheaf()> thunk) : state_(std::make_shared<State>()) {
    state_->thunk = std::move(thunk);
}

const Copresheaf& ObjRef::get() const {
    std::call_once(state_->once, [this] { state_->value = state_->thunk(); });
    return *state_->value;
}

Copresheaf apply_bounded(const EvalFunctor& f, const Copresheaf& x, const Bounds& bounds, bool* truncated) {
    try {
        return f.apply_obj(x, bounds.enum_cap);
    } catch (const InfiniteResult&) {
        if (!f.apply_graded) throw;
        if (truncated) *truncated = true;
        return f.apply_graded(x, bounds.grade_cap, bounds.enum_cap);
    }
}

CopresheafMap apply_mor(const EvalFunctor& f, const Copresheaf& fx, const Copresheaf& fy, const ElemFn& h) {
    CopresheafMap out;
    for (int o = 0; o < static_cast<int>(fx.base().num_objects()); ++o) {
        std::vector<int> comp;
        for (const auto& v : fx.elements(o)) comp.push_back(fy.index_of(o, f.apply_elem(o, v, h)));
        out.components.push_back(std::move(comp));
    }
    return out;
}

// ---------------------------------------------------------------------------
// pra-functors

namespace {

struct PraLayout {
    std::vector<std::vector<int>> slot_objects;  // per index: object of each image slot
    std::vector<std::vector<int>> offsets;       // per index, per object: first slot
};

PraLayout layout_of(const PraFunctor& p) {
    PraLayout l;
    for (const auto& a : p.reps) {
        std::vector<int> slots;
        std::vector<int> offs;
        for (int o = 0; o < static_cast<int>(a.base().num_objects()); ++o) {
            offs.push_back(static_cast<int>(slots.size()));
            slots.insert(slots.end(), a.size(o), o);
        }
        l.slot_objects.push_back(std::move(slots));
        l.offsets.push_back(std::move(offs));
    }
    return l;
}

}  // namespace

Value pra_element(const PraFunctor& p, int i, const Copresheaf& x, const CopresheafMap& m) {
    std::vector<Value> images;
    const auto& a = p.reps.at(static_cast<std::size_t>(i));
    for (int o = 0; o < static_cast<int>(a.base().num_objects()); ++o) {
        for (int v : m.components[static_cast<std::size_t>(o)]) images.push_back(x.element(o, v));
    }
    return Value::node(i, std::move(images));
}

ElemFn pra_element_fn(const PraFunctor& p, const Value& element) {
    const auto& a = p.reps.at(static_cast<std::size_t>(element.tag()));
    std::vector<int> offs;
    int total = 0;
    for (int o = 0; o < static_cast<int>(a.base().num_objects()); ++o) {
        offs.push_back(total);
        total += static_cast<int>(a.size(o));
    }
    return [&a, offs, element](int obj, const Value& v) {
        return element[static_cast<std::size_t>(offs[static_cast<std::size_t>(obj)] + a.index_of(obj, v))];
    };
}

Value pra_identity_element(const PraFunctor& p, int i) {
    const auto& a = p.reps.at(static_cast<std::size_t>(i));
    std::vector<Value> images;
    for (int o = 0; o < static_cast<int>(a.base().num_objects()); ++o) {
        images.insert(images.end(), a.elements(o).begin(), a.elements(o).end());
    }
    return Value::node(i, std::move(images));
}

Functor pra_to_eval(const PraFunctor& p) {
    auto shared = std::make_shared<const PraFunctor>(p);
    auto layout = std::make_shared<const PraLayout>(layout_of(p));
    auto f = std::make_shared<EvalFunctor>();
    f->name = p.name;
    f->dom = p.base;
    f->cod = set_base();
    f->pra = shared;
    f->apply_obj = [shared](const Copresheaf& x, std::int64_t cap) {
        if (!same_base(x.base_ptr(), shared->base)) {
            throw ShapeError("'" + shared->name + "' applied to a copresheaf over '" + x.base().name() + "'");
        }
        std::vector<Value> out;
        for (std::size_t i = 0; i < shared->reps.size(); ++i) {
            for_each_copresheaf_hom(shared->reps[i], x, [&](const CopresheafMap& m) {
                out.push_back(pra_element(*shared, static_cast<int>(i), x, m));
                if (static_cast<std::int64_t>(out.size()) > cap) {
                    throw BoundExceeded("'" + shared->name + "' output exceeds " + std::to_string(cap) + " elements");
                }
                return true;
            });
        }
        return set_of(std::move(out));
    };
    f->apply_elem = [layout](int, const Value& v, const ElemFn& h) {
        const auto& slots = layout->slot_objects.at(static_cast<std::size_t>(v.tag()));
        std::vector<Value> images;
        images.reserve(v.size());
        for (std::size_t s = 0; s < v.size(); ++s) images.push_back(h(slots[s], v[s]));
        return Value::node(v.tag(), std::move(images));
    };
    f->grade = [](int, const Value& v) { return v.tag(); };
    return f;
}

Functor identity_functor(const BaseRef& base) {
    auto f = std::make_shared<EvalFunctor>();
    f->name = "identity";
    f->is_identity = true;
    f->dom = base;
    f->cod = base;
    f->apply_obj = [](const Copresheaf& x, std::int64_t cap) {
        if (static_cast<std::int64_t>(x.total_size()) > cap) throw BoundExceeded("identity: object exceeds cap");
        return x;
    };
    f->apply_elem = [](int obj, const Value& v, const ElemFn& h) { return h(obj, v); };
    return f;
}

namespace {

Copresheaf apply_or_graded(const EvalFunctor& f, const Copresheaf& x, std::int64_t grade, std::int64_t cap) {
    try {
        return f.apply_obj(x, cap);
    } catch (const InfiniteResult&) {
        if (!f.apply_graded) throw;
        return f.apply_graded(x, grade, cap);
    }
}

}  // namespace

Functor compose_eval(const Functor& f, const Functor& g) {
    if (!same_base(g->cod, f->dom)) {
        throw ShapeError("cannot compose '" + f->name + "' after '" + g->name + "': '" + g->name + "' lands in '" +
                         g->cod->name() + "-Set' but '" + f->name + "' starts from '" + f->dom->name() + "-Set'");
    }
    auto out = std::make_shared<EvalFunctor>();
    out->name = f->name + "." + g->name;
    out->dom = g->dom;
    out->cod = f->cod;
    out->apply_obj = [f, g](const Copresheaf& x, std::int64_t cap) { return f->apply_obj(g->apply_obj(x, cap), cap); };
    out->apply_elem = [f, g](int obj, const Value& v, const ElemFn& h) {
        return f->apply_elem(obj, v, [&g, &h](int o, const Value& w) { return g->apply_elem(o, w, h); });
    };
    if (f->apply_graded || g->apply_graded) {
        out->apply_graded = [f, g](const Copresheaf& x, std::int64_t grade, std::int64_t cap) {
            return apply_or_graded(*f, apply_or_graded(*g, x, grade, cap), grade, cap);
        };
    }
    return out;
}

// ---------------------------------------------------------------------------
// natural transformations

ElemFn NatTrans::at(const ObjRef& x) const {
    return [c = component, x](int obj, const Value& v) { return c(x, obj, v); };
}

NatTrans identity_nat(const Functor& f) {
    return {"id_" + f->name, f, f, [](const ObjRef&, int, const Value& v) { return v; }};
}

NatTrans whisker_left(const Functor& f, const NatTrans& nt) {
    NatTrans out;
    out.name = f->name + "(" + nt.name + ")";
    out.source = compose_eval(f, nt.source);
    out.target = compose_eval(f, nt.target);
    out.component = [f, c = nt.component](const ObjRef& x, int obj, const Value& v) {
        return f->apply_elem(obj, v, [&](int o, const Value& w) { return c(x, o, w); });
    };
    return out;
}

NatTrans whisker_right(const NatTrans& nt, const Functor& k) {
    NatTrans out;
    out.name = nt.name + "_" + k->name;
    out.source = compose_eval(nt.source, k);
    out.target = compose_eval(nt.target, k);
    out.component = [k, c = nt.component](const ObjRef& x, int obj, const Value& v) {
        ObjRef kx([k, x] { return k->apply_obj(x.get(), kNoCap); });
        return c(kx, obj, v);
    };
    return out;
}

NatTrans vcomp(const NatTrans& a, const NatTrans& b) {
    if (!same_base(a.target->dom, b.source->dom) || !same_base(a.target->cod, b.source->cod)) {
        throw ShapeError("vcomp: '" + a.name + "' and '" + b.name + "' are not composable");
    }
    NatTrans out;
    out.name = b.name + "*" + a.name;
    out.source = a.source;
    out.target = b.target;
    out.component = [ca = a.component, cb = b.component](const ObjRef& x, int obj, const Value& v) {
        return cb(x, obj, ca(x, obj, v));
    };
    return out;
}

NatTrans retype(const NatTrans& nt, const Functor& source, const Functor& target) {
    if (!same_base(source->dom, nt.source->dom) || !same_base(target->cod, nt.target->cod)) {
        throw ShapeError("retype: '" + nt.name + "' has a different shape");
    }
    NatTrans out = nt;
    out.source = source;
    out.target = target;
    return out;
}

// ---------------------------------------------------------------------------
// law checks

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

std::size_t LawReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.status == CheckStatus::Fail; }));
}

std::size_t LawReport::skipped() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.status == CheckStatus::Skipped; }));
}

std::size_t LawReport::passed() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.status == CheckStatus::Pass; }));
}

std::string LawReport::summary() const {
    std::ostringstream out;
    out << subject << " on " << suite << ": " << passed() << " passed, " << failures() << " failed, " << skipped()
        << " skipped";
    for (const auto& e : entries) {
        if (e.status == CheckStatus::Fail) {
            out << "; first failure: " << e.law << " at " << e.object << ": " << e.detail;
            break;
        }
    }
    return out.str();
}

std::string describe(const Copresheaf& x) {
    if (same_base(x.base_ptr(), set_base())) return "set(" + std::to_string(x.size(0)) + ")";
    if (same_base(x.base_ptr(), graph_base())) {
        return "graph(V=" + std::to_string(x.size(kVertex)) + ",E=" + std::to_string(x.size(kEdge)) + ")";
    }
    std::string out = "copresheaf(";
    for (int o = 0; o < static_cast<int>(x.base().num_objects()); ++o) {
        out += (o ? "," : "") + x.base().object_name(o) + "=" + std::to_string(x.size(o));
    }
    return out + ")";
}

namespace {

// Runs one law at one object; `body` returns a witness on failure.
template <typename Body>
void run_entry(LawReport& report, const std::string& law, const std::string& object, Body&& body) {
    LawEntry entry{law, object, CheckStatus::Pass, ""};
    try {
        std::optional<std::string> witness = body(entry.detail);
        if (witness) {
            entry.status = CheckStatus::Fail;
            entry.detail = *witness;
        }
    } catch (const BoundExceeded& e) {
        entry.status = CheckStatus::Skipped;
        entry.detail = std::string("skipped under cap: ") + e.what();
    } catch (const InfiniteResult& e) {
        entry.status = CheckStatus::Skipped;
        entry.detail = std::string("skipped, infinite: ") + e.what();
    }
    report.entries.push_back(std::move(entry));
}

std::string mismatch(const Value& at, const Value& lhs, const Value& rhs) {
    return "at " + at.str() + ": " + lhs.str() + " != " + rhs.str();
}

// Elementwise comparison of two element-level maps over all elements of fx.
std::optional<std::string> compare_all(const Copresheaf& fx, const std::function<Value(int, const Value&)>& lhs,
                                       const std::function<Value(int, const Value&)>& rhs, std::string& detail) {
    std::size_t n = 0;
    for (int o = 0; o < static_cast<int>(fx.base().num_objects()); ++o) {
        for (const auto& v : fx.elements(o)) {
            const Value l = lhs(o, v);
            const Value r = rhs(o, v);
            if (!(l == r)) return mismatch(v, l, r);
            ++n;
        }
    }
    detail = std::to_string(n) + " elements";
    return std::nullopt;
}

// Up to `limit` morphisms x -> y, evenly spread over the lexicographic list.
std::vector<CopresheafMap> sample_homs(const Copresheaf& x, const Copresheaf& y, std::size_t limit) {
    std::vector<CopresheafMap> all;
    for_each_copresheaf_hom(x, y, [&](const CopresheafMap& m) {
        all.push_back(m);
        return all.size() < 4096;
    });
    if (all.size() <= limit) return all;
    std::vector<CopresheafMap> out;
    for (std::size_t k = 0; k < limit; ++k) out.push_back(all[k * (all.size() - 1) / (limit - 1)]);
    return out;
}

constexpr std::size_t kHomSample = 6;

}  // namespace

LawReport check_functor_laws(const EvalFunctor& f, const TestSuite& suite, const Bounds& bounds) {
    LawReport report{"functor " + f.name, suite.name, {}, {}};
    for (const auto& x : suite.objects) {
        run_entry(report, "identity", describe(x), [&](std::string& detail) -> std::optional<std::string> {
            bool truncated = false;
            const auto fx = apply_bounded(f, x, bounds, &truncated);
            auto id = [](int, const Value& v) { return v; };
            auto r = compare_all(fx, [&](int o, const Value& v) { return f.apply_elem(o, v, id); }, id, detail);
            if (truncated) detail += " (graded <= " + std::to_string(bounds.grade_cap) + ")";
            return r;
        });
    }
    for (const auto& x : suite.objects) {
        for (const auto& y : suite.objects) {
            for (const auto& z : suite.objects) {
                if (x.total_size() + y.total_size() + z.total_size() > static_cast<std::size_t>(bounds.suite_card)) continue;
                const std::string name = describe(x) + "->" + describe(y) + "->" + describe(z);
                run_entry(report, "composition", name, [&](std::string& detail) -> std::optional<std::string> {
                    const auto fx = apply_bounded(f, x, bounds);
                    std::size_t n = 0;
                    for (const auto& h : sample_homs(x, y, kHomSample)) {
                        for (const auto& k : sample_homs(y, z, kHomSample)) {
                            const ElemFn hf = map_elem_fn(x, y, h);
                            const ElemFn kf = map_elem_fn(y, z, k);
                            const ElemFn hk = [&](int o, const Value& v) { return kf(o, hf(o, v)); };
                            for (int o = 0; o < static_cast<int>(fx.base().num_objects()); ++o) {
                                for (const auto& v : fx.elements(o)) {
                                    const Value l = f.apply_elem(o, v, hk);
                                    const Value r = f.apply_elem(o, f.apply_elem(o, v, hf), kf);
                                    if (!(l == r)) return mismatch(v, l, r);
                                    ++n;
                                }
                            }
                        }
                    }
                    detail = std::to_string(n) + " element checks";
                    return std::nullopt;
                });
            }
        }
    }
    return report;
}

LawReport check_naturality(const NatTrans& nt, const TestSuite& suite, const Bounds& bounds) {
    LawReport report{"naturality of " + nt.name, suite.name, {}, {}};
    for (const auto& x : suite.objects) {
        for (const auto& y : suite.objects) {
            if (x.total_size() + y.total_size() > static_cast<std::size_t>(bounds.suite_card)) continue;
            run_entry(report, "naturality", describe(x) + "->" + describe(y),
                      [&](std::string& detail) -> std::optional<std::string> {
                          bool truncated = false;
                          const auto sx = apply_bounded(*nt.source, x, bounds, &truncated);
                          const ObjRef xr(x);
                          const ObjRef yr(y);
                          std::size_t n = 0;
                          for (const auto& h : sample_homs(x, y, kHomSample)) {
                              const ElemFn hf = map_elem_fn(x, y, h);
                              for (int o = 0; o < static_cast<int>(sx.base().num_objects()); ++o) {
                                  for (const auto& v : sx.elements(o)) {
                                      const Value l = nt.target->apply_elem(o, nt(xr, o, v), hf);
                                      const Value r = nt(yr, o, nt.source->apply_elem(o, v, hf));
                                      if (!(l == r)) return mismatch(v, l, r);
                                      ++n;
                                  }
                              }
                          }
                          detail = std::to_string(n) + " element checks";
                          if (truncated) detail += " (graded <= " + std::to_string(bounds.grade_cap) + ")";
                          return std::nullopt;
                      });
        }
    }
    return report;
}

namespace {

void append(LawReport& into, const LawReport& from) {
    into.entries.insert(into.entries.end(), from.entries.begin(), from.entries.end());
}

}  // namespace

LawReport check_monad_laws(const MonadPackage& m, const TestSuite& suite, const Bounds& bounds) {
    LawReport report{"monad " + m.name, suite.name, {}, {}};
    const auto& t = *m.t;
    for (const auto& x : suite.objects) {
        const ObjRef xr(x);
        const std::string name = describe(x);
        run_entry(report, "left-unit", name, [&](std::string& detail) -> std::optional<std::string> {
            const auto tx = apply_bounded(t, x, bounds);
            const ObjRef txr(tx);
            return compare_all(
                tx, [&](int o, const Value& v) { return m.mult(xr, o, m.unit(txr, o, v)); },
                [](int, const Value& v) { return v; }, detail);
        });
        run_entry(report, "right-unit", name, [&](std::string& detail) -> std::optional<std::string> {
            const auto tx = apply_bounded(t, x, bounds);
            const ElemFn eta = m.unit.at(xr);
            return compare_all(
                tx, [&](int o, const Value& v) { return m.mult(xr, o, t.apply_elem(o, v, eta)); },
                [](int, const Value& v) { return v; }, detail);
        });
        run_entry(report, "associativity", name, [&](std::string& detail) -> std::optional<std::string> {
            bool truncated = false;
            const auto tx = apply_bounded(t, x, bounds, &truncated);
            const auto ttx = apply_bounded(t, tx, bounds, &truncated);
            const auto tttx = apply_bounded(t, ttx, bounds, &truncated);
            const ObjRef txr([&] { return t.apply_obj(x, std::numeric_limits<std::int64_t>::max()); });
            const ElemFn mu = m.mult.at(xr);
            auto r = compare_all(
                tttx, [&](int o, const Value& v) { return m.mult(xr, o, m.mult(txr, o, v)); },
                [&](int o, const Value& v) { return m.mult(xr, o, t.apply_elem(o, v, mu)); }, detail);
            if (truncated) detail += " (graded <= " + std::to_string(bounds.grade_cap) + ")";
            return r;
        });
    }
    append(report, check_naturality(m.unit, suite, bounds));
    append(report, check_naturality(m.mult, suite, bounds));
    return report;
}

LawReport check_comonad_pkg_laws(const ComonadPackage& c, const TestSuite& suite, const Bounds& bounds) {
    LawReport report{"comonad " + c.name, suite.name, {}, {}};
    const auto& k = *c.k;
    for (const auto& x : suite.objects) {
        const ObjRef xr(x);
        const ObjRef kxr([&] { return k.apply_obj(x, std::numeric_limits<std::int64_t>::max()); });
        const std::string name = describe(x);
        auto body = [&](auto&& lhs, auto&& rhs) {
            return [&, lhs, rhs](std::string& detail) -> std::optional<std::string> {
                const auto kx = apply_bounded(k, x, bounds);
                return compare_all(kx, lhs, rhs, detail);
            };
        };
        auto id = [](int, const Value& v) { return v; };
        run_entry(report, "left-counit", name,
                  body([&](int o, const Value& v) { return c.counit(kxr, o, c.comult(xr, o, v)); }, id));
        run_entry(report, "right-counit", name,
                  body([&](int o, const Value& v) { return k.apply_elem(o, c.comult(xr, o, v), c.counit.at(xr)); }, id));
        run_entry(report, "coassociativity", name,
                  body([&](int o, const Value& v) { return c.comult(kxr, o, c.comult(xr, o, v)); },
                       [&](int o, const Value& v) { return k.apply_elem(o, c.comult(xr, o, v), c.comult.at(xr)); }));
    }
    append(report, check_naturality(c.counit, suite, bounds));
    append(report, check_naturality(c.comult, suite, bounds));
    return report;
}

LawReport check_dist_laws(const DistLaw& dl, const TestSuite& suite, const Bounds& bounds) {
    LawReport report{"distributive law " + dl.name, suite.name, {}, {}};
    const auto& t = *dl.t.t;
    const auto& k = *dl.k.k;
    const auto& alpha = dl.alpha;
    constexpr auto kAll = std::numeric_limits<std::int64_t>::max();
    for (const auto& x : suite.objects) {
        const ObjRef xr(x);
        const ObjRef kxr([&] { return k.apply_obj(x, kAll); });
        const ObjRef txr([&] { return t.apply_obj(x, kAll); });
        const std::string name = describe(x);
        // α·η_k = k(η)
        run_entry(report, "unit", name, [&](std::string& detail) -> std::optional<std::string> {
            const auto kx = apply_bounded(k, x, bounds);
            return compare_all(
                kx, [&](int o, const Value& v) { return alpha(xr, o, dl.t.unit(kxr, o, v)); },
                [&](int o, const Value& v) { return k.apply_elem(o, v, dl.t.unit.at(xr)); }, detail);
        });
        // α·μ_k = k(μ)·α_t·t(α)
        run_entry(report, "multiplication", name, [&](std::string& detail) -> std::optional<std::string> {
            bool truncated = false;
            const auto kx = apply_bounded(k, x, bounds, &truncated);
            const auto tkx = apply_bounded(t, kx, bounds, &truncated);
            const auto ttkx = apply_bounded(t, tkx, bounds, &truncated);
            auto r = compare_all(
                ttkx, [&](int o, const Value& v) { return alpha(xr, o, dl.t.mult(kxr, o, v)); },
                [&](int o, const Value& v) {
                    const Value inner = t.apply_elem(o, v, alpha.at(xr));
                    return k.apply_elem(o, alpha(txr, o, inner), dl.t.mult.at(xr));
                },
                detail);
            if (truncated) detail += " (graded <= " + std::to_string(bounds.grade_cap) + ")";
            return r;
        });
        // ε_t·α = t(ε)
        run_entry(report, "counit", name, [&](std::string& detail) -> std::optional<std::string> {
            const auto tkx = apply_bounded(t, apply_bounded(k, x, bounds), bounds);
            return compare_all(
                tkx, [&](int o, const Value& v) { return dl.k.counit(txr, o, alpha(xr, o, v)); },
                [&](int o, const Value& v) { return t.apply_elem(o, v, dl.k.counit.at(xr)); }, detail);
        });
        // δ_t·α = k(α)·α_k·t(δ)
        run_entry(report, "comultiplication", name, [&](std::string& detail) -> std::optional<std::string> {
            const auto tkx = apply_bounded(t, apply_bounded(k, x, bounds), bounds);
            return compare_all(
                tkx, [&](int o, const Value& v) { return dl.k.comult(txr, o, alpha(xr, o, v)); },
                [&](int o, const Value& v) {
                    const Value tdelta = t.apply_elem(o, v, dl.k.comult.at(xr));
                    return k.apply_elem(o, alpha(kxr, o, tdelta), alpha.at(xr));
                },
                detail);
        });
    }
    append(report, check_naturality(alpha, suite, bounds));
    return report;
}

}  // namespace kancat
