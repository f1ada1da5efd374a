#include "kancat/select.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "kancat/error.hpp"

namespace kancat {

namespace {

// All choices of (a, f : c_a -> d_b) per direction b of the target, in
// lexicographic order of the encoded tuples.
std::vector<Value> enumerate_homs(const FinCategory& c, const std::vector<int>& src, const std::vector<int>& dst,
                                  std::int64_t cap, std::int64_t* budget) {
    std::vector<std::vector<Value>> options(dst.size());
    for (std::size_t b = 0; b < dst.size(); ++b) {
        for (std::size_t a = 0; a < src.size(); ++a) {
            for (int f : c.hom(src[a], dst[b])) {
                options[b].push_back(Value::tuple({Value::atom(static_cast<std::int64_t>(a)), Value::atom(f)}));
            }
        }
        if (options[b].empty()) return {};
        std::sort(options[b].begin(), options[b].end());
    }
    std::vector<Value> out;
    std::vector<std::size_t> pick(dst.size(), 0);
    while (true) {
        std::vector<Value> kids;
        for (std::size_t b = 0; b < dst.size(); ++b) kids.push_back(options[b][pick[b]]);
        out.push_back(Value::tuple(std::move(kids)));
        if (budget && --*budget < 0) {
            throw BoundExceeded("selection category has more than " + std::to_string(cap) + " morphisms (morphism_cap)");
        }
        std::size_t s = dst.size();
        while (s > 0 && pick[s - 1] + 1 == options[s - 1].size()) pick[--s] = 0;
        if (s == 0) break;
        ++pick[s - 1];
    }
    return out;
}

std::string object_name(const FinCategory& c, const PolyFunctor& p, int pos, const std::vector<int>& assign) {
    std::string out = p.positions[static_cast<std::size_t>(pos)] + "(";
    for (std::size_t a = 0; a < assign.size(); ++a) out += (a ? "," : "") + c.object_name(assign[a]);
    return out + ")";
}

std::string morphism_name(const FinCategory& c, const std::string& src, const std::string& dst, const Value& d) {
    std::string out = src + "->" + dst + ":[";
    for (std::size_t b = 0; b < d.size(); ++b) {
        out += (b ? "," : "") + std::to_string(d[b][0].tag()) + "/" + c.morphism(static_cast<int>(d[b][1].tag())).name;
    }
    return out + "]";
}

bool valid_descriptor(const FinCategory& c, const std::vector<int>& src, const std::vector<int>& dst, const Value& d) {
    if (d.is_atom() || d.size() != dst.size()) return false;
    for (std::size_t b = 0; b < d.size(); ++b) {
        const auto a = d[b][0].tag();
        const auto f = d[b][1].tag();
        if (a < 0 || a >= static_cast<std::int64_t>(src.size())) return false;
        if (f < 0 || f >= static_cast<std::int64_t>(c.num_morphisms())) return false;
        if (c.dom(static_cast<int>(f)) != src[static_cast<std::size_t>(a)] || c.cod(static_cast<int>(f)) != dst[b]) return false;
    }
    return true;
}

int find_hom(const Selection& s, int x, int y, const Value& d) {
    for (int m : s.category.hom(x, y)) {
        if (s.descriptor[static_cast<std::size_t>(m)] == d) return m;
    }
    return -1;
}

int find_object(const Selection& s, int pos, const std::vector<int>& assign) {
    for (std::size_t o = 0; o < s.position.size(); ++o) {
        if (s.position[o] == pos && s.assignment[o] == assign) return static_cast<int>(o);
    }
    return -1;
}

}  // namespace

Value reindex_compose(const FinCategory& c, const Value& x, const Value& y) {
    std::vector<Value> kids;
    kids.reserve(y.size());
    for (std::size_t b = 0; b < y.size(); ++b) {
        const auto& [mid, g] = std::pair{y[b][0].tag(), y[b][1].tag()};
        const auto& xa = x[static_cast<std::size_t>(mid)];
        kids.push_back(Value::tuple({xa[0], Value::atom(c.compose(static_cast<int>(xa[1].tag()), static_cast<int>(g)))}));
    }
    return Value::tuple(std::move(kids));
}

Selection build_selection(const FinCategory& c, const PolyFunctor& p, const Bounds& bounds) {
    const auto report = validate_category(c);
    if (!report.ok()) throw ShapeError("selection: '" + c.name() + "' is not a category: " + report.summary());
    const auto ob = static_cast<std::int64_t>(c.num_objects());
    const auto count = poly_cardinality(p, ob);
    if (count > bounds.object_cap) {
        throw BoundExceeded("selection category of " + c.name() + " and " + p.str() + " has " + std::to_string(count) +
                            " objects (object_cap=" + std::to_string(bounds.object_cap) + ")");
    }
    Selection s;
    s.poly = p;
    std::vector<std::string> names;
    for (int i = 0; i < static_cast<int>(p.num_positions()); ++i) {
        std::vector<int> assign(p.arity(i), 0);
        if (ob == 0 && !assign.empty()) continue;
        while (true) {
            s.position.push_back(i);
            s.assignment.push_back(assign);
            names.push_back(object_name(c, p, i, assign));
            std::size_t k = assign.size();
            while (k > 0 && assign[k - 1] + 1 == ob) assign[--k] = 0;
            if (k == 0) break;
            ++assign[k - 1];
        }
    }
    const auto n = s.position.size();
    std::vector<Morphism> morphisms;
    std::vector<std::vector<std::pair<Value, int>>> homs(n * n);
    std::int64_t budget = bounds.morphism_cap;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            for (auto& d : enumerate_homs(c, s.assignment[x], s.assignment[y], bounds.morphism_cap, &budget)) {
                const int id = static_cast<int>(morphisms.size());
                morphisms.push_back({morphism_name(c, names[x], names[y], d), static_cast<int>(x), static_cast<int>(y)});
                homs[x * n + y].emplace_back(d, id);
                s.descriptor.push_back(std::move(d));
            }
        }
    }
    std::vector<int> identities;
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<Value> kids;
        for (std::size_t a = 0; a < s.assignment[x].size(); ++a) {
            kids.push_back(Value::tuple({Value::atom(static_cast<std::int64_t>(a)), Value::atom(c.identity(s.assignment[x][a]))}));
        }
        const Value d = Value::tuple(std::move(kids));
        const auto& list = homs[x * n + x];
        const auto it = std::find_if(list.begin(), list.end(), [&](const auto& e) { return e.first == d; });
        identities.push_back(it->second);
    }
    const auto m = morphisms.size();
    std::vector<int> table(m * m, -1);
    for (std::size_t f = 0; f < m; ++f) {
        const auto x = static_cast<std::size_t>(morphisms[f].dom);
        const auto y = static_cast<std::size_t>(morphisms[f].cod);
        for (std::size_t z = 0; z < n; ++z) {
            const auto& targets = homs[x * n + z];
            for (const auto& [dg, g] : homs[y * n + z]) {
                const Value d = reindex_compose(c, s.descriptor[f], dg);
                const auto it = std::lower_bound(targets.begin(), targets.end(), d,
                                                 [](const auto& e, const Value& v) { return e.first < v; });
                if (it != targets.end() && it->first == d) table[f * m + static_cast<std::size_t>(g)] = it->second;
            }
        }
    }
    s.category = FinCategory("S(" + c.name() + "," + p.str() + ")", std::move(names), std::move(morphisms),
                             std::move(identities), std::move(table));
    return s;
}

FinCategory selection_category(const FinCategory& c, const PolyFunctor& p, const Bounds& bounds) {
    return build_selection(c, p, bounds).category;
}

std::vector<std::string> validate_functor(const CatFunctor& f) {
    std::vector<std::string> out;
    const auto& s = f.source;
    const auto& t = f.target;
    if (f.on_objects.size() != s.num_objects() || f.on_morphisms.size() != s.num_morphisms()) {
        out.push_back("functor tables have the wrong size");
        return out;
    }
    for (int o : f.on_objects) {
        if (o < 0 || o >= static_cast<int>(t.num_objects())) {
            out.push_back("object image out of range");
            return out;
        }
    }
    for (int g : f.on_morphisms) {
        if (g < 0 || g >= static_cast<int>(t.num_morphisms())) {
            out.push_back("morphism image out of range");
            return out;
        }
    }
    auto F = [&](int g) { return f.on_morphisms[static_cast<std::size_t>(g)]; };
    auto Fo = [&](int o) { return f.on_objects[static_cast<std::size_t>(o)]; };
    for (int g = 0; g < static_cast<int>(s.num_morphisms()); ++g) {
        if (t.dom(F(g)) != Fo(s.dom(g)) || t.cod(F(g)) != Fo(s.cod(g))) {
            out.push_back("F(" + s.morphism(g).name + ") has the wrong domain or codomain");
        }
    }
    for (int o = 0; o < static_cast<int>(s.num_objects()); ++o) {
        if (F(s.identity(o)) != t.identity(Fo(o))) out.push_back("F does not preserve id_" + s.object_name(o));
    }
    for (int g = 0; g < static_cast<int>(s.num_morphisms()); ++g) {
        for (int h : s.out_arrows(s.cod(g))) {
            const int gh = s.compose(g, h);
            if (gh < 0) continue;
            if (t.compose(F(g), F(h)) != F(gh)) {
                out.push_back("F does not preserve " + s.morphism(g).name + ";" + s.morphism(h).name);
            }
        }
    }
    return out;
}

CatFunctor identity_cat_functor(const FinCategory& c) {
    CatFunctor f{c, c, {}, {}};
    for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) f.on_objects.push_back(o);
    for (int g = 0; g < static_cast<int>(c.num_morphisms()); ++g) f.on_morphisms.push_back(g);
    return f;
}

CatFunctor compose_cat_functors(const CatFunctor& f, const CatFunctor& g) {
    if (!(f.target == g.source)) throw ShapeError("functors are not composable");
    CatFunctor out{f.source, g.target, {}, {}};
    for (int o : f.on_objects) out.on_objects.push_back(g.on_objects[static_cast<std::size_t>(o)]);
    for (int m : f.on_morphisms) out.on_morphisms.push_back(g.on_morphisms[static_cast<std::size_t>(m)]);
    return out;
}

bool same_tables(const CatFunctor& f, const CatFunctor& g) {
    return f.source == g.source && f.target == g.target && f.on_objects == g.on_objects &&
           f.on_morphisms == g.on_morphisms;
}

CatFunctor to_terminal(const FinCategory& c) {
    return {c, terminal_category(), std::vector<int>(c.num_objects(), 0), std::vector<int>(c.num_morphisms(), 0)};
}

CatFunctor functor_from_names(const FinCategory& source, const FinCategory& target,
                              const std::vector<std::pair<std::string, std::string>>& objects,
                              const std::vector<std::pair<std::string, std::string>>& morphisms) {
    CatFunctor f{source, target, std::vector<int>(source.num_objects(), -1), std::vector<int>(source.num_morphisms(), -1)};
    for (const auto& [a, b] : objects) f.on_objects[static_cast<std::size_t>(source.object_index(a))] = target.object_index(b);
    for (int o = 0; o < static_cast<int>(source.num_objects()); ++o) {
        if (f.on_objects[static_cast<std::size_t>(o)] < 0) throw LookupError("no image for object " + source.object_name(o));
        f.on_morphisms[static_cast<std::size_t>(source.identity(o))] = target.identity(f.on_objects[static_cast<std::size_t>(o)]);
    }
    for (const auto& [a, b] : morphisms) {
        f.on_morphisms[static_cast<std::size_t>(source.morphism_index(a))] = target.morphism_index(b);
    }
    for (int g = 0; g < static_cast<int>(source.num_morphisms()); ++g) {
        if (f.on_morphisms[static_cast<std::size_t>(g)] < 0) throw LookupError("no image for morphism " + source.morphism(g).name);
    }
    return f;
}

CatFunctor selection_functor(const CatFunctor& f, const PolyFunctor& p, const Bounds& bounds) {
    const auto problems = validate_functor(f);
    if (!problems.empty()) throw ShapeError("selection_functor: not a functor: " + problems.front());
    const auto s = build_selection(f.source, p, bounds);
    const auto t = build_selection(f.target, p, bounds);
    CatFunctor out{s.category, t.category, {}, {}};
    for (std::size_t o = 0; o < s.position.size(); ++o) {
        std::vector<int> image;
        for (int c : s.assignment[o]) image.push_back(f.on_objects[static_cast<std::size_t>(c)]);
        out.on_objects.push_back(find_object(t, s.position[o], image));
    }
    for (std::size_t m = 0; m < s.descriptor.size(); ++m) {
        const auto& d = s.descriptor[m];
        std::vector<Value> kids;
        for (const auto& k : d.kids()) {
            kids.push_back(Value::tuple({k[0], Value::atom(f.on_morphisms[static_cast<std::size_t>(k[1].tag())])}));
        }
        const auto& mor = s.category.morphism(static_cast<int>(m));
        out.on_morphisms.push_back(find_hom(t, out.on_objects[static_cast<std::size_t>(mor.dom)],
                                            out.on_objects[static_cast<std::size_t>(mor.cod)], Value::tuple(std::move(kids))));
    }
    return out;
}

std::vector<Value> ProfData::het(int x, int y) const {
    return enumerate_homs(base, left.assignment.at(static_cast<std::size_t>(x)),
                          right.assignment.at(static_cast<std::size_t>(y)), 0, nullptr);
}

Value ProfData::act_left(int g, const Value& h) const {
    return reindex_compose(base, left.descriptor.at(static_cast<std::size_t>(g)), h);
}

Value ProfData::act_right(const Value& h, int k) const {
    return reindex_compose(base, h, right.descriptor.at(static_cast<std::size_t>(k)));
}

ProfData selection_profunctor(const FinCategory& c, const PolyFunctor& p, const PolyFunctor& q, const Bounds& bounds) {
    return {p, q, build_selection(c, p, bounds), build_selection(c, q, bounds), c};
}

LawReport check_profunctor(const ProfData& d, const Bounds& bounds) {
    LawReport report;
    report.subject = "profunctor S(" + d.base.name() + "; " + d.p.str() + ", " + d.q.str() + ")";
    report.suite = "all heteromorphisms";
    std::map<std::string, std::string> failures;
    std::int64_t budget = bounds.enum_cap;
    bool exhausted = false;
    auto fail = [&](const std::string& law, const std::string& msg) { failures.emplace(law, msg); };
    const auto& L = d.left.category;
    const auto& R = d.right.category;
    const int nl = static_cast<int>(L.num_objects());
    const int nr = static_cast<int>(R.num_objects());
    for (int x = 0; x < nl && !exhausted; ++x) {
        for (int y = 0; y < nr && !exhausted; ++y) {
            for (const auto& h : d.het(x, y)) {
                if ((budget -= 1) < 0) {
                    exhausted = true;
                    break;
                }
                const std::string at = L.object_name(x) + " -> " + R.object_name(y) + " via " + h.str();
                if (d.act_left(L.identity(x), h) != h) fail("left unit", at);
                if (d.act_right(h, R.identity(y)) != h) fail("right unit", at);
                for (int g : L.in_arrows(x)) {
                    const auto gh = d.act_left(g, h);
                    if (!valid_descriptor(d.base, d.left.assignment[static_cast<std::size_t>(L.dom(g))],
                                          d.right.assignment[static_cast<std::size_t>(y)], gh)) {
                        fail("left action typing", at);
                    }
                    for (int g2 : L.in_arrows(L.dom(g))) {
                        if (d.act_left(g2, gh) != d.act_left(L.compose(g2, g), h)) fail("left associativity", at);
                    }
                    for (int k : R.out_arrows(y)) {
                        if (d.act_right(gh, k) != d.act_left(g, d.act_right(h, k))) fail("mixed associativity", at);
                    }
                }
                for (int k : R.out_arrows(y)) {
                    const auto hk = d.act_right(h, k);
                    if (!valid_descriptor(d.base, d.left.assignment[static_cast<std::size_t>(x)],
                                          d.right.assignment[static_cast<std::size_t>(R.cod(k))], hk)) {
                        fail("right action typing", at);
                    }
                    for (int k2 : R.out_arrows(R.cod(k))) {
                        if (d.act_right(hk, k2) != d.act_right(h, R.compose(k, k2))) fail("right associativity", at);
                    }
                }
            }
        }
    }
    for (const char* law : {"left unit", "right unit", "left action typing", "right action typing", "left associativity",
                            "right associativity", "mixed associativity"}) {
        LawEntry e{law, "all", CheckStatus::Pass, ""};
        if (failures.count(law)) {
            e.status = CheckStatus::Fail;
            e.detail = failures[law];
        } else if (exhausted) {
            e.status = CheckStatus::Skipped;
            e.detail = "stopped after enum_cap=" + std::to_string(bounds.enum_cap) + " heteromorphisms";
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

bool is_bijective_on_objects(const CatFunctor& f) {
    if (f.source.num_objects() != f.target.num_objects()) return false;
    std::vector<int> seen(f.target.num_objects(), 0);
    for (int o : f.on_objects) {
        if (o < 0 || seen[static_cast<std::size_t>(o)]++) return false;
    }
    return true;
}

bool is_fully_faithful(const CatFunctor& f) {
    const int n = static_cast<int>(f.source.num_objects());
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const auto src = f.source.hom(a, b);
            const auto dst = f.target.hom(f.on_objects[static_cast<std::size_t>(a)], f.on_objects[static_cast<std::size_t>(b)]);
            if (src.size() != dst.size()) return false;
            std::vector<int> images;
            for (int g : src) images.push_back(f.on_morphisms[static_cast<std::size_t>(g)]);
            std::sort(images.begin(), images.end());
            if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
        }
    }
    return true;
}

std::string BoffReport::summary() const {
    std::ostringstream out;
    out << "input bo=" << input_bo << " ff=" << input_ff << "; output bo=" << output_bo << " ff=" << output_ff;
    for (const auto& v : violations) out << "; violation: " << v;
    return out.str();
}

BoffReport check_boff(const CatFunctor& f, const PolyFunctor& p, const Bounds& bounds) {
    BoffReport r;
    r.input_bo = is_bijective_on_objects(f);
    r.input_ff = is_fully_faithful(f);
    const auto s = selection_functor(f, p, bounds);
    r.output_bo = is_bijective_on_objects(s);
    r.output_ff = is_fully_faithful(s);
    if (r.input_bo && !r.output_bo) r.violations.push_back("bijective on objects input, output is not");
    if (r.input_ff && !r.output_ff) r.violations.push_back("fully faithful input, output is not");
    return r;
}

}  // namespace kancat
