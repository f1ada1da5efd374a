#include "kancat/copresheaf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kancat/error.hpp"

namespace kancat {

bool same_base(const BaseRef& a, const BaseRef& b) { return a == b || (a && b && *a == *b); }

const BaseRef& set_base() {
    static const BaseRef base = std::make_shared<const FinCategory>(terminal_category().renamed("Set"));
    return base;
}

const BaseRef& graph_base() {
    static const BaseRef base = [] {
        CategoryBuilder b("Graph");
        b.add_object("V");
        b.add_object("E");
        b.add_morphism("src", "E", "V");
        b.add_morphism("tgt", "E", "V");
        return std::make_shared<const FinCategory>(b.build());
    }();
    return base;
}

Copresheaf::Copresheaf(BaseRef base, std::vector<std::vector<Value>> elements, std::vector<std::vector<int>> act)
    : base_(std::move(base)), elements_(std::move(elements)), act_(std::move(act)) {
    if (!base_) throw ShapeError("copresheaf: null base");
    if (elements_.size() != base_->num_objects()) throw ShapeError("copresheaf: one element list per object required");
    if (act_.size() != base_->num_morphisms()) throw ShapeError("copresheaf: one action table per morphism required");
    for (const auto& list : elements_) {
        for (std::size_t k = 1; k < list.size(); ++k) {
            if (!(list[k - 1] < list[k])) throw ShapeError("copresheaf: element lists must be sorted and distinct");
        }
    }
    for (std::size_t f = 0; f < act_.size(); ++f) {
        const auto& m = base_->morphism(static_cast<int>(f));
        if (act_[f].size() != size(m.dom)) throw ShapeError("copresheaf: action of '" + m.name + "' has wrong length");
        for (int k : act_[f]) {
            if (k < 0 || static_cast<std::size_t>(k) >= size(m.cod)) {
                throw ShapeError("copresheaf: action of '" + m.name + "' out of range");
            }
        }
    }
}

Copresheaf Copresheaf::from_function(BaseRef base, std::vector<std::vector<Value>> elements,
                                     const std::function<Value(int, const Value&)>& act) {
    for (auto& list : elements) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    std::vector<std::vector<int>> table(base->num_morphisms());
    for (std::size_t f = 0; f < base->num_morphisms(); ++f) {
        const auto& m = base->morphism(static_cast<int>(f));
        const auto& src = elements[static_cast<std::size_t>(m.dom)];
        const auto& dst = elements[static_cast<std::size_t>(m.cod)];
        for (const auto& x : src) {
            const Value y = act(static_cast<int>(f), x);
            auto it = std::lower_bound(dst.begin(), dst.end(), y);
            if (it == dst.end() || !(*it == y)) {
                throw ShapeError("copresheaf: image " + y.str() + " of " + x.str() + " under '" + m.name +
                                 "' is not an element of '" + base->object_name(m.cod) + "'");
            }
            table[f].push_back(static_cast<int>(it - dst.begin()));
        }
    }
    return Copresheaf(std::move(base), std::move(elements), std::move(table));
}

std::size_t Copresheaf::total_size() const {
    std::size_t n = 0;
    for (const auto& list : elements_) n += list.size();
    return n;
}

std::optional<int> Copresheaf::find(int obj, const Value& x) const {
    const auto& list = elements_.at(static_cast<std::size_t>(obj));
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || !(*it == x)) return std::nullopt;
    return static_cast<int>(it - list.begin());
}

int Copresheaf::index_of(int obj, const Value& x) const {
    if (auto k = find(obj, x)) return *k;
    throw LookupError("copresheaf: " + x.str() + " is not an element at '" + base_->object_name(obj) + "'");
}

const Value& Copresheaf::act_value(int f, const Value& x) const {
    const int k = index_of(base_->dom(f), x);
    return element(base_->cod(f), act(f, k));
}

bool Copresheaf::operator==(const Copresheaf& other) const {
    return same_base(base_, other.base_) && elements_ == other.elements_ && act_ == other.act_;
}

std::string Copresheaf::str() const {
    std::ostringstream out;
    out << "{";
    for (std::size_t o = 0; o < elements_.size(); ++o) {
        if (o) out << "; ";
        out << base_->object_name(static_cast<int>(o)) << ":";
        for (std::size_t k = 0; k < elements_[o].size(); ++k) out << (k ? "," : " ") << elements_[o][k].str();
    }
    out << "}";
    return out.str();
}

std::vector<std::string> validate_copresheaf(const Copresheaf& x) {
    std::vector<std::string> problems;
    const auto& c = x.base();
    for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) {
        const int id = c.identity(o);
        for (int k = 0; k < static_cast<int>(x.size(o)); ++k) {
            if (x.act(id, k) != k) {
                problems.push_back("identity of '" + c.object_name(o) + "' moves " + x.element(o, k).str());
            }
        }
    }
    for (int f = 0; f < static_cast<int>(c.num_morphisms()); ++f) {
        for (int g : c.out_arrows(c.cod(f))) {
            const int fg = c.compose(f, g);
            if (fg < 0) continue;
            for (int k = 0; k < static_cast<int>(x.size(c.dom(f))); ++k) {
                if (x.act(g, x.act(f, k)) != x.act(fg, k)) {
                    problems.push_back("action of " + c.morphism(f).name + ";" + c.morphism(g).name +
                                       " disagrees on " + x.element(c.dom(f), k).str());
                }
            }
        }
    }
    return problems;
}

Copresheaf representable(const BaseRef& base, int obj) {
    std::vector<std::vector<Value>> elements(base->num_objects());
    for (int f : base->out_arrows(obj)) elements[static_cast<std::size_t>(base->cod(f))].push_back(Value::atom(f));
    return Copresheaf::from_function(base, std::move(elements), [&](int g, const Value& f) {
        const int fg = base->compose(static_cast<int>(f.tag()), g);
        if (fg < 0) throw ShapeError("representable: base category has a missing composite");
        return Value::atom(fg);
    });
}

Copresheaf empty_copresheaf(const BaseRef& base) {
    return Copresheaf(base, std::vector<std::vector<Value>>(base->num_objects()),
                      std::vector<std::vector<int>>(base->num_morphisms()));
}

Copresheaf terminal_copresheaf(const BaseRef& base) {
    return Copresheaf(base, std::vector<std::vector<Value>>(base->num_objects(), {Value::atom(0)}),
                      std::vector<std::vector<int>>(base->num_morphisms(), {0}));
}

Copresheaf coproduct(const Copresheaf& a, const Copresheaf& b) {
    if (!same_base(a.base_ptr(), b.base_ptr())) throw ShapeError("coproduct: different bases");
    std::vector<std::vector<Value>> elements(a.base().num_objects());
    for (int o = 0; o < static_cast<int>(elements.size()); ++o) {
        for (const auto& x : a.elements(o)) elements[static_cast<std::size_t>(o)].push_back(Value::node(0, {x}));
        for (const auto& x : b.elements(o)) elements[static_cast<std::size_t>(o)].push_back(Value::node(1, {x}));
    }
    return Copresheaf::from_function(a.base_ptr(), std::move(elements), [&](int f, const Value& v) {
        const auto& side = v.tag() == 0 ? a : b;
        return Value::node(v.tag(), {side.act_value(f, v[0])});
    });
}

Copresheaf finite_set(std::int64_t n) { return set_of(atoms(n)); }

Copresheaf set_of(std::vector<Value> elements) {
    return Copresheaf::from_function(set_base(), {std::move(elements)}, [](int, const Value& x) { return x; });
}

Copresheaf graph_copresheaf(const FinGraph& g) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : g.edges) edges.emplace_back(e.src, e.tgt);
    return make_graph(static_cast<int>(g.vertices.size), edges);
}

Copresheaf make_graph(int vertices, const std::vector<std::pair<int, int>>& edges) {
    for (const auto& [s, t] : edges) {
        if (s < 0 || s >= vertices || t < 0 || t >= vertices) throw ShapeError("graph: edge endpoint out of range");
    }
    std::vector<std::vector<Value>> elements{atoms(vertices), atoms(static_cast<std::int64_t>(edges.size()))};
    std::vector<std::vector<int>> act(4);
    act[0].resize(static_cast<std::size_t>(vertices));
    std::iota(act[0].begin(), act[0].end(), 0);
    act[1].resize(edges.size());
    std::iota(act[1].begin(), act[1].end(), 0);
    for (const auto& [s, t] : edges) {
        act[kSrc].push_back(s);
        act[kTgt].push_back(t);
    }
    return Copresheaf(graph_base(), std::move(elements), std::move(act));
}

Copresheaf chain_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int k = 0; k < n; ++k) edges.emplace_back(k, k + 1);
    return make_graph(n + 1, edges);
}

std::optional<std::vector<int>> find_cycle(const Copresheaf& graph) {
    if (!same_base(graph.base_ptr(), graph_base())) throw ShapeError("find_cycle: not a graph");
    const int nv = static_cast<int>(graph.size(kVertex));
    const int ne = static_cast<int>(graph.size(kEdge));
    std::vector<int> state(static_cast<std::size_t>(nv), 0);  // 0 new, 1 on stack, 2 done
    std::vector<int> via(static_cast<std::size_t>(nv), -1);
    std::optional<std::vector<int>> cycle;
    std::function<bool(int)> dfs = [&](int v) {
        state[static_cast<std::size_t>(v)] = 1;
        for (int e = 0; e < ne; ++e) {
            if (graph.act(kSrc, e) != v) continue;
            const int w = graph.act(kTgt, e);
            if (state[static_cast<std::size_t>(w)] == 1) {
                std::vector<int> edges{e};
                for (int u = v; u != w; u = graph.act(kSrc, via[static_cast<std::size_t>(u)])) {
                    edges.push_back(via[static_cast<std::size_t>(u)]);
                }
                std::reverse(edges.begin(), edges.end());
                cycle = edges;
                return true;
            }
            if (state[static_cast<std::size_t>(w)] == 0) {
                via[static_cast<std::size_t>(w)] = e;
                if (dfs(w)) return true;
            }
        }
        state[static_cast<std::size_t>(v)] = 2;
        return false;
    };
    for (int v = 0; v < nv; ++v) {
        if (state[static_cast<std::size_t>(v)] == 0 && dfs(v)) break;
    }
    return cycle;
}

namespace {

class HomSearch {
public:
    HomSearch(const Copresheaf& a, const Copresheaf& x, const std::function<bool(const CopresheafMap&)>& visit)
        : a_(a), x_(x), visit_(visit) {
        const auto& c = a.base();
        map_.components.resize(c.num_objects());
        for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) {
            map_.components[static_cast<std::size_t>(o)].assign(a.size(o), -1);
            for (int k = 0; k < static_cast<int>(a.size(o)); ++k) vars_.emplace_back(o, k);
        }
    }

    void run() { search(0); }

private:
    int& slot(int o, int k) { return map_.components[static_cast<std::size_t>(o)][static_cast<std::size_t>(k)]; }

    bool assign(int o, int k, int v) {
        int& s = slot(o, k);
        if (s == v) return true;
        if (s != -1) return false;
        s = v;
        trail_.emplace_back(o, k);
        const auto& c = a_.base();
        for (int f : c.out_arrows(o)) {
            if (!assign(c.cod(f), a_.act(f, k), x_.act(f, v))) return false;
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            auto [o, k] = trail_.back();
            trail_.pop_back();
            slot(o, k) = -1;
        }
    }

    // Returns false when the visitor asked to stop.
    bool search(std::size_t next) {
        while (next < vars_.size() && slot(vars_[next].first, vars_[next].second) != -1) ++next;
        if (next == vars_.size()) return visit_(map_);
        auto [o, k] = vars_[next];
        for (int v = 0; v < static_cast<int>(x_.size(o)); ++v) {
            const std::size_t mark = trail_.size();
            if (assign(o, k, v) && !search(next + 1)) return false;
            undo(mark);
        }
        return true;
    }

    const Copresheaf& a_;
    const Copresheaf& x_;
    const std::function<bool(const CopresheafMap&)>& visit_;
    CopresheafMap map_;
    std::vector<std::pair<int, int>> vars_;
    std::vector<std::pair<int, int>> trail_;
};

}  // namespace

void for_each_copresheaf_hom(const Copresheaf& a, const Copresheaf& x,
                             const std::function<bool(const CopresheafMap&)>& visit) {
    if (!same_base(a.base_ptr(), x.base_ptr())) throw ShapeError("copresheaf_hom: different bases");
    HomSearch(a, x, visit).run();
}

std::vector<CopresheafMap> copresheaf_hom(const Copresheaf& a, const Copresheaf& x) {
    std::vector<CopresheafMap> out;
    for_each_copresheaf_hom(a, x, [&](const CopresheafMap& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

std::size_t count_copresheaf_hom(const Copresheaf& a, const Copresheaf& x) {
    std::size_t n = 0;
    for_each_copresheaf_hom(a, x, [&](const CopresheafMap&) {
        ++n;
        return true;
    });
    return n;
}

bool is_natural(const Copresheaf& a, const Copresheaf& x, const CopresheafMap& m) {
    const auto& c = a.base();
    if (m.components.size() != c.num_objects()) return false;
    for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) {
        const auto& comp = m.components[static_cast<std::size_t>(o)];
        if (comp.size() != a.size(o)) return false;
        for (int v : comp) {
            if (v < 0 || static_cast<std::size_t>(v) >= x.size(o)) return false;
        }
    }
    for (int f = 0; f < static_cast<int>(c.num_morphisms()); ++f) {
        const int d = c.dom(f);
        const int e = c.cod(f);
        for (int k = 0; k < static_cast<int>(a.size(d)); ++k) {
            const int lhs = m.components[static_cast<std::size_t>(e)][static_cast<std::size_t>(a.act(f, k))];
            const int rhs = x.act(f, m.components[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)]);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

TestSuite default_suite(const BaseRef& base, const Bounds& bounds) {
    TestSuite suite;
    if (same_base(base, set_base())) {
        suite.name = "sets of size 0.." + std::to_string(bounds.set_suite_max);
        for (std::int64_t n = 0; n <= bounds.set_suite_max; ++n) suite.objects.push_back(finite_set(n));
        return suite;
    }
    if (same_base(base, graph_base())) {
        suite.name = "acyclic graphs with at most 4 vertices";
        suite.objects = {
            make_graph(0, {}),
            make_graph(1, {}),
            make_graph(2, {}),
            chain_graph(1),
            chain_graph(2),
            chain_graph(3),
            make_graph(2, {{0, 1}, {0, 1}}),
            make_graph(3, {{1, 0}, {1, 2}}),
            make_graph(3, {{0, 2}, {1, 2}}),
            make_graph(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}),
            make_graph(3, {{0, 1}, {1, 2}, {0, 2}}),
        };
        return suite;
    }
    suite.name = "sums of representables of '" + base->name() + "' up to " + std::to_string(bounds.suite_card) +
                 " elements, plus empty and terminal";
    const auto limit = static_cast<std::size_t>(bounds.suite_card);
    suite.objects.push_back(empty_copresheaf(base));
    suite.objects.push_back(terminal_copresheaf(base));
    std::vector<Copresheaf> reps;
    for (int o = 0; o < static_cast<int>(base->num_objects()); ++o) reps.push_back(representable(base, o));
    for (const auto& r : reps) {
        if (r.total_size() <= limit) suite.objects.push_back(r);
    }
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i; j < reps.size(); ++j) {
            if (reps[i].total_size() + reps[j].total_size() <= limit) suite.objects.push_back(coproduct(reps[i], reps[j]));
        }
    }
    return suite;
}

}  // namespace kancat
