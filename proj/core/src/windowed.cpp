#include "kancat/windowed.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>

#include "kancat/error.hpp"

namespace kancat {

std::string WindowedCategory::window_str() const {
    std::string out;
    for (const auto& [k, v] : window) {
        if (!out.empty()) out += ' ';
        out += k + "=" + std::to_string(v);
    }
    return out.empty() ? "full" : out;
}

FinCategory materialize(const WindowedCategory& w, std::int64_t morphism_cap) {
    const std::size_t n = w.objects.size();
    std::vector<std::string> names;
    for (const auto& o : w.objects) names.push_back(w.label(o));

    std::vector<Morphism> morphisms;
    std::vector<std::vector<std::vector<Value>>> homs(n, std::vector<std::vector<Value>>(n));
    std::vector<std::vector<int>> first(n, std::vector<int>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            homs[a][b] = w.hom(w.objects[a], w.objects[b]);
            first[a][b] = static_cast<int>(morphisms.size());
            for (const auto& f : homs[a][b]) {
                morphisms.push_back({names[a] + "->" + names[b] + ":" + f.str(), static_cast<int>(a), static_cast<int>(b)});
                if (static_cast<std::int64_t>(morphisms.size()) > morphism_cap) {
                    throw BoundExceeded("window '" + w.name + "' exceeds morphism_cap=" + std::to_string(morphism_cap));
                }
            }
        }
    }
    auto find = [&](std::size_t a, std::size_t b, const Value& f) {
        const auto& list = homs[a][b];
        auto it = std::lower_bound(list.begin(), list.end(), f);
        if (it == list.end() || !(*it == f)) return -1;
        return first[a][b] + static_cast<int>(it - list.begin());
    };

    std::vector<int> identities;
    for (std::size_t a = 0; a < n; ++a) {
        const int id = find(a, a, w.identity(w.objects[a]));
        if (id < 0) throw ShapeError("window '" + w.name + "': identity of " + names[a] + " is not in its hom list");
        identities.push_back(id);
    }
    const std::size_t m = morphisms.size();
    std::vector<int> table(m * m, -1);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                for (std::size_t i = 0; i < homs[a][b].size(); ++i) {
                    for (std::size_t j = 0; j < homs[b][c].size(); ++j) {
                        const Value h = w.compose(w.objects[a], w.objects[b], w.objects[c], homs[a][b][i], homs[b][c][j]);
                        table[static_cast<std::size_t>(first[a][b] + static_cast<int>(i)) * m +
                              static_cast<std::size_t>(first[b][c] + static_cast<int>(j))] = find(a, c, h);
                    }
                }
            }
        }
    }
    return FinCategory(w.name, std::move(names), std::move(morphisms), std::move(identities), std::move(table));
}

WindowedCategory restrict_window(const WindowedCategory& w, std::size_t k) {
    if (k > w.objects.size()) throw ShapeError("restrict_window: window has only " + std::to_string(w.objects.size()) + " objects");
    WindowedCategory out = w;
    out.objects.resize(k);
    out.window.emplace_back("objects", static_cast<std::int64_t>(k));
    return out;
}

namespace {

// All sequences of length `len` over 0..n-1, optionally non-decreasing, in lexicographic order.
std::vector<Value> sequences(std::int64_t n, std::int64_t len, bool monotone) {
    std::vector<Value> out;
    std::vector<Value> cur;
    std::function<void(std::int64_t)> rec = [&](std::int64_t lo) {
        if (static_cast<std::int64_t>(cur.size()) == len) {
            out.push_back(Value::tuple(cur));
            return;
        }
        for (std::int64_t v = monotone ? lo : 0; v < n; ++v) {
            cur.push_back(Value::atom(v));
            rec(v);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

Value after(const Value& f, const Value& g) {
    std::vector<Value> out;
    for (const auto& x : g.kids()) out.push_back(f[static_cast<std::size_t>(x.tag())]);
    return Value::tuple(std::move(out));
}

WindowedCategory function_window(std::string name, int n_max, bool monotone) {
    WindowedCategory w;
    w.name = std::move(name);
    w.objects = atoms(n_max + 1);
    // [n] has n+1 elements for Δ; the finite set n has n.
    const std::int64_t shift = monotone ? 1 : 0;
    w.hom = [shift, monotone](const Value& a, const Value& b) {
        return sequences(a.tag() + shift, b.tag() + shift, monotone);
    };
    w.identity = [shift](const Value& a) {
        std::vector<Value> kids = atoms(a.tag() + shift);
        return Value::tuple(std::move(kids));
    };
    w.compose = [](const Value&, const Value&, const Value&, const Value& f, const Value& g) { return after(f, g); };
    w.window = {{"n_max", n_max}};
    return w;
}

}  // namespace

WindowedCategory build_delta_op(int n_max) {
    if (n_max < 0) throw ShapeError("build_delta_op: n_max must be non-negative");
    return function_window("delta_op", n_max, true);
}

WindowedCategory build_finset_op(int n_max) {
    if (n_max < 0) throw ShapeError("build_finset_op: n_max must be non-negative");
    return function_window("finset_op", n_max, false);
}

WindowedCategory product_completion_oracle(const FinCategory& c, int max_arity) {
    if (max_arity < 0) throw ShapeError("product_completion_oracle: arity must be non-negative");
    auto cat = std::make_shared<const FinCategory>(c);
    WindowedCategory w;
    w.name = "product_completion(" + c.name() + ")";
    const auto nobj = static_cast<std::int64_t>(c.num_objects());
    for (int len = 0; len <= max_arity; ++len) {
        for (auto& t : sequences(nobj, len, false)) w.objects.push_back(t);
    }
    std::sort(w.objects.begin(), w.objects.end());
    w.object_label = [cat](const Value& t) {
        std::string out = "(";
        for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + cat->object_name(static_cast<int>(t[i].tag()));
        return out + ")";
    };
    w.hom = [cat](const Value& a, const Value& b) {
        // per target slot: the (source slot, morphism) choices
        std::vector<std::vector<Value>> choices;
        for (const auto& target : b.kids()) {
            std::vector<Value> slot;
            for (std::size_t i = 0; i < a.size(); ++i) {
                for (int f : cat->hom(static_cast<int>(a[i].tag()), static_cast<int>(target.tag()))) {
                    slot.push_back(Value::tuple({Value::atom(static_cast<std::int64_t>(i)), Value::atom(f)}));
                }
            }
            std::sort(slot.begin(), slot.end());
            choices.push_back(std::move(slot));
        }
        std::vector<Value> out;
        std::vector<Value> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t j) {
            if (j == choices.size()) {
                out.push_back(Value::tuple(cur));
                return;
            }
            for (const auto& v : choices[j]) {
                cur.push_back(v);
                rec(j + 1);
                cur.pop_back();
            }
        };
        rec(0);
        return out;
    };
    w.identity = [cat](const Value& a) {
        std::vector<Value> kids;
        for (std::size_t i = 0; i < a.size(); ++i) {
            kids.push_back(Value::tuple({Value::atom(static_cast<std::int64_t>(i)),
                                         Value::atom(cat->identity(static_cast<int>(a[i].tag())))}));
        }
        return Value::tuple(std::move(kids));
    };
    w.compose = [cat](const Value&, const Value&, const Value&, const Value& f, const Value& g) {
        std::vector<Value> kids;
        for (const auto& slot : g.kids()) {
            const auto& via = f[static_cast<std::size_t>(slot[0].tag())];
            const int h = cat->compose(static_cast<int>(via[1].tag()), static_cast<int>(slot[1].tag()));
            kids.push_back(Value::tuple({via[0], Value::atom(h)}));
        }
        return Value::tuple(std::move(kids));
    };
    w.window = {{"max_arity", max_arity}};
    return w;
}

}  // namespace kancat
