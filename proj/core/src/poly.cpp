#include "kancat/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "kancat/error.hpp"

namespace kancat {

std::vector<std::size_t> PolyFunctor::arities() const {
    std::vector<std::size_t> out;
    for (const auto& d : directions) out.push_back(d.size);
    return out;
}

int PolyFunctor::position_index(const std::string& id) const {
    auto it = std::find(positions.begin(), positions.end(), id);
    if (it == positions.end()) throw LookupError("polynomial has no position '" + id + "'");
    return static_cast<int>(it - positions.begin());
}

std::string PolyFunctor::str() const {
    std::map<std::size_t, std::size_t, std::greater<>> counts;
    for (const auto& d : directions) ++counts[d.size];
    if (counts.empty()) return "0";
    std::string out;
    for (const auto& [arity, count] : counts) {
        if (!out.empty()) out += " + ";
        if (arity == 0) {
            out += std::to_string(count);
            continue;
        }
        if (count != 1) out += std::to_string(count);
        out += "y";
        if (arity != 1) out += "^" + std::to_string(arity);
    }
    return out;
}

PolyFunctor poly_from_arities(const std::vector<std::size_t>& arities, std::string name) {
    PolyFunctor p;
    p.name = std::move(name);
    for (std::size_t i = 0; i < arities.size(); ++i) {
        p.positions.push_back(std::to_string(i));
        p.directions.emplace_back(arities[i]);
    }
    if (p.name.empty()) p.name = p.str();
    return p;
}

PolyFunctor poly_y() { return poly_from_arities({1}, "y"); }

PolyFunctor parse_poly(const std::string& literal) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < literal.size() && std::isspace(static_cast<unsigned char>(literal[pos]))) ++pos;
    };
    auto fail = [&](const std::string& what) -> PolyFunctor {
        throw ShapeError("polynomial literal '" + literal + "': " + what + " at offset " + std::to_string(pos));
    };
    auto number = [&](std::size_t& out) {
        const std::size_t start = pos;
        while (pos < literal.size() && std::isdigit(static_cast<unsigned char>(literal[pos]))) ++pos;
        if (start == pos) return false;
        out = std::stoull(literal.substr(start, pos - start));
        return true;
    };
    std::vector<std::size_t> arities;
    while (true) {
        skip();
        std::size_t coeff = 1;
        std::size_t exponent = 0;
        const bool has_coeff = number(coeff);
        skip();
        if (pos < literal.size() && literal[pos] == 'y') {
            ++pos;
            exponent = 1;
            skip();
            if (pos < literal.size() && literal[pos] == '^') {
                ++pos;
                skip();
                if (!number(exponent)) return fail("expected exponent");
            }
        } else if (!has_coeff) {
            return fail("expected term");
        }
        arities.insert(arities.end(), coeff, exponent);
        skip();
        if (pos == literal.size()) break;
        if (literal[pos] != '+') return fail("expected '+'");
        ++pos;
    }
    auto p = poly_from_arities(arities);
    p.name = literal;
    return p;
}

namespace {

// Calls visit(v) for every vector v with 0 <= v[k] < radix[k], lexicographically.
template <typename Fn>
void for_each_tuple(const std::vector<std::size_t>& radix, Fn&& visit) {
    for (std::size_t r : radix) {
        if (r == 0) return;
    }
    std::vector<int> cur(radix.size(), 0);
    while (true) {
        visit(cur);
        std::size_t k = cur.size();
        while (k > 0) {
            --k;
            if (static_cast<std::size_t>(++cur[k]) < radix[k]) break;
            cur[k] = 0;
            if (k == 0) return;
        }
        if (cur.empty()) return;
    }
}

std::int64_t sat_mul(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::int64_t>::max() / b) return std::numeric_limits<std::int64_t>::max();
    return a * b;
}

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
    if (a > std::numeric_limits<std::int64_t>::max() - b) return std::numeric_limits<std::int64_t>::max();
    return a + b;
}

}  // namespace

std::vector<Value> eval_poly(const PolyFunctor& p, const FinSetRep& x) {
    std::vector<Value> out;
    for (std::size_t i = 0; i < p.num_positions(); ++i) {
        const std::vector<std::size_t> radix(p.directions[i].size, x.size);
        for_each_tuple(radix, [&](const std::vector<int>& f) {
            std::vector<Value> kids;
            for (int v : f) kids.push_back(Value::atom(v));
            out.push_back(Value::node(static_cast<std::int64_t>(i), std::move(kids)));
        });
    }
    return out;
}

std::int64_t poly_cardinality(const PolyFunctor& p, std::int64_t n) {
    std::int64_t total = 0;
    for (const auto& d : p.directions) {
        std::int64_t term = 1;
        for (std::size_t k = 0; k < d.size; ++k) term = sat_mul(term, n);
        total = sat_add(total, term);
    }
    return total;
}

PolyComposite compose_poly(const PolyFunctor& p, const PolyFunctor& q, std::int64_t cap) {
    const auto total = poly_cardinality(p, static_cast<std::int64_t>(q.num_positions()));
    if (total > cap) {
        throw BoundExceeded("compose_poly: " + std::to_string(total) + " positions exceeds compose_cap=" + std::to_string(cap));
    }
    PolyComposite out;
    out.poly.name = p.name + "." + q.name;
    for (std::size_t i = 0; i < p.num_positions(); ++i) {
        const std::vector<std::size_t> radix(p.directions[i].size, q.num_positions());
        for_each_tuple(radix, [&](const std::vector<int>& assign) {
            std::string id = p.positions[i] + "[";
            std::vector<std::pair<int, int>> pairs;
            for (std::size_t a = 0; a < assign.size(); ++a) {
                if (a) id += ",";
                id += q.positions[static_cast<std::size_t>(assign[a])];
                for (std::size_t b = 0; b < q.directions[static_cast<std::size_t>(assign[a])].size; ++b) {
                    pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
                }
            }
            out.poly.positions.push_back(id + "]");
            out.poly.directions.emplace_back(pairs.size());
            out.outer.push_back(static_cast<int>(i));
            out.assignment.push_back(assign);
            out.pairs.push_back(std::move(pairs));
        });
    }
    return out;
}

bool poly_map_valid(const PolyFunctor& source, const PolyFunctor& target, const PolyMap& f) {
    if (f.on_positions.size() != source.num_positions() || f.on_directions.size() != source.num_positions()) return false;
    for (std::size_t i = 0; i < source.num_positions(); ++i) {
        const int j = f.on_positions[i];
        if (j < 0 || static_cast<std::size_t>(j) >= target.num_positions()) return false;
        if (f.on_directions[i].size() != target.arity(j)) return false;
        for (int d : f.on_directions[i]) {
            if (d < 0 || static_cast<std::size_t>(d) >= source.directions[i].size) return false;
        }
    }
    return true;
}

bool poly_map_equal(const PolyFunctor& source, const PolyFunctor& target, const PolyMap& f, const PolyMap& g) {
    if (!poly_map_valid(source, target, f) || !poly_map_valid(source, target, g)) {
        throw ShapeError("poly_map_equal: maps do not type-check against " + source.str() + " -> " + target.str());
    }
    return f == g;
}

PolyMap identity_poly_map(const PolyFunctor& p) {
    PolyMap f;
    for (std::size_t i = 0; i < p.num_positions(); ++i) {
        f.on_positions.push_back(static_cast<int>(i));
        std::vector<int> dirs(p.directions[i].size);
        for (std::size_t d = 0; d < dirs.size(); ++d) dirs[d] = static_cast<int>(d);
        f.on_directions.push_back(std::move(dirs));
    }
    return f;
}

PolyMap compose_poly_maps(const PolyMap& f, const PolyMap& g) {
    PolyMap h;
    for (std::size_t i = 0; i < f.on_positions.size(); ++i) {
        const int j = f.on_positions[i];
        h.on_positions.push_back(g.on_positions.at(static_cast<std::size_t>(j)));
        std::vector<int> dirs;
        for (int e : g.on_directions.at(static_cast<std::size_t>(j))) {
            dirs.push_back(f.on_directions[i].at(static_cast<std::size_t>(e)));
        }
        h.on_directions.push_back(std::move(dirs));
    }
    return h;
}

PolyMap counit_map(const PolyComonad& k) {
    PolyMap f;
    for (int e : k.counit) {
        f.on_positions.push_back(0);
        f.on_directions.push_back({e});
    }
    return f;
}

CompositeMap comult_map(const PolyComonad& k) {
    CompositeMap out;
    for (std::size_t i = 0; i < k.carrier.num_positions(); ++i) {
        out.push_back({static_cast<int>(i), k.cod[i], k.comp[i]});
    }
    return out;
}

const char* to_string(ComonadLaw law) {
    switch (law) {
        case ComonadLaw::Shape: return "shape";
        case ComonadLaw::LeftCounit: return "left-counit";
        case ComonadLaw::RightCounit: return "right-counit";
        case ComonadLaw::Coassociativity: return "coassociativity";
    }
    return "?";
}

std::size_t ComonadReport::count(ComonadLaw law) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [&](const auto& v) { return v.law == law; }));
}

std::string ComonadReport::summary() const {
    if (ok()) return "comonad laws hold";
    std::ostringstream out;
    out << total << " violation(s)";
    if (!violations.empty()) out << "; first: " << violations.front().message;
    return out.str();
}

namespace {

std::string dirs_str(const std::vector<int>& d) {
    std::string out = "(";
    for (std::size_t k = 0; k < d.size(); ++k) out += (k ? "," : "") + std::to_string(d[k]);
    return out + ")";
}

}  // namespace

ComonadReport check_comonad_laws(const PolyFunctor& carrier, const PolyMap& eps, const CompositeMap& delta) {
    ComonadReport report;
    auto record = [&](ComonadLaw law, int pos, std::vector<int> dirs, const std::string& message) {
        ++report.total;
        if (report.violations.size() < ComonadReport::kMaxRecorded) {
            report.violations.push_back({law, pos, dirs, "position " + carrier.positions[static_cast<std::size_t>(pos)] +
                                                             " directions " + dirs_str(dirs) + ": " + message});
        }
    };
    const int n = static_cast<int>(carrier.num_positions());
    auto arity = [&](int i) { return static_cast<int>(carrier.arity(i)); };

    // Shape: ε lands in y with one direction; δ's entries type-check.
    if (eps.on_positions.size() != carrier.num_positions() || eps.on_directions.size() != carrier.num_positions() ||
        delta.size() != carrier.num_positions()) {
        record(ComonadLaw::Shape, 0, {}, "ε or δ has the wrong number of positions");
        return report;
    }
    bool shape_ok = true;
    for (int i = 0; i < n; ++i) {
        const auto& ed = eps.on_directions[static_cast<std::size_t>(i)];
        if (eps.on_positions[static_cast<std::size_t>(i)] != 0 || ed.size() != 1 || ed[0] < 0 || ed[0] >= arity(i)) {
            record(ComonadLaw::Shape, i, {}, "ε does not pick a direction");
            shape_ok = false;
        }
        const auto& d = delta[static_cast<std::size_t>(i)];
        if (d.outer < 0 || d.outer >= n || static_cast<int>(d.assignment.size()) != arity(d.outer) ||
            d.back.size() != d.assignment.size()) {
            record(ComonadLaw::Shape, i, {}, "δ outer position or assignment malformed");
            shape_ok = false;
            continue;
        }
        for (std::size_t a = 0; a < d.assignment.size(); ++a) {
            const int j = d.assignment[a];
            if (j < 0 || j >= n || static_cast<int>(d.back[a].size()) != arity(j)) {
                record(ComonadLaw::Shape, i, {static_cast<int>(a)}, "δ assignment out of range");
                shape_ok = false;
                continue;
            }
            for (std::size_t b = 0; b < d.back[a].size(); ++b) {
                if (d.back[a][b] < 0 || d.back[a][b] >= arity(i)) {
                    record(ComonadLaw::Shape, i, {static_cast<int>(a), static_cast<int>(b)}, "δ direction out of range");
                    shape_ok = false;
                }
            }
        }
    }
    if (!shape_ok) return report;

    auto e = [&](int i) { return eps.on_directions[static_cast<std::size_t>(i)][0]; };
    auto D = [&](int i) -> const CompositeEntry& { return delta[static_cast<std::size_t>(i)]; };

    for (int i = 0; i < n; ++i) {
        const auto& di = D(i);
        // (ε∘p)·δ = id
        const int ej = e(di.outer);
        const int landed = di.assignment[static_cast<std::size_t>(ej)];
        if (landed != i) {
            record(ComonadLaw::RightCounit, i, {ej},
                   "identity direction of the outer position leads to " +
                       carrier.positions[static_cast<std::size_t>(landed)]);
        } else {
            for (int b = 0; b < arity(i); ++b) {
                const int got = di.back[static_cast<std::size_t>(ej)][static_cast<std::size_t>(b)];
                if (got != b) {
                    record(ComonadLaw::RightCounit, i, {ej, b},
                           "e;" + std::to_string(b) + " = " + std::to_string(got));
                }
            }
        }
        // (p∘ε)·δ = id
        if (di.outer != i) {
            record(ComonadLaw::LeftCounit, i, {},
                   "outer position is " + carrier.positions[static_cast<std::size_t>(di.outer)]);
        } else {
            for (int a = 0; a < arity(i); ++a) {
                const int cod = di.assignment[static_cast<std::size_t>(a)];
                const int got = di.back[static_cast<std::size_t>(a)][static_cast<std::size_t>(e(cod))];
                if (got != a) {
                    record(ComonadLaw::LeftCounit, i, {a, e(cod)}, std::to_string(a) + ";e = " + std::to_string(got));
                }
            }
        }
        // (δ∘p)·δ = (p∘δ)·δ
        const int j = di.outer;
        const auto& dj = D(j);
        // LHS position: (dj.outer, dj.assignment, (a',b') -> di.assignment[dj.back[a'][b']])
        // RHS position: (j, a -> D(di.assignment[a]).outer, (a,b) -> D(di.assignment[a]).assignment[b])
        bool same_position = dj.outer == j;
        if (same_position) {
            for (int a = 0; a < arity(j) && same_position; ++a) {
                const auto& inner = D(di.assignment[static_cast<std::size_t>(a)]);
                if (dj.assignment[static_cast<std::size_t>(a)] != inner.outer) {
                    same_position = false;
                    record(ComonadLaw::Coassociativity, i, {a}, "middle positions differ");
                    break;
                }
                for (int b = 0; b < arity(inner.outer); ++b) {
                    const int lhs = di.assignment[static_cast<std::size_t>(dj.back[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])];
                    const int rhs = inner.assignment[static_cast<std::size_t>(b)];
                    if (lhs != rhs) {
                        same_position = false;
                        record(ComonadLaw::Coassociativity, i, {a, b},
                               "cod((f;f')) = " + carrier.positions[static_cast<std::size_t>(lhs)] + " but cod(cod(f), f') = " +
                                   carrier.positions[static_cast<std::size_t>(rhs)]);
                        break;
                    }
                }
            }
        } else {
            record(ComonadLaw::Coassociativity, i, {}, "outer positions differ");
        }
        if (!same_position) continue;
        for (int a = 0; a < arity(j); ++a) {
            const int mid = di.assignment[static_cast<std::size_t>(a)];
            const auto& inner = D(mid);
            for (int b = 0; b < arity(inner.outer); ++b) {
                const int last = inner.assignment[static_cast<std::size_t>(b)];
                for (int c = 0; c < arity(last); ++c) {
                    const int lhs = di.back[static_cast<std::size_t>(dj.back[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])][static_cast<std::size_t>(c)];
                    const int rhs = di.back[static_cast<std::size_t>(a)][static_cast<std::size_t>(inner.back[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)])];
                    if (lhs != rhs) {
                        record(ComonadLaw::Coassociativity, i, {a, b, c},
                               "(f;f');f'' = " + std::to_string(lhs) + " but f;(f';f'') = " + std::to_string(rhs));
                    }
                }
            }
        }
    }
    return report;
}

ComonadReport check_comonad_laws(const PolyComonad& k) {
    return check_comonad_laws(k.carrier, counit_map(k), comult_map(k));
}

PolyComonad comonad_from_maps(std::string name, const PolyFunctor& carrier, const PolyMap& eps,
                              const CompositeMap& delta) {
    const auto report = check_comonad_laws(carrier, eps, delta);
    if (!report.ok()) throw LawFailure("comonad '" + name + "': " + report.summary());
    PolyComonad k;
    k.name = std::move(name);
    k.carrier = carrier;
    for (std::size_t i = 0; i < carrier.num_positions(); ++i) {
        k.counit.push_back(eps.on_directions[i][0]);
        k.cod.push_back(delta[i].assignment);
        k.comp.push_back(delta[i].back);
    }
    return k;
}

PolyComonad category_to_comonad(const FinCategory& c) {
    const auto report = validate_category(c);
    if (!report.ok()) throw LawFailure("category_to_comonad: '" + c.name() + "' is not a category: " + report.summary());
    PolyComonad k;
    k.name = c.name();
    k.carrier.name = c.name();
    k.carrier.positions = c.object_names();
    for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) {
        const auto& out = c.out_arrows(o);
        std::vector<std::string> labels;
        for (int f : out) labels.push_back(c.morphism(f).name);
        k.carrier.directions.emplace_back(std::move(labels));
        auto local = [&](int obj, int f) {
            const auto& arrows = c.out_arrows(obj);
            return static_cast<int>(std::find(arrows.begin(), arrows.end(), f) - arrows.begin());
        };
        k.counit.push_back(local(o, c.identity(o)));
        std::vector<int> cods;
        std::vector<std::vector<int>> comps;
        for (int f : out) {
            cods.push_back(c.cod(f));
            std::vector<int> row;
            for (int g : c.out_arrows(c.cod(f))) row.push_back(local(o, c.compose(f, g)));
            comps.push_back(std::move(row));
        }
        k.cod.push_back(std::move(cods));
        k.comp.push_back(std::move(comps));
    }
    const auto laws = check_comonad_laws(k);
    if (!laws.ok()) throw LawFailure("category_to_comonad: " + laws.summary());
    return k;
}

FinCategory comonad_to_category(const PolyComonad& k) {
    const auto laws = check_comonad_laws(k);
    if (!laws.ok()) throw LawFailure("comonad_to_category: '" + k.name + "' is not a comonad: " + laws.summary());
    const auto& p = k.carrier;
    // Use direction labels as morphism names when they are globally unique.
    std::set<std::string> seen;
    bool unique = true;
    for (std::size_t i = 0; i < p.num_positions() && unique; ++i) {
        if (p.directions[i].labels.empty()) unique = false;
        for (const auto& l : p.directions[i].labels) unique = unique && seen.insert(l).second;
    }
    std::vector<Morphism> morphisms;
    std::vector<int> first;
    for (std::size_t i = 0; i < p.num_positions(); ++i) {
        first.push_back(static_cast<int>(morphisms.size()));
        for (std::size_t d = 0; d < p.directions[i].size; ++d) {
            std::string name = unique ? p.directions[i].labels[d] : p.positions[i] + ":" + p.directions[i].label(d);
            morphisms.push_back({std::move(name), static_cast<int>(i), k.cod[i][d]});
        }
    }
    std::vector<int> identities;
    for (std::size_t i = 0; i < p.num_positions(); ++i) identities.push_back(first[i] + k.counit[i]);
    const std::size_t m = morphisms.size();
    std::vector<int> table(m * m, -1);
    for (std::size_t i = 0; i < p.num_positions(); ++i) {
        for (std::size_t d = 0; d < p.directions[i].size; ++d) {
            const int j = k.cod[i][d];
            for (std::size_t e = 0; e < p.directions[static_cast<std::size_t>(j)].size; ++e) {
                table[static_cast<std::size_t>(first[i] + static_cast<int>(d)) * m +
                      static_cast<std::size_t>(first[static_cast<std::size_t>(j)] + static_cast<int>(e))] =
                    first[i] + k.comp[i][d][e];
            }
        }
    }
    return FinCategory(k.name, p.positions, std::move(morphisms), std::move(identities), std::move(table));
}

}  // namespace kancat
