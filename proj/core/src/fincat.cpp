#include "kancat/fincat.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "kancat/error.hpp"

namespace kancat {

FinSetRep::FinSetRep(std::vector<std::string> names) : size(names.size()), labels(std::move(names)) {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw ShapeError("FinSetRep: labels must be distinct");
}

std::string FinSetRep::label(std::size_t i) const {
    if (i >= size) throw LookupError("FinSetRep: element " + std::to_string(i) + " out of range");
    return labels.empty() ? std::to_string(i) : labels[i];
}

FinCategory::FinCategory(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
                         std::vector<int> identities, std::vector<int> compose_table)
    : name_(std::move(name)),
      objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      compose_(std::move(compose_table)) {
    const auto n_obj = static_cast<int>(objects_.size());
    const auto n_mor = static_cast<int>(morphisms_.size());
    if (identities_.size() != objects_.size()) throw ShapeError("category '" + name_ + "': identity table size");
    if (compose_.size() != morphisms_.size() * morphisms_.size()) {
        throw ShapeError("category '" + name_ + "': composition table must be dense");
    }
    for (const auto& m : morphisms_) {
        if (m.dom < 0 || m.dom >= n_obj || m.cod < 0 || m.cod >= n_obj) {
            throw ShapeError("category '" + name_ + "': morphism '" + m.name + "' has out-of-range endpoints");
        }
    }
    for (int id : identities_) {
        if (id < 0 || id >= n_mor) throw ShapeError("category '" + name_ + "': identity out of range");
    }
    for (int h : compose_) {
        if (h < -1 || h >= n_mor) throw ShapeError("category '" + name_ + "': composite out of range");
    }
    index();
}

void FinCategory::index() {
    out_.assign(objects_.size(), {});
    in_.assign(objects_.size(), {});
    object_lookup_.clear();
    morphism_lookup_.clear();
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        if (!object_lookup_.emplace(objects_[i], static_cast<int>(i)).second) {
            throw ShapeError("category '" + name_ + "': duplicate object '" + objects_[i] + "'");
        }
    }
    for (std::size_t f = 0; f < morphisms_.size(); ++f) {
        const auto& m = morphisms_[f];
        if (!morphism_lookup_.emplace(m.name, static_cast<int>(f)).second) {
            throw ShapeError("category '" + name_ + "': duplicate morphism '" + m.name + "'");
        }
        out_[static_cast<std::size_t>(m.dom)].push_back(static_cast<int>(f));
        in_[static_cast<std::size_t>(m.cod)].push_back(static_cast<int>(f));
    }
}

std::optional<int> FinCategory::find_object(const std::string& name) const {
    auto it = object_lookup_.find(name);
    if (it == object_lookup_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> FinCategory::find_morphism(const std::string& name) const {
    auto it = morphism_lookup_.find(name);
    if (it == morphism_lookup_.end()) return std::nullopt;
    return it->second;
}

int FinCategory::object_index(const std::string& name) const {
    if (auto o = find_object(name)) return *o;
    throw LookupError("category '" + name_ + "' has no object '" + name + "'");
}

int FinCategory::morphism_index(const std::string& name) const {
    if (auto f = find_morphism(name)) return *f;
    throw LookupError("category '" + name_ + "' has no morphism '" + name + "'");
}

std::vector<int> FinCategory::hom(int a, int b) const {
    std::vector<int> out;
    for (int f : out_arrows(a)) {
        if (cod(f) == b) out.push_back(f);
    }
    return out;
}

bool FinCategory::operator==(const FinCategory& other) const {
    return name_ == other.name_ && objects_ == other.objects_ && morphisms_ == other.morphisms_ &&
           identities_ == other.identities_ && compose_ == other.compose_;
}

FinCategory FinCategory::with_compose_entry(int f, int g, int h) const {
    auto table = compose_;
    table.at(static_cast<std::size_t>(f) * morphisms_.size() + static_cast<std::size_t>(g)) = h;
    return FinCategory(name_, objects_, morphisms_, identities_, std::move(table));
}

FinCategory FinCategory::with_identity(int obj, int f) const {
    auto ids = identities_;
    ids.at(static_cast<std::size_t>(obj)) = f;
    return FinCategory(name_, objects_, morphisms_, std::move(ids), compose_);
}

FinCategory FinCategory::renamed(std::string name) const {
    return FinCategory(std::move(name), objects_, morphisms_, identities_, compose_);
}

// ---------------------------------------------------------------------------
// builder

int CategoryBuilder::add_object(const std::string& name) {
    const int obj = static_cast<int>(objects_.size());
    objects_.push_back(name);
    identities_.push_back(static_cast<int>(morphisms_.size()));
    morphisms_.push_back({"id_" + name, obj, obj});
    return obj;
}

int CategoryBuilder::add_morphism(const std::string& name, int dom, int cod) {
    morphisms_.push_back({name, dom, cod});
    return static_cast<int>(morphisms_.size()) - 1;
}

int CategoryBuilder::add_morphism(const std::string& name, const std::string& dom, const std::string& cod) {
    return add_morphism(name, object(dom), object(cod));
}

int CategoryBuilder::object(const std::string& name) const {
    auto it = std::find(objects_.begin(), objects_.end(), name);
    if (it == objects_.end()) throw LookupError("builder: no object '" + name + "'");
    return static_cast<int>(it - objects_.begin());
}

int CategoryBuilder::morphism(const std::string& name) const {
    for (std::size_t i = 0; i < morphisms_.size(); ++i) {
        if (morphisms_[i].name == name) return static_cast<int>(i);
    }
    throw LookupError("builder: no morphism '" + name + "'");
}

void CategoryBuilder::set_compose(int f, int g, int h) { composites_.emplace_back(f, g, h); }

void CategoryBuilder::set_compose(const std::string& f, const std::string& g, const std::string& h) {
    set_compose(morphism(f), morphism(g), morphism(h));
}

FinCategory CategoryBuilder::build() const {
    const std::size_t m = morphisms_.size();
    std::vector<int> table(m * m, -1);
    for (std::size_t f = 0; f < m; ++f) {
        const auto& mf = morphisms_[f];
        table[static_cast<std::size_t>(identities_[static_cast<std::size_t>(mf.dom)]) * m + f] = static_cast<int>(f);
        table[f * m + static_cast<std::size_t>(identities_[static_cast<std::size_t>(mf.cod)])] = static_cast<int>(f);
    }
    for (const auto& [f, g, h] : composites_) {
        table[static_cast<std::size_t>(f) * m + static_cast<std::size_t>(g)] = h;
    }
    return FinCategory(name_, objects_, morphisms_, identities_, std::move(table));
}

// ---------------------------------------------------------------------------

OutHom out_hom(const FinCategory& c, int obj) {
    if (obj < 0 || static_cast<std::size_t>(obj) >= c.num_objects()) {
        throw LookupError("out_hom: unknown object id " + std::to_string(obj));
    }
    return OutHom{obj, c.out_arrows(obj)};
}

OutHom out_hom(const FinCategory& c, const std::string& obj) { return out_hom(c, c.object_index(obj)); }

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::IdentityShape: return "identity-shape";
        case ViolationKind::Missing: return "missing-composite";
        case ViolationKind::DomCod: return "dom/cod";
        case ViolationKind::LeftUnit: return "left-unit";
        case ViolationKind::RightUnit: return "right-unit";
        case ViolationKind::Associativity: return "associativity";
    }
    return "?";
}

std::size_t CategoryReport::count(ViolationKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [&](const auto& v) { return v.kind == kind; }));
}

std::string CategoryReport::summary() const {
    if (ok()) return "valid";
    std::ostringstream out;
    out << total << " violation(s)";
    if (!violations.empty()) out << "; first: " << violations.front().message;
    return out.str();
}

CategoryReport validate_category(const FinCategory& c) {
    CategoryReport report;
    auto record = [&](ViolationKind kind, std::vector<int> witness, std::string message) {
        ++report.total;
        if (report.violations.size() < CategoryReport::kMaxRecorded) {
            report.violations.push_back({kind, std::move(witness), std::move(message)});
        }
    };
    auto mname = [&](int f) { return f < 0 ? std::string("<none>") : c.morphism(f).name; };

    for (std::size_t o = 0; o < c.num_objects(); ++o) {
        const int id = c.identity(static_cast<int>(o));
        if (c.dom(id) != static_cast<int>(o) || c.cod(id) != static_cast<int>(o)) {
            record(ViolationKind::IdentityShape, {static_cast<int>(o), id},
                   "identity of '" + c.object_name(static_cast<int>(o)) + "' is '" + mname(id) +
                       "' which is not an endomorphism of it");
        }
    }

    const int m = static_cast<int>(c.num_morphisms());
    // well_typed[f*m+g]: the entry for composable (f,g) exists and has the right endpoints.
    std::vector<char> well_typed(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0);
    for (int f = 0; f < m; ++f) {
        for (int g : c.out_arrows(c.cod(f))) {
            const int h = c.compose(f, g);
            if (h < 0) {
                record(ViolationKind::Missing, {f, g},
                       "no composite for (" + mname(f) + ", " + mname(g) + ")");
                continue;
            }
            if (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g)) {
                record(ViolationKind::DomCod, {f, g, h},
                       "composite (" + mname(f) + ", " + mname(g) + ") = " + mname(h) + " has wrong dom/cod");
                continue;
            }
            well_typed[static_cast<std::size_t>(f) * static_cast<std::size_t>(m) + static_cast<std::size_t>(g)] = 1;
        }
    }
    auto typed = [&](int f, int g) {
        return well_typed[static_cast<std::size_t>(f) * static_cast<std::size_t>(m) + static_cast<std::size_t>(g)] != 0;
    };

    for (int f = 0; f < m; ++f) {
        const int id_dom = c.identity(c.dom(f));
        const int id_cod = c.identity(c.cod(f));
        if (c.cod(id_dom) == c.dom(f) && c.compose(id_dom, f) != f) {
            record(ViolationKind::LeftUnit, {id_dom, f, c.compose(id_dom, f)},
                   "id;" + mname(f) + " = " + mname(c.compose(id_dom, f)));
        }
        if (c.dom(id_cod) == c.cod(f) && c.compose(f, id_cod) != f) {
            record(ViolationKind::RightUnit, {f, id_cod, c.compose(f, id_cod)},
                   mname(f) + ";id = " + mname(c.compose(f, id_cod)));
        }
    }

    for (int f = 0; f < m; ++f) {
        for (int g : c.out_arrows(c.cod(f))) {
            if (!typed(f, g)) continue;
            const int fg = c.compose(f, g);
            for (int h : c.out_arrows(c.cod(g))) {
                if (!typed(g, h) || !typed(fg, h)) continue;
                const int gh = c.compose(g, h);
                if (!typed(f, gh)) continue;
                const int left = c.compose(fg, h);
                const int right = c.compose(f, gh);
                if (left != right) {
                    record(ViolationKind::Associativity, {f, g, h},
                           "(" + mname(f) + ";" + mname(g) + ");" + mname(h) + " = " + mname(left) + " but " +
                               mname(f) + ";(" + mname(g) + ";" + mname(h) + ") = " + mname(right));
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// fixtures

FinCategory walking_arrow() {
    CategoryBuilder b("walking_arrow");
    b.add_object("a");
    b.add_object("b");
    b.add_morphism("f", "a", "b");
    return b.build();
}

FinCategory chain_category(int n) {
    CategoryBuilder b("chain" + std::to_string(n));
    for (int i = 0; i < n; ++i) b.add_object(std::to_string(i));
    // lt[i][j] for i < j
    std::vector<std::vector<int>> arrow(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (int i = 0; i < n; ++i) {
        arrow[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = b.identity(i);
        for (int j = i + 1; j < n; ++j) {
            arrow[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                b.add_morphism(std::to_string(i) + "<" + std::to_string(j), i, j);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            for (int k = j; k < n; ++k) {
                b.set_compose(arrow[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                              arrow[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)],
                              arrow[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
            }
        }
    }
    return b.build();
}

FinCategory discrete_category(int n) {
    CategoryBuilder b("discrete" + std::to_string(n));
    for (int i = 0; i < n; ++i) b.add_object(std::to_string(i));
    return b.build();
}

FinCategory cyclic_group(int n) {
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    }
    return monoid_category("Z" + std::to_string(n), table);
}

FinCategory monoid_category(const std::string& name, const std::vector<std::vector<int>>& table) {
    const auto n = static_cast<int>(table.size());
    if (n == 0) throw ShapeError("monoid_category: a monoid has at least its unit");
    CategoryBuilder b(name);
    b.add_object("*");
    std::vector<int> ids{b.identity(0)};
    for (int i = 1; i < n; ++i) ids.push_back(b.add_morphism("m" + std::to_string(i), 0, 0));
    for (int i = 0; i < n; ++i) {
        if (table[static_cast<std::size_t>(i)].size() != table.size()) throw ShapeError("monoid_category: table not square");
        for (int j = 0; j < n; ++j) {
            const int k = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (k < 0 || k >= n) throw ShapeError("monoid_category: entry out of range");
            b.set_compose(ids[static_cast<std::size_t>(i)], ids[static_cast<std::size_t>(j)], ids[static_cast<std::size_t>(k)]);
        }
    }
    return b.build();
}

FinCategory commutative_square() {
    CategoryBuilder b("commutative_square");
    for (const char* o : {"a", "b", "c", "d"}) b.add_object(o);
    b.add_morphism("f", "a", "b");
    b.add_morphism("g", "a", "c");
    b.add_morphism("h", "b", "d");
    b.add_morphism("k", "c", "d");
    b.add_morphism("diag", "a", "d");
    b.set_compose("f", "h", "diag");
    b.set_compose("g", "k", "diag");
    return b.build();
}

FinCategory terminal_category() {
    CategoryBuilder b("terminal");
    b.add_object("*");
    return b.build();
}

FinCategory empty_category() { return CategoryBuilder("empty").build(); }

FinCategory opposite(const FinCategory& c) {
    std::vector<Morphism> mors;
    mors.reserve(c.num_morphisms());
    for (const auto& m : c.morphisms()) mors.push_back({m.name, m.cod, m.dom});
    const std::size_t n = c.num_morphisms();
    std::vector<int> table(n * n, -1);
    for (std::size_t f = 0; f < n; ++f) {
        for (std::size_t g = 0; g < n; ++g) {
            // f;g in the opposite is g;f in c.
            table[f * n + g] = c.compose(static_cast<int>(g), static_cast<int>(f));
        }
    }
    return FinCategory(c.name() + "_op", c.object_names(), std::move(mors), c.identities(), std::move(table));
}

}  // namespace kancat
