#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace kancat {

// A finite set with elements 0..size-1 and optional distinct labels.
struct FinSetRep {
    std::size_t size = 0;
    std::vector<std::string> labels;  // empty, or exactly `size` distinct names

    FinSetRep() = default;
    explicit FinSetRep(std::size_t n) : size(n) {}
    explicit FinSetRep(std::vector<std::string> names);

    std::string label(std::size_t i) const;
    bool operator==(const FinSetRep&) const = default;
};

struct Morphism {
    std::string name;
    int dom = 0;
    int cod = 0;
    bool operator==(const Morphism&) const = default;
};

// A finite category as explicit tables. Morphisms carry global ids; the
// composition table is dense and stores f;g (f first) or -1 where undefined.
// Construction checks only index ranges; the category laws are checked by
// validate_category so that broken tables can be represented and reported.
class FinCategory {
public:
    FinCategory() = default;
    FinCategory(std::string name, std::vector<std::string> objects, std::vector<Morphism> morphisms,
                std::vector<int> identities, std::vector<int> compose_table);

    const std::string& name() const { return name_; }
    std::size_t num_objects() const { return objects_.size(); }
    std::size_t num_morphisms() const { return morphisms_.size(); }

    const std::string& object_name(int obj) const { return objects_.at(static_cast<std::size_t>(obj)); }
    const std::vector<std::string>& object_names() const { return objects_; }
    const Morphism& morphism(int f) const { return morphisms_.at(static_cast<std::size_t>(f)); }
    const std::vector<Morphism>& morphisms() const { return morphisms_; }
    int dom(int f) const { return morphisms_[static_cast<std::size_t>(f)].dom; }
    int cod(int f) const { return morphisms_[static_cast<std::size_t>(f)].cod; }
    int identity(int obj) const { return identities_.at(static_cast<std::size_t>(obj)); }
    const std::vector<int>& identities() const { return identities_; }
    bool is_identity(int f) const { return identities_[static_cast<std::size_t>(dom(f))] == f; }

    // f;g, or -1 when the table has no entry (which includes non-composable pairs).
    int compose(int f, int g) const {
        return compose_[static_cast<std::size_t>(f) * morphisms_.size() + static_cast<std::size_t>(g)];
    }
    const std::vector<int>& compose_table() const { return compose_; }

    int object_index(const std::string& name) const;     // throws LookupError
    int morphism_index(const std::string& name) const;   // throws LookupError
    std::optional<int> find_object(const std::string& name) const;
    std::optional<int> find_morphism(const std::string& name) const;

    const std::vector<int>& out_arrows(int obj) const { return out_[static_cast<std::size_t>(obj)]; }
    const std::vector<int>& in_arrows(int obj) const { return in_[static_cast<std::size_t>(obj)]; }
    std::vector<int> hom(int a, int b) const;

    // Same tables (names included).
    bool operator==(const FinCategory& other) const;

    // Copy with a single composition entry overwritten; used by mutation tests.
    FinCategory with_compose_entry(int f, int g, int h) const;
    FinCategory with_identity(int obj, int f) const;
    FinCategory renamed(std::string name) const;

private:
    void index();

    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<int> identities_;
    std::vector<int> compose_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::unordered_map<std::string, int> object_lookup_;
    std::unordered_map<std::string, int> morphism_lookup_;
};

// Incremental construction. Each object gets an identity `id_<name>`;
// compositions with identities are filled in by build() unless set explicitly.
class CategoryBuilder {
public:
    explicit CategoryBuilder(std::string name) : name_(std::move(name)) {}

    int add_object(const std::string& name);
    int add_morphism(const std::string& name, int dom, int cod);
    int add_morphism(const std::string& name, const std::string& dom, const std::string& cod);
    void set_compose(int f, int g, int h);
    void set_compose(const std::string& f, const std::string& g, const std::string& h);
    int identity(int obj) const { return identities_.at(static_cast<std::size_t>(obj)); }
    int object(const std::string& name) const;
    int morphism(const std::string& name) const;
    std::size_t num_morphisms() const { return morphisms_.size(); }

    FinCategory build() const;

private:
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<int> identities_;
    std::vector<std::tuple<int, int, int>> composites_;
};

struct OutHom {
    int object = 0;
    std::vector<int> arrows;  // morphism ids with dom == object, ascending
};

// Throws LookupError for an unknown object.
OutHom out_hom(const FinCategory& c, int obj);
OutHom out_hom(const FinCategory& c, const std::string& obj);

enum class ViolationKind { IdentityShape, Missing, DomCod, LeftUnit, RightUnit, Associativity };
const char* to_string(ViolationKind kind);

struct LawViolation {
    ViolationKind kind;
    std::vector<int> witness;  // morphism ids (or the object id for IdentityShape)
    std::string message;
};

struct CategoryReport {
    std::vector<LawViolation> violations;  // first `kMaxRecorded` in check order
    std::size_t total = 0;                 // all violations found
    static constexpr std::size_t kMaxRecorded = 256;

    bool ok() const { return total == 0; }
    std::size_t count(ViolationKind kind) const;
    std::string summary() const;
};

// Exhaustive check of identity shapes, table totality, dom/cod typing,
// unit laws, and associativity over all composable triples.
CategoryReport validate_category(const FinCategory& c);

// Fixture categories.
FinCategory walking_arrow();
FinCategory chain_category(int n);        // poset 0 < 1 < ... < n-1
FinCategory discrete_category(int n);
FinCategory cyclic_group(int n);          // one object, Z/n
FinCategory commutative_square();         // poset a < b, c < d
FinCategory terminal_category();
FinCategory empty_category();
FinCategory opposite(const FinCategory& c);
// One-object category from a monoid multiplication table (element 0 is the unit).
FinCategory monoid_category(const std::string& name, const std::vector<std::vector<int>>& table);

}  // namespace kancat
