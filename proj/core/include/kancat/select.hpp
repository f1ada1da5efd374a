#pragma once

#include <functional>
#include <string>
#include <vector>

#include "kancat/bounds.hpp"
#include "kancat/fincat.hpp"
#include "kancat/funcal.hpp"
#include "kancat/poly.hpp"
#include "kancat/value.hpp"

namespace kancat {

// Objects (i, c : A_i -> Ob). A morphism (i, c) -> (i', c') picks, for each
// direction a' of i', a direction a of i and an arrow c_a -> c'_{a'}; it is
// encoded tuple(tuple(a, f) per a'). Composition reindexes then composes.
struct Selection {
    FinCategory category;
    PolyFunctor poly;
    std::vector<int> position;                   // per object
    std::vector<std::vector<int>> assignment;    // per object
    std::vector<Value> descriptor;               // per morphism
};

// Throws BoundExceeded past bounds.object_cap objects or bounds.morphism_cap
// morphisms, naming the count.
Selection build_selection(const FinCategory& c, const PolyFunctor& p, const Bounds& bounds);
FinCategory selection_category(const FinCategory& c, const PolyFunctor& p, const Bounds& bounds);

// x then y, both encoded as above; x : (i, c) -> (j, d), y : (j, d) -> (k, e).
Value reindex_compose(const FinCategory& c, const Value& x, const Value& y);

struct CatFunctor {
    FinCategory source;
    FinCategory target;
    std::vector<int> on_objects;
    std::vector<int> on_morphisms;
};

std::vector<std::string> validate_functor(const CatFunctor& f);
CatFunctor identity_cat_functor(const FinCategory& c);
// f then g.
CatFunctor compose_cat_functors(const CatFunctor& f, const CatFunctor& g);
bool same_tables(const CatFunctor& f, const CatFunctor& g);
// The unique functor to the terminal category.
CatFunctor to_terminal(const FinCategory& c);
// Builds a functor from object and morphism name maps; throws LookupError.
CatFunctor functor_from_names(const FinCategory& source, const FinCategory& target,
                              const std::vector<std::pair<std::string, std::string>>& objects,
                              const std::vector<std::pair<std::string, std::string>>& morphisms);

CatFunctor selection_functor(const CatFunctor& f, const PolyFunctor& p, const Bounds& bounds);

struct ProfData {
    PolyFunctor p;
    PolyFunctor q;
    Selection left;
    Selection right;
    FinCategory base;
    // Heteromorphisms from object x of left to object y of right.
    std::vector<Value> het(int x, int y) const;
    // g : x' -> x in left acting on h : x -> y; h : x -> y acting on k : y -> y' in right.
    Value act_left(int g, const Value& h) const;
    Value act_right(const Value& h, int k) const;
};

ProfData selection_profunctor(const FinCategory& c, const PolyFunctor& p, const PolyFunctor& q, const Bounds& bounds);
// Unit and mixed associativity of the two actions, exhaustively.
LawReport check_profunctor(const ProfData& d, const Bounds& bounds);

struct BoffReport {
    bool input_bo = false;
    bool input_ff = false;
    bool output_bo = false;
    bool output_ff = false;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

bool is_bijective_on_objects(const CatFunctor& f);
bool is_fully_faithful(const CatFunctor& f);
BoffReport check_boff(const CatFunctor& f, const PolyFunctor& p, const Bounds& bounds);

}  // namespace kancat
