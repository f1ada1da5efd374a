#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kancat/fincat.hpp"
#include "kancat/value.hpp"

namespace kancat {

// Σ_i y^{A_i}: a list of positions, each with a finite direction set.
struct PolyFunctor {
    std::string name;
    std::vector<std::string> positions;  // distinct
    std::vector<FinSetRep> directions;

    std::size_t num_positions() const { return positions.size(); }
    std::size_t arity(int i) const { return directions[static_cast<std::size_t>(i)].size; }
    std::vector<std::size_t> arities() const;
    int position_index(const std::string& id) const;  // throws LookupError

    // Canonical literal such as `2y^5 + y^4 + 3`; positions grouped by arity.
    std::string str() const;
    bool operator==(const PolyFunctor&) const = default;
};

// Positions named 0, 1, ...; no direction labels.
PolyFunctor poly_from_arities(const std::vector<std::size_t>& arities, std::string name = "");
// Parses `2y^5 + y^4 + 3y^0`; coefficients expand into that many positions, in order.
PolyFunctor parse_poly(const std::string& literal);
PolyFunctor poly_y();  // the identity polynomial y

// Elements of p(x): node(i, [x-indices]) in canonical order.
std::vector<Value> eval_poly(const PolyFunctor& p, const FinSetRep& x);
// Σ_i n^{|A_i|}, saturating at INT64_MAX.
std::int64_t poly_cardinality(const PolyFunctor& p, std::int64_t n);

// p∘q with the decoding of each position.
struct PolyComposite {
    PolyFunctor poly;
    std::vector<int> outer;                                  // p-position
    std::vector<std::vector<int>> assignment;                // p-direction -> q-position
    std::vector<std::vector<std::pair<int, int>>> pairs;     // composite direction -> (p-direction, q-direction)
};
// Throws BoundExceeded if the result would have more than `cap` positions.
PolyComposite compose_poly(const PolyFunctor& p, const PolyFunctor& q, std::int64_t cap = 1'000'000);

// Forward on positions, backward on directions:
// on_directions[i][d] is the source direction of i that target direction d of
// on_positions[i] is sent to.
struct PolyMap {
    std::vector<int> on_positions;
    std::vector<std::vector<int>> on_directions;
    bool operator==(const PolyMap&) const = default;
};

bool poly_map_valid(const PolyFunctor& source, const PolyFunctor& target, const PolyMap& f);
// Throws ShapeError if either map does not type-check against (source, target).
bool poly_map_equal(const PolyFunctor& source, const PolyFunctor& target, const PolyMap& f, const PolyMap& g);
PolyMap identity_poly_map(const PolyFunctor& p);
// f : p -> q then g : q -> r.
PolyMap compose_poly_maps(const PolyMap& f, const PolyMap& g);

// A map p -> p∘p described per position without building p∘p: position i goes
// to (outer, a -> assignment[a]) and composite direction (a, b) goes back to
// direction back[a][b] of i.
struct CompositeEntry {
    int outer = 0;
    std::vector<int> assignment;
    std::vector<std::vector<int>> back;
    bool operator==(const CompositeEntry&) const = default;
};
using CompositeMap = std::vector<CompositeEntry>;

// Comonad data in category form: e_i, cod(i, f), and f;f' as a direction of i.
struct PolyComonad {
    std::string name;
    PolyFunctor carrier;
    std::vector<int> counit;
    std::vector<std::vector<int>> cod;
    std::vector<std::vector<std::vector<int>>> comp;
};

PolyMap counit_map(const PolyComonad& k);      // carrier -> y
CompositeMap comult_map(const PolyComonad& k);  // carrier -> carrier∘carrier

enum class ComonadLaw { Shape, LeftCounit, RightCounit, Coassociativity };
const char* to_string(ComonadLaw law);

struct ComonadViolation {
    ComonadLaw law;
    int position = 0;
    std::vector<int> directions;  // witness path of directions at `position`
    std::string message;
};

struct ComonadReport {
    std::vector<ComonadViolation> violations;  // first kMaxRecorded
    std::size_t total = 0;
    static constexpr std::size_t kMaxRecorded = 256;
    bool ok() const { return total == 0; }
    std::size_t count(ComonadLaw law) const;
    std::string summary() const;
};

// Checks (ε∘p)·δ = id, (p∘ε)·δ = id and (δ∘p)·δ = (p∘δ)·δ exactly.
ComonadReport check_comonad_laws(const PolyFunctor& carrier, const PolyMap& eps, const CompositeMap& delta);
ComonadReport check_comonad_laws(const PolyComonad& k);

// Reads category form off (ε, δ); throws LawFailure if the laws fail.
PolyComonad comonad_from_maps(std::string name, const PolyFunctor& carrier, const PolyMap& eps,
                              const CompositeMap& delta);

// Throws LawFailure for an invalid category.
PolyComonad category_to_comonad(const FinCategory& c);
// Throws LawFailure if k is not a comonad.
FinCategory comonad_to_category(const PolyComonad& k);

}  // namespace kancat
