#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "kancat/fincat.hpp"
#include "kancat/value.hpp"

namespace kancat {

// A finite window onto a category whose total morphism set may be infinite.
// Objects and morphisms are Values; hom lists are in canonical order.
struct WindowedCategory {
    std::string name;
    std::vector<Value> objects;
    std::function<std::vector<Value>(const Value& a, const Value& b)> hom;
    std::function<Value(const Value& a)> identity;
    // f : a -> b, g : b -> c; returns f;g.
    std::function<Value(const Value& a, const Value& b, const Value& c, const Value& f, const Value& g)> compose;
    std::function<std::string(const Value& obj)> object_label;  // optional
    std::vector<std::pair<std::string, std::int64_t>> window;   // the truncation this view was built under

    std::string label(const Value& obj) const { return object_label ? object_label(obj) : obj.str(); }
    std::string window_str() const;
};

// Tabulates the window. Object names are labels; morphism names are
// `a->b:descriptor`. A composite outside the hom list is left undefined so
// that validate_category reports it. Throws BoundExceeded past morphism_cap.
FinCategory materialize(const WindowedCategory& w, std::int64_t morphism_cap = 1'000'000);

// The full subcategory on the first k objects.
WindowedCategory restrict_window(const WindowedCategory& w, std::size_t k);

// hom(n, m) = monotone maps [m] -> [n] as value lists; composition f;g = f after g.
WindowedCategory build_delta_op(int n_max);
// hom(n, m) = all functions m -> n; same contravariant composition.
WindowedCategory build_finset_op(int n_max);
// Objects: tuples of c-objects of length <= max_arity. A morphism to a tuple
// of length m is, per target slot, a source slot and a c-morphism between them.
WindowedCategory product_completion_oracle(const FinCategory& c, int max_arity);

}  // namespace kancat
