#pragma once

#include "kancat/fincat.hpp"
#include "kancat/funcal.hpp"
#include "kancat/poly.hpp"

namespace kancat {

// Representables C(c, -) for every object c; X ↦ Σ_c X(c).
PraFunctor elts_family(const FinCategory& c);
PraFunctor elts_family(const BaseRef& c);
// Chain graphs ul_0 .. ul_bound; X ↦ paths of length <= bound.
PraFunctor paths_family(int bound);
// Finite sets 0 .. n_max; index n represents the set n.
PraFunctor finite_sets_family(int n_max);
// Same representing sets, named as truncated lists.
PraFunctor list_family(int bound);
// One finite set per position of p; the pra form of p as a functor on Set.
PraFunctor poly_family(const PolyFunctor& p);

Functor poly_functor(const PolyFunctor& p);
// Lists of length <= bound, graded by length. Not a monad.
Functor list_functor(int bound);

MonadPackage identity_monad(const BaseRef& base);
MonadPackage maybe_monad();
MonadPackage powerset_monad();
// `m` is a one-object category read as a monoid (morphisms = elements).
MonadPackage writer_monad(const FinCategory& m);
MonadPackage exceptions_monad(int exceptions);
// Free category on a graph: vertices stay, edges become paths node(0, [v0, e1, ..., ek]).
// Applying it to a graph with a directed cycle throws InfiniteResult naming the cycle.
MonadPackage frcat_monad();
// just x ↦ {x}, nothing ↦ {}.
NatTrans maybe_to_powerset();

ComonadPackage identity_comonad(const BaseRef& base);
// X ↦ Σ_c X^{C[c]}, elements node(c, [x_f for f out of c]).
ComonadPackage category_comonad(const FinCategory& c);

// α = id for the identity comonad (resp. identity monad).
DistLaw identity_dist_law(const MonadPackage& t);
DistLaw identity_dist_law(const ComonadPackage& k);
// Writer strength over category_comonad(c): ((c, φ), m) ↦ (c, f ↦ (φ f, m)).
DistLaw writer_strength(const FinCategory& c, const FinCategory& monoid);

}  // namespace kancat
