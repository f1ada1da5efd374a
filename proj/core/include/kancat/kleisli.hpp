#pragma once

#include "kancat/bounds.hpp"
#include "kancat/funcal.hpp"
#include "kancat/poly.hpp"
#include "kancat/windowed.hpp"

namespace kancat {

// The opposite of the full Kleisli subcategory on A_0 .. A_window:
// hom(i, i') = maps A_{i'} -> t(A_i), encoded as the element of p(t(A_i))
// with tag i'. f;g is A_{i''} -> t(A_{i'}) -> t(t(A_i)) -> t(A_i).
// Throws InfiniteResult when some t(A_i) is infinite.
WindowedCategory kleisli_subcategory(const PraFunctor& p, const MonadPackage& t, int window, const Bounds& bounds);

// The monad on O-Set (O = objects of c, discrete) given by c read as a
// span O <- Mor -> O: m(X)(c') = Σ_{f : c -> c'} X(c), elements tuple(f, x).
MonadPackage span_monad(const FinCategory& c);
// Σ_c y^{C[c]}, rebuilt as the carrier of ⟨elts_O|elts_O∘m⟩.
PolyFunctor span_monad_recover(const FinCategory& c, const Bounds& bounds);
PraFunctor span_family(const FinCategory& c);  // elts over the discrete category on c's objects

}  // namespace kancat
