#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kancat/bounds.hpp"
#include "kancat/funcal.hpp"
#include "kancat/poly.hpp"

namespace kancat {

// ⟨p|q⟩ for a pra-functor p with representing objects A_i and q landing in
// Set: the polynomial Σ_i y^{q(A_i)}. Position i is pra index i; the
// directions of i are the elements of q(A_i) in canonical order, labelled by
// their serialized descriptors.
struct KanResult {
    std::shared_ptr<const PraFunctor> p;
    Functor q;
    PolyFunctor carrier;
    std::vector<int> position_index;
    std::vector<Copresheaf> direction_model;  // q(A_i) over Set
    bool truncated = false;                   // some q(A_i) was cut at the grade bound
    std::string provenance;
    Functor functor;  // the carrier as an evaluable functor on Set
};

// Throws ShapeError when q does not start at p's base or does not land in
// Set, InfiniteResult for an ungraded infinite q(A_i), BoundExceeded past
// bounds.enum_cap (both naming the offending index).
KanResult kan_carrier(const PraFunctor& p, const Functor& q, const Bounds& bounds);

// ⟨p|q⟩ for q landing in any copresheaf category, as the pra-functor with
// representing objects q(A_i).
PraFunctor kan_pra(const PraFunctor& p, const Functor& q, const Bounds& bounds);

// P · y^Q.
PolyFunctor kan_of_sets(const FinSetRep& P, const FinSetRep& Q);

// p ⇒ ⟨p|q⟩∘q : (i, φ) ↦ (i, q(φ)).
NatTrans kan_unit(const KanResult& k);

// The element phi_{A_i}(i, id) of r(q(A_i)), for each index i.
struct YonedaTranspose {
    std::vector<Value> elements;
};
YonedaTranspose kan_transpose(const PraFunctor& p, const NatTrans& phi);

// The transformation ⟨p|q⟩ ⇒ r determined by a transpose, and the
// transformation p ⇒ r∘q it came from.
NatTrans transpose_to_kan(const KanResult& k, const Functor& r, const YonedaTranspose& t);
NatTrans transpose_inv(const KanResult& k, const Functor& r, const YonedaTranspose& t);

// Reads a transpose with r = identity (resp. r = carrier∘carrier) as a
// carrier map to y (resp. to carrier∘carrier).
PolyMap transpose_as_counit(const KanResult& k, const YonedaTranspose& t);
CompositeMap transpose_as_comult(const KanResult& k, const YonedaTranspose& t);

// p∘k as a pra-functor, with the isomorphisms to and from the composite.
// Supported: k the identity, or p and k both pra-functors on Set. Throws
// BoundExceeded past bounds.enum_cap representing objects.
struct PraComposite {
    PraFunctor pra;
    NatTrans to_pra;    // p∘k ⇒ pra
    NatTrans from_pra;  // pra ⇒ p∘k
};
PraComposite pra_compose(const PraFunctor& p, const Functor& k, const Bounds& bounds);

// Comonads on ⟨p|p⟩, ⟨p∘k|p⟩, ⟨p|p∘t⟩ and ⟨p∘k|p∘t⟩. Each result is
// re-checked; LawFailure propagates.
PolyComonad density_comonad(const PraFunctor& p, const Bounds& bounds);
PolyComonad cmd_left(const PraFunctor& p, const ComonadPackage& k, const Bounds& bounds);
PolyComonad cmd_right(const PraFunctor& p, const MonadPackage& t, const Bounds& bounds);
PolyComonad cmd_dist(const PraFunctor& p, const DistLaw& dl, const Bounds& bounds);

// For psi : q2 ⇒ q, the induced carrier map ⟨p|q⟩ → ⟨p|q2⟩.
PolyMap kan_precompose(const KanResult& to_q, const KanResult& to_q2, const NatTrans& psi);

// ⟨⟨p|q⟩|q2⟩ against ⟨p|q2∘q⟩ position by position, and ⟨p|id⟩ against p.
LawReport along_composites_check(const PraFunctor& p, const Functor& q, const Functor& q2, const Bounds& bounds);

// Identities and composites along id ⇒ maybe ⇒ powerset go to identities
// and composites of the induced carrier maps.
LawReport contravariant_functoriality_check(const PraFunctor& p, const Bounds& bounds);

}  // namespace kancat
