#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kancat/bounds.hpp"
#include "kancat/copresheaf.hpp"
#include "kancat/value.hpp"

namespace kancat {

// An element-level function between copresheaves: (object, element) -> element.
using ElemFn = std::function<Value(int obj, const Value& x)>;

ElemFn map_elem_fn(const Copresheaf& a, const Copresheaf& x, const CopresheafMap& m);

// A copresheaf computed on first use and then shared. Components of composite
// natural transformations receive objects this way so that F(X) is only built
// when a component actually inspects it.
class ObjRef {
public:
    ObjRef(Copresheaf x);  // NOLINT(google-explicit-constructor)
    explicit ObjRef(std::function<Copresheaf()> thunk);
    const Copresheaf& get() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

// A family of representing copresheaves: X ↦ Σ_i hom(A_i, X). Elements of
// p(X) are node(i, images) with images listed in (object, element) order of A_i.
struct PraFunctor {
    std::string name;
    BaseRef base;
    std::vector<std::string> labels;  // one per index
    std::vector<Copresheaf> reps;
    std::size_t size() const { return reps.size(); }
};

// An evaluable functor dom-Set -> cod-Set, given by its action on objects
// and, elementwise, on morphisms: apply_elem(obj, v, h) is F(h)(v) for v in
// F(X)(obj) and h : X -> Y.
struct EvalFunctor {
    std::string name;
    BaseRef dom;
    BaseRef cod;
    // Throws InfiniteResult for infinite outputs and BoundExceeded past `cap` elements.
    std::function<Copresheaf(const Copresheaf& x, std::int64_t cap)> apply_obj;
    std::function<Value(int obj, const Value& v, const ElemFn& h)> apply_elem;
    // Optional: the sub-object of elements of grade <= `grade`, defined even
    // when the full output is infinite.
    std::function<Copresheaf(const Copresheaf& x, std::int64_t grade, std::int64_t cap)> apply_graded;
    std::function<std::int64_t(int obj, const Value& v)> grade;  // optional
    std::shared_ptr<const PraFunctor> pra;                        // set when F is a pra-functor
    bool is_identity = false;
};
using Functor = std::shared_ptr<const EvalFunctor>;

// Full output when finite, otherwise the graded truncation at bounds.grade_cap
// (with `truncated` set). Rethrows InfiniteResult when no grading exists.
Copresheaf apply_bounded(const EvalFunctor& f, const Copresheaf& x, const Bounds& bounds, bool* truncated = nullptr);
CopresheafMap apply_mor(const EvalFunctor& f, const Copresheaf& fx, const Copresheaf& fy, const ElemFn& h);

Functor pra_to_eval(const PraFunctor& p);
Functor identity_functor(const BaseRef& base);
// f∘g : apply g first.
Functor compose_eval(const Functor& f, const Functor& g);

// Element of p(X) for the map m : A_i -> X, and the map encoded by an element.
Value pra_element(const PraFunctor& p, int i, const Copresheaf& x, const CopresheafMap& m);
ElemFn pra_element_fn(const PraFunctor& p, const Value& element);
// The element (i, id_{A_i}) of p(A_i).
Value pra_identity_element(const PraFunctor& p, int i);

struct NatTrans {
    std::string name;
    Functor source;
    Functor target;
    std::function<Value(const ObjRef& x, int obj, const Value& v)> component;

    Value operator()(const ObjRef& x, int obj, const Value& v) const { return component(x, obj, v); }
    ElemFn at(const ObjRef& x) const;
};

NatTrans identity_nat(const Functor& f);
// F∘nt : F∘S => F∘T
NatTrans whisker_left(const Functor& f, const NatTrans& nt);
// nt∘K : S∘K => T∘K
NatTrans whisker_right(const NatTrans& nt, const Functor& k);
// a then b
NatTrans vcomp(const NatTrans& a, const NatTrans& b);
// Re-types a transformation between functors that agree elementwise
// (e.g. the two bracketings of a triple composite).
NatTrans retype(const NatTrans& nt, const Functor& source, const Functor& target);

struct MonadPackage {
    std::string name;
    Functor t;
    NatTrans unit;  // id => t
    NatTrans mult;  // t∘t => t
};

struct ComonadPackage {
    std::string name;
    Functor k;
    NatTrans counit;  // k => id
    NatTrans comult;  // k => k∘k
};

struct DistLaw {
    std::string name;
    MonadPackage t;
    ComonadPackage k;
    NatTrans alpha;  // t∘k => k∘t
};

enum class CheckStatus { Pass, Fail, Skipped };
const char* to_string(CheckStatus status);

struct LawEntry {
    std::string law;
    std::string object;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;  // witness on failure, reason when skipped
};

struct LawReport {
    std::string subject;
    std::string suite;
    std::vector<LawEntry> entries;
    std::vector<std::string> assumptions;

    bool ok() const { return failures() == 0; }
    std::size_t failures() const;
    std::size_t skipped() const;
    std::size_t passed() const;
    std::string summary() const;
};

LawReport check_functor_laws(const EvalFunctor& f, const TestSuite& suite, const Bounds& bounds);
LawReport check_naturality(const NatTrans& nt, const TestSuite& suite, const Bounds& bounds);
LawReport check_monad_laws(const MonadPackage& t, const TestSuite& suite, const Bounds& bounds);
LawReport check_comonad_pkg_laws(const ComonadPackage& k, const TestSuite& suite, const Bounds& bounds);
LawReport check_dist_laws(const DistLaw& dl, const TestSuite& suite, const Bounds& bounds);

// Tests label copresheaves by a short description of their sizes.
std::string describe(const Copresheaf& x);

}  // namespace kancat
