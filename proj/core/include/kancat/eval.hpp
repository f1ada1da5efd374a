#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "kancat/bounds.hpp"
#include "kancat/dsl.hpp"
#include "kancat/fincat.hpp"
#include "kancat/funcal.hpp"
#include "kancat/poly.hpp"
#include "kancat/report.hpp"
#include "kancat/windowed.hpp"

namespace kancat {

struct NumberVal {
    std::int64_t value = 0;
};
struct TextVal {
    std::string text;
};
// A finite category; `comonad` is set when it was built as a polynomial comonad.
struct CategoryVal {
    FinCategory category;
    std::optional<PolyComonad> comonad;
    std::string provenance;
};
struct WindowedVal {
    WindowedCategory window;
    std::string provenance;
};
struct PraVal {
    std::shared_ptr<const PraFunctor> pra;
};
struct FunctorVal {
    Functor functor;
};
// `family` and `arg` record how a package was built so that lan can find a
// matching distributive law.
struct MonadVal {
    MonadPackage pkg;
    std::string family;
    std::optional<FinCategory> arg;
};
struct ComonadVal {
    ComonadPackage pkg;
    std::string family;
    std::optional<FinCategory> arg;
};
// The identity, read as a monad or a comonad on whatever base it meets.
struct IdentityVal {};
struct DistVal {
    DistLaw law;
};
struct CompositeVal;

using DslValue = std::variant<NumberVal, TextVal, CategoryVal, WindowedVal, PolyFunctor, PraVal, FunctorVal, MonadVal,
                              ComonadVal, IdentityVal, DistVal, Copresheaf, std::shared_ptr<const CompositeVal>>;

// p followed by (precomposed with) a monad, comonad, identity or functor.
struct CompositeVal {
    std::shared_ptr<const PraFunctor> p;
    DslValue right;
};

std::string kind_name(const DslValue& v);

struct Env {
    Bounds bounds;
    std::string base_dir = ".";  // cat("file") paths resolve against this
    std::uint64_t seed = 0;
    bool omit_identities = false;  // DOT exports skip identity arrows
    std::map<std::string, DslValue> bindings;
    std::vector<std::string> provenance;
};

// Throws LookupError for unbound names and unknown builtins, ShapeError for
// operand kinds that do not fit, and the engine's errors otherwise.
DslValue eval_ast(const Ast& ast, Env& env);

// A value as a finite category: categories directly, windows materialized.
FinCategory as_category(const DslValue& v, const Bounds& bounds);

// DOT (categories and windows) or JSON (also polynomials and copresheaves).
std::string export_value(const DslValue& v, const std::string& format, const Env& env, bool omit_identities);

// Runs the statements in order. Checks become report entries; any other
// error propagates so that the caller can treat it as a script error.
RunReport run_program(const Ast& program, Env& env);
RunReport run_script(const std::string& text, Env& env);

}  // namespace kancat
