#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kancat/bounds.hpp"
#include "kancat/fincat.hpp"
#include "kancat/value.hpp"

namespace kancat {

using BaseRef = std::shared_ptr<const FinCategory>;

// Same category: identical pointer or identical tables.
bool same_base(const BaseRef& a, const BaseRef& b);

// The terminal category; copresheaves over it are finite sets.
const BaseRef& set_base();
// Objects V, E; morphisms id_V, id_E, src, tgt : E -> V.
const BaseRef& graph_base();
inline constexpr int kVertex = 0;
inline constexpr int kEdge = 1;
inline constexpr int kSrc = 2;
inline constexpr int kTgt = 3;

// A functor base -> FinSet. Elements of each object are distinct Values kept
// in canonical (sorted) order; act[f][k] is the index, in cod(f), of the
// image of element k of dom(f).
class Copresheaf {
public:
    Copresheaf() = default;
    Copresheaf(BaseRef base, std::vector<std::vector<Value>> elements, std::vector<std::vector<int>> act);

    // Sorts and de-duplicates the element lists, then tabulates `act`.
    // Throws ShapeError if an image is not among the cod elements.
    static Copresheaf from_function(BaseRef base, std::vector<std::vector<Value>> elements,
                                    const std::function<Value(int f, const Value& x)>& act);

    const FinCategory& base() const { return *base_; }
    const BaseRef& base_ptr() const { return base_; }
    std::size_t size(int obj) const { return elements_[static_cast<std::size_t>(obj)].size(); }
    std::size_t total_size() const;
    const std::vector<Value>& elements(int obj) const { return elements_[static_cast<std::size_t>(obj)]; }
    const Value& element(int obj, int k) const {
        return elements_[static_cast<std::size_t>(obj)][static_cast<std::size_t>(k)];
    }
    int act(int f, int k) const { return act_[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)]; }
    const Value& act_value(int f, const Value& x) const;
    std::optional<int> find(int obj, const Value& x) const;
    int index_of(int obj, const Value& x) const;  // throws LookupError

    bool operator==(const Copresheaf& other) const;
    std::string str() const;

private:
    BaseRef base_;
    std::vector<std::vector<Value>> elements_;
    std::vector<std::vector<int>> act_;
};

// Identity and composition laws of the action, checked exhaustively.
std::vector<std::string> validate_copresheaf(const Copresheaf& x);

Copresheaf representable(const BaseRef& base, int obj);  // elements: morphism ids out of obj
Copresheaf empty_copresheaf(const BaseRef& base);
Copresheaf terminal_copresheaf(const BaseRef& base);
Copresheaf coproduct(const Copresheaf& a, const Copresheaf& b);  // tags 0 and 1
Copresheaf finite_set(std::int64_t n);
Copresheaf set_of(std::vector<Value> elements);

struct FinGraph {
    struct Edge {
        std::string id;
        int src = 0;
        int tgt = 0;
    };
    FinSetRep vertices;
    std::vector<Edge> edges;
};

Copresheaf graph_copresheaf(const FinGraph& g);
Copresheaf make_graph(int vertices, const std::vector<std::pair<int, int>>& edges);
Copresheaf chain_graph(int n);  // vertices 0..n, edge k : k -> k+1
// Edge indices of a directed cycle, if any.
std::optional<std::vector<int>> find_cycle(const Copresheaf& graph);

// A natural transformation A -> X: components[obj][k] is the index in X(obj)
// of the image of element k of A(obj).
struct CopresheafMap {
    std::vector<std::vector<int>> components;
    bool operator==(const CopresheafMap&) const = default;
};

// Enumerates all natural transformations A -> X in lexicographic order of
// their component tables. The callback returns false to stop early.
void for_each_copresheaf_hom(const Copresheaf& a, const Copresheaf& x,
                             const std::function<bool(const CopresheafMap&)>& visit);
std::vector<CopresheafMap> copresheaf_hom(const Copresheaf& a, const Copresheaf& x);
std::size_t count_copresheaf_hom(const Copresheaf& a, const Copresheaf& x);
bool is_natural(const Copresheaf& a, const Copresheaf& x, const CopresheafMap& m);

// The default registered test objects for a base: finite sets 0..set_suite_max
// over the terminal base, a fixed list of acyclic graphs over the graph base,
// and otherwise sums of representables plus the empty and terminal objects up
// to suite_card total elements.
struct TestSuite {
    std::string name;
    std::vector<Copresheaf> objects;
};
TestSuite default_suite(const BaseRef& base, const Bounds& bounds);

}  // namespace kancat
