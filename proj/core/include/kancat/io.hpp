#pragma once

#include <string>

#include <json.hpp>

#include "kancat/copresheaf.hpp"
#include "kancat/fincat.hpp"
#include "kancat/poly.hpp"
#include "kancat/windowed.hpp"

namespace kancat {

using Json = nlohmann::ordered_json;

// Documents carry a "kind" field: category, graph, copresheaf, polynomial or
// functor_expr. Dumping a loaded document reproduces it byte for byte.
std::string document_kind(const Json& doc);  // throws ShapeError

// Objects as strings, morphisms as {id, dom, cod}, identities by object, and
// composition as [f, g, fg] triples over every defined entry.
Json category_to_json(const FinCategory& c);
// Missing triples stay undefined so that broken tables load and can be
// reported by validate_category.
FinCategory category_from_json(const Json& doc);

// A materialized window plus, per object pair, the morphism ids of the hom.
Json windowed_to_json(const WindowedCategory& w, std::int64_t morphism_cap);

Json graph_to_json(const FinGraph& g);
FinGraph graph_from_json(const Json& doc);

// Elements are serialized values; the action lists target indices per morphism.
Json copresheaf_to_json(const Copresheaf& x);
Copresheaf copresheaf_from_json(const Json& doc);

Json poly_to_json(const PolyFunctor& p);
PolyFunctor poly_from_json(const Json& doc);

Json functor_expr_to_json(const std::string& expr);
std::string functor_expr_from_json(const Json& doc);

// Throws Error on IO or parse failure, naming the path.
Json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

// Plain Graphviz digraph: objects as nodes, morphisms as labelled edges.
std::string category_to_dot(const FinCategory& c, bool omit_identities);

}  // namespace kancat
