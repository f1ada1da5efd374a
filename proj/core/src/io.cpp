#include "kancat/io.hpp"

#include <fstream>
#include <sstream>

#include "kancat/error.hpp"

namespace kancat {

namespace {

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw ShapeError(std::string("document lacks field '") + key + "'");
    return doc.at(key);
}

void expect_kind(const Json& doc, const std::string& kind) {
    auto k = document_kind(doc);
    if (k != kind) throw ShapeError("expected a " + kind + " document, got " + k);
}

template <typename T>
T get_as(const Json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ShapeError(std::string("malformed ") + what + ": " + j.dump());
    }
}

std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string document_kind(const Json& doc) {
    auto kind = get_as<std::string>(field(doc, "kind"), "kind");
    static const char* known[] = {"category", "graph", "copresheaf", "polynomial", "functor_expr"};
    for (const char* k : known) {
        if (kind == k) return kind;
    }
    throw ShapeError("unknown document kind '" + kind + "'");
}

Json category_to_json(const FinCategory& c) {
    Json doc;
    doc["kind"] = "category";
    doc["name"] = c.name();
    doc["objects"] = c.object_names();
    Json morphisms = Json::array();
    for (const auto& m : c.morphisms()) {
        morphisms.push_back({{"id", m.name}, {"dom", c.object_name(m.dom)}, {"cod", c.object_name(m.cod)}});
    }
    doc["morphisms"] = std::move(morphisms);
    Json ids = Json::object();
    for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) {
        ids[c.object_name(o)] = c.morphism(c.identity(o)).name;
    }
    doc["identities"] = std::move(ids);
    Json triples = Json::array();
    int n = static_cast<int>(c.num_morphisms());
    for (int f = 0; f < n; ++f) {
        for (int g = 0; g < n; ++g) {
            int h = c.compose(f, g);
            if (h >= 0) triples.push_back({c.morphism(f).name, c.morphism(g).name, c.morphism(h).name});
        }
    }
    doc["composition"] = std::move(triples);
    return doc;
}

FinCategory category_from_json(const Json& doc) {
    expect_kind(doc, "category");
    std::string name = doc.contains("name") ? get_as<std::string>(doc["name"], "name") : "";
    auto objects = get_as<std::vector<std::string>>(field(doc, "objects"), "objects");
    std::unordered_map<std::string, int> object_ix;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (!object_ix.emplace(objects[i], static_cast<int>(i)).second) {
            throw ShapeError("duplicate object '" + objects[i] + "'");
        }
    }
    auto find_object = [&](const std::string& o) {
        auto it = object_ix.find(o);
        if (it == object_ix.end()) throw LookupError("unknown object '" + o + "'");
        return it->second;
    };
    std::vector<Morphism> morphisms;
    std::unordered_map<std::string, int> morphism_ix;
    for (const auto& m : field(doc, "morphisms")) {
        Morphism mor{get_as<std::string>(field(m, "id"), "morphism id"),
                     find_object(get_as<std::string>(field(m, "dom"), "dom")),
                     find_object(get_as<std::string>(field(m, "cod"), "cod"))};
        if (!morphism_ix.emplace(mor.name, static_cast<int>(morphisms.size())).second) {
            throw ShapeError("duplicate morphism '" + mor.name + "'");
        }
        morphisms.push_back(std::move(mor));
    }
    auto find_morphism = [&](const std::string& f) {
        auto it = morphism_ix.find(f);
        if (it == morphism_ix.end()) throw LookupError("unknown morphism '" + f + "'");
        return it->second;
    };
    std::vector<int> identities;
    for (const auto& o : objects) {
        std::string id = "id_" + o;
        if (doc.contains("identities")) id = get_as<std::string>(field(doc["identities"], o.c_str()), "identity");
        identities.push_back(find_morphism(id));
    }
    std::size_t n = morphisms.size();
    std::vector<int> table(n * n, -1);
    for (const auto& t : field(doc, "composition")) {
        auto triple = get_as<std::vector<std::string>>(t, "composition triple");
        if (triple.size() != 3) throw ShapeError("composition entry is not a triple: " + t.dump());
        auto f = static_cast<std::size_t>(find_morphism(triple[0]));
        auto g = static_cast<std::size_t>(find_morphism(triple[1]));
        table[f * n + g] = find_morphism(triple[2]);
    }
    return FinCategory(name, objects, morphisms, identities, table);
}

Json windowed_to_json(const WindowedCategory& w, std::int64_t morphism_cap) {
    FinCategory c = materialize(w, morphism_cap);
    Json doc = category_to_json(c);
    Json window = Json::object();
    for (const auto& [k, v] : w.window) window[k] = v;
    doc["window"] = std::move(window);
    Json homs = Json::array();
    for (int a = 0; a < static_cast<int>(c.num_objects()); ++a) {
        for (int b = 0; b < static_cast<int>(c.num_objects()); ++b) {
            Json ids = Json::array();
            for (int f : c.hom(a, b)) ids.push_back(c.morphism(f).name);
            homs.push_back({c.object_name(a), c.object_name(b), std::move(ids)});
        }
    }
    doc["homs"] = std::move(homs);
    return doc;
}

Json graph_to_json(const FinGraph& g) {
    Json doc;
    doc["kind"] = "graph";
    Json vertices = Json::array();
    for (std::size_t v = 0; v < g.vertices.size; ++v) vertices.push_back(g.vertices.label(v));
    doc["vertices"] = vertices;
    Json edges = Json::array();
    for (const auto& e : g.edges) {
        edges.push_back({{"id", e.id},
                         {"src", vertices.at(static_cast<std::size_t>(e.src))},
                         {"tgt", vertices.at(static_cast<std::size_t>(e.tgt))}});
    }
    doc["edges"] = std::move(edges);
    return doc;
}

FinGraph graph_from_json(const Json& doc) {
    expect_kind(doc, "graph");
    FinGraph g;
    auto names = get_as<std::vector<std::string>>(field(doc, "vertices"), "vertices");
    g.vertices = FinSetRep(names);
    auto vertex = [&](const Json& j) {
        auto n = get_as<std::string>(j, "vertex");
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == n) return static_cast<int>(i);
        }
        throw LookupError("unknown vertex '" + n + "'");
    };
    for (const auto& e : field(doc, "edges")) {
        g.edges.push_back({get_as<std::string>(field(e, "id"), "edge id"), vertex(field(e, "src")), vertex(field(e, "tgt"))});
    }
    return g;
}

Json copresheaf_to_json(const Copresheaf& x) {
    const FinCategory& c = x.base();
    Json doc;
    doc["kind"] = "copresheaf";
    doc["base"] = category_to_json(c);
    Json sets = Json::object();
    for (int o = 0; o < static_cast<int>(c.num_objects()); ++o) {
        Json elems = Json::array();
        for (const auto& v : x.elements(o)) elems.push_back(v.str());
        sets[c.object_name(o)] = std::move(elems);
    }
    doc["sets"] = std::move(sets);
    Json act = Json::object();
    for (int f = 0; f < static_cast<int>(c.num_morphisms()); ++f) {
        Json images = Json::array();
        for (int k = 0; k < static_cast<int>(x.size(c.dom(f))); ++k) images.push_back(x.act(f, k));
        act[c.morphism(f).name] = std::move(images);
    }
    doc["act"] = std::move(act);
    return doc;
}

Copresheaf copresheaf_from_json(const Json& doc) {
    expect_kind(doc, "copresheaf");
    FinCategory c = category_from_json(field(doc, "base"));
    BaseRef base;
    if (c == *set_base()) {
        base = set_base();
    } else if (c == *graph_base()) {
        base = graph_base();
    } else {
        base = std::make_shared<const FinCategory>(std::move(c));
    }
    const FinCategory& b = *base;
    std::vector<std::vector<Value>> elements;
    for (const auto& o : b.object_names()) {
        std::vector<Value> elems;
        for (const auto& s : field(field(doc, "sets"), o.c_str())) {
            try {
                elems.push_back(Value::parse(get_as<std::string>(s, "element")));
            } catch (const ShapeError&) {
                throw;
            } catch (const std::exception& e) {
                throw ShapeError("bad element " + s.dump() + ": " + e.what());
            }
        }
        elements.push_back(std::move(elems));
    }
    std::vector<std::vector<int>> act;
    for (const auto& m : b.morphisms()) {
        auto images = get_as<std::vector<int>>(field(field(doc, "act"), m.name.c_str()), "action");
        if (images.size() != elements[static_cast<std::size_t>(m.dom)].size()) {
            throw ShapeError("action of '" + m.name + "' has the wrong length");
        }
        for (int k : images) {
            if (k < 0 || static_cast<std::size_t>(k) >= elements[static_cast<std::size_t>(m.cod)].size()) {
                throw ShapeError("action of '" + m.name + "' leaves its codomain");
            }
        }
        act.push_back(std::move(images));
    }
    return Copresheaf(base, std::move(elements), std::move(act));
}

Json poly_to_json(const PolyFunctor& p) {
    Json doc;
    doc["kind"] = "polynomial";
    doc["name"] = p.name;
    Json positions = Json::array();
    for (std::size_t i = 0; i < p.num_positions(); ++i) {
        const auto& d = p.directions[i];
        Json dirs;
        if (d.labels.empty()) {
            dirs = d.size;
        } else {
            dirs = d.labels;
        }
        positions.push_back({{"id", p.positions[i]}, {"directions", std::move(dirs)}});
    }
    doc["positions"] = std::move(positions);
    return doc;
}

PolyFunctor poly_from_json(const Json& doc) {
    expect_kind(doc, "polynomial");
    if (doc.contains("literal")) {
        auto p = parse_poly(get_as<std::string>(doc["literal"], "literal"));
        if (doc.contains("name")) p.name = get_as<std::string>(doc["name"], "name");
        return p;
    }
    PolyFunctor p;
    if (doc.contains("name")) p.name = get_as<std::string>(doc["name"], "name");
    for (const auto& pos : field(doc, "positions")) {
        p.positions.push_back(get_as<std::string>(field(pos, "id"), "position id"));
        const auto& d = field(pos, "directions");
        if (d.is_number_unsigned()) {
            p.directions.emplace_back(d.get<std::size_t>());
        } else {
            p.directions.emplace_back(get_as<std::vector<std::string>>(d, "directions"));
        }
    }
    return p;
}

Json functor_expr_to_json(const std::string& expr) {
    Json doc;
    doc["kind"] = "functor_expr";
    doc["expr"] = expr;
    return doc;
}

std::string functor_expr_from_json(const Json& doc) {
    expect_kind(doc, "functor_expr");
    return get_as<std::string>(field(doc, "expr"), "expr");
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("'" + path + "' is not valid JSON: " + e.what());
    }
}

void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
    if (!out) throw Error("write to '" + path + "' failed");
}

std::string category_to_dot(const FinCategory& c, bool omit_identities) {
    std::ostringstream out;
    out << "digraph " << dot_quote(c.name().empty() ? "category" : c.name()) << " {\n";
    for (const auto& o : c.object_names()) out << "  " << dot_quote(o) << ";\n";
    for (int f = 0; f < static_cast<int>(c.num_morphisms()); ++f) {
        if (omit_identities && c.is_identity(f)) continue;
        const auto& m = c.morphism(f);
        out << "  " << dot_quote(c.object_name(m.dom)) << " -> " << dot_quote(c.object_name(m.cod))
            << " [label=" << dot_quote(m.name) << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace kancat
