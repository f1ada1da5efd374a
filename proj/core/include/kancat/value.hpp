#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace kancat {

// Immutable structured descriptor used for every element the engine touches:
// set elements, functor outputs, windowed objects and morphisms.
//
// A value is either an atom (an integer) or a node (a tag plus children).
// The total order is: atoms before nodes, atoms by integer, nodes by tag and
// then lexicographically by children. This order is the canonical element
// order everywhere.
class Value {
public:
    Value() = default;

    static Value atom(std::int64_t v);
    static Value node(std::int64_t tag, std::vector<Value> kids);
    static Value tuple(std::vector<Value> kids) { return node(0, std::move(kids)); }

    bool is_atom() const { return !kids_; }
    std::int64_t tag() const { return tag_; }
    const std::vector<Value>& kids() const;
    std::size_t size() const { return kids_ ? kids_->size() : 0; }
    const Value& operator[](std::size_t i) const { return (*kids_)[i]; }

    std::strong_ordering operator<=>(const Value& other) const;
    bool operator==(const Value& other) const;

    std::size_t hash() const;

    // Serialized form: atoms print as integers, nodes as `tag(k1,k2,...)`.
    std::string str() const;
    static Value parse(const std::string& text);

private:
    std::int64_t tag_ = 0;
    std::shared_ptr<const std::vector<Value>> kids_;
};

struct ValueHash {
    std::size_t operator()(const Value& v) const { return v.hash(); }
};

std::vector<Value> atoms(std::int64_t n);

}  // namespace kancat
