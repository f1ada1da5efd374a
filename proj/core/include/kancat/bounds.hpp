#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace kancat {

// Every truncation limit the engine uses, in one place. Reports print this
// block so that no result is ambiguous about the bounds it was obtained under.
struct Bounds {
    std::int64_t n_max = 3;                // windowed objects: chain/list/paths index cap
    std::int64_t iso_cap = 8;              // category_iso object cap
    std::int64_t iso_steps = 5'000'000;    // category_iso branch budget
    std::int64_t compose_cap = 1'000'000;  // compose_poly position cap
    std::int64_t object_cap = 512;         // selection category object cap
    std::int64_t morphism_cap = 4096;      // materialized category morphism cap
    std::int64_t enum_cap = 200'000;       // elements enumerated per law square
    std::int64_t set_suite_max = 4;        // Set test objects have sizes 0..set_suite_max
    std::int64_t suite_card = 6;           // copresheaf suites: total cardinality cap
    std::int64_t grade_cap = 2;            // graded enumeration for infinite outputs

    // Sets one entry; throws kancat::LookupError for unknown keys.
    void set(const std::string& key, std::int64_t value);
    std::int64_t get(const std::string& key) const;

    // Applies `k=v,k=v` (commas or whitespace separate entries).
    void apply(const std::string& spec);

    std::vector<std::pair<std::string, std::int64_t>> entries() const;
    std::string str() const;

    bool operator==(const Bounds&) const = default;
};

}  // namespace kancat
