#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kancat/fincat.hpp"

namespace kancat {

enum class IsoStatus { Found, None, Undecided };
const char* to_string(IsoStatus status);

struct IsoOptions {
    std::int64_t object_cap = 8;
    std::int64_t step_budget = 5'000'000;
};

struct IsoResult {
    IsoStatus status = IsoStatus::None;
    std::vector<int> objects;    // c-object -> d-object (when Found)
    std::vector<int> morphisms;  // c-morphism -> d-morphism (when Found)
    std::string reason;          // why None / Undecided
    std::int64_t steps = 0;

    bool found() const { return status == IsoStatus::Found; }
};

// Searches for an isomorphism of categories c -> d. Objects and morphisms are
// first partitioned by invariant fingerprints; then morphisms are assigned by
// backtracking, with every assignment propagated through composition. A
// returned isomorphism has been verified. Inputs above the object cap, or a
// search that exhausts the step budget, give Undecided rather than None.
IsoResult category_iso(const FinCategory& c, const FinCategory& d, const IsoOptions& options = {});

// Checks that the maps form an isomorphism of categories c -> d.
bool is_isomorphism(const FinCategory& c, const FinCategory& d, const std::vector<int>& objects,
                    const std::vector<int>& morphisms);

IsoResult invert_iso(const IsoResult& iso);
// iso_ab then iso_bc.
IsoResult compose_iso(const IsoResult& ab, const IsoResult& bc);

}  // namespace kancat
