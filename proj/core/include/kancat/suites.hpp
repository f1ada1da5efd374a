#pragma once

#include <string>
#include <vector>

#include "kancat/bounds.hpp"
#include "kancat/report.hpp"

namespace kancat {

// density, walking, finset, lawvere, deltaop, product, selection, laws,
// adjunction, enriched, mutation.
const std::vector<std::string>& suite_names();

// Runs every check of the suite concurrently; the report lists them by name.
// Throws LookupError for an unknown suite.
RunReport run_suite(const std::string& name, const Bounds& bounds);

}  // namespace kancat
