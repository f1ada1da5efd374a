#pragma once

#include <string>
#include <vector>

#include "kancat/bounds.hpp"
#include "kancat/io.hpp"

namespace kancat {

const char* engine_version();

enum class Outcome { Pass, Fail, Undecided };
const char* to_string(Outcome outcome);

struct CheckRecord {
    std::string name;
    Outcome status = Outcome::Pass;
    std::string detail;   // what was compared
    std::string witness;  // concrete counterexample on failure, or the cap that was hit
    std::string window;   // bounds behind a windowed claim, if any
    double millis = 0;
};

struct RunReport {
    std::string subject;
    Bounds bounds;
    std::vector<CheckRecord> checks;
    std::vector<std::string> exports;
    std::vector<std::string> notes;  // provenance of constructed values
    double wall_millis = 0;

    bool all_pass() const;
    std::size_t count(Outcome outcome) const;
    // 0 when every check passed, 1 otherwise.
    int exit_code() const;
    std::string text() const;
    Json json() const;
};

}  // namespace kancat
