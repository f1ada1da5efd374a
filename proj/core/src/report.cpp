#include "kancat/report.hpp"

#include <cstdio>

namespace kancat {

#ifndef KANCAT_VERSION
#define KANCAT_VERSION "0.0.0"
#endif

const char* engine_version() { return KANCAT_VERSION; }

const char* to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::Undecided: return "undecided-under-cap";
    }
    return "?";
}

bool RunReport::all_pass() const { return count(Outcome::Pass) == checks.size(); }

std::size_t RunReport::count(Outcome outcome) const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.status == outcome;
    return n;
}

int RunReport::exit_code() const { return all_pass() ? 0 : 1; }

std::string RunReport::text() const {
    std::string out = "kancat " + std::string(engine_version()) + "\n";
    out += "bounds: " + bounds.str() + "\n";
    if (!subject.empty()) out += "subject: " + subject + "\n";
    for (const auto& n : notes) out += "note: " + n + "\n";
    for (const auto& c : checks) {
        const char* tag = c.status == Outcome::Pass ? "PASS" : c.status == Outcome::Fail ? "FAIL" : "UNDECIDED";
        out += std::string(tag) + "  " + c.name;
        if (!c.window.empty()) out += "  [window " + c.window + "]";
        out += "\n";
        if (!c.detail.empty()) out += "      " + c.detail + "\n";
        if (!c.witness.empty()) out += "      witness: " + c.witness + "\n";
    }
    for (const auto& e : exports) out += e;
    char tail[160];
    std::snprintf(tail, sizeof tail, "%zu passed, %zu failed, %zu undecided (%.1f ms)\n", count(Outcome::Pass),
                  count(Outcome::Fail), count(Outcome::Undecided), wall_millis);
    return out + tail;
}

Json RunReport::json() const {
    Json doc;
    doc["version"] = engine_version();
    Json b = Json::object();
    for (const auto& [k, v] : bounds.entries()) b[k] = v;
    doc["bounds"] = std::move(b);
    doc["subject"] = subject;
    doc["notes"] = notes;
    Json checks_json = Json::array();
    for (const auto& c : checks) {
        checks_json.push_back({{"name", c.name},
                               {"status", to_string(c.status)},
                               {"detail", c.detail},
                               {"witness", c.witness},
                               {"window", c.window},
                               {"millis", c.millis}});
    }
    doc["checks"] = std::move(checks_json);
    doc["exports"] = exports;
    doc["summary"] = {{"pass", count(Outcome::Pass)},
                      {"fail", count(Outcome::Fail)},
                      {"undecided", count(Outcome::Undecided)}};
    doc["wall_millis"] = wall_millis;
    return doc;
}

}  // namespace kancat
