#include "kancat/bounds.hpp"

#include <sstream>

#include "kancat/error.hpp"

namespace kancat {

namespace {
template <typename Fn>
void for_each_field(Bounds& b, Fn&& fn) {
    fn("n_max", b.n_max);
    fn("iso_cap", b.iso_cap);
    fn("iso_steps", b.iso_steps);
    fn("compose_cap", b.compose_cap);
    fn("object_cap", b.object_cap);
    fn("morphism_cap", b.morphism_cap);
    fn("enum_cap", b.enum_cap);
    fn("set_suite_max", b.set_suite_max);
    fn("suite_card", b.suite_card);
    fn("grade_cap", b.grade_cap);
}
}  // namespace

void Bounds::set(const std::string& key, std::int64_t value) {
    bool found = false;
    for_each_field(*this, [&](const char* name, std::int64_t& field) {
        if (key == name) {
            field = value;
            found = true;
        }
    });
    if (!found) throw LookupError("unknown bound '" + key + "'");
    if (value < 0) throw ShapeError("bound '" + key + "' must be non-negative");
}

std::int64_t Bounds::get(const std::string& key) const {
    for (const auto& [name, value] : entries()) {
        if (name == key) return value;
    }
    throw LookupError("unknown bound '" + key + "'");
}

void Bounds::apply(const std::string& spec) {
    std::string normalized = spec;
    for (char& c : normalized) {
        if (c == ',') c = ' ';
    }
    std::istringstream in(normalized);
    std::string item;
    while (in >> item) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
            throw ShapeError("malformed bound '" + item + "' (expected key=value)");
        }
        std::int64_t value = 0;
        try {
            std::size_t used = 0;
            value = std::stoll(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ShapeError("bound '" + item + "' has a non-integer value");
        }
        set(item.substr(0, eq), value);
    }
}

std::vector<std::pair<std::string, std::int64_t>> Bounds::entries() const {
    std::vector<std::pair<std::string, std::int64_t>> out;
    Bounds copy = *this;
    for_each_field(copy, [&](const char* name, std::int64_t& field) { out.emplace_back(name, field); });
    return out;
}

std::string Bounds::str() const {
    std::string out;
    for (const auto& [k, v] : entries()) {
        if (!out.empty()) out += ' ';
        out += k + "=" + std::to_string(v);
    }
    return out;
}

}  // namespace kancat
