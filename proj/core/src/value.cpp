#include "kancat/value.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace kancat {

namespace {
const std::vector<Value>& empty_kids() {
    static const std::vector<Value> empty;
    return empty;
}
}  // namespace

Value Value::atom(std::int64_t v) {
    Value out;
    out.tag_ = v;
    return out;
}

Value Value::node(std::int64_t tag, std::vector<Value> kids) {
    Value out;
    out.tag_ = tag;
    out.kids_ = std::make_shared<const std::vector<Value>>(std::move(kids));
    return out;
}

const std::vector<Value>& Value::kids() const { return kids_ ? *kids_ : empty_kids(); }

std::strong_ordering Value::operator<=>(const Value& other) const {
    if (is_atom() != other.is_atom()) {
        return is_atom() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = tag_ <=> other.tag_; c != 0) return c;
    if (is_atom() || kids_ == other.kids_) return std::strong_ordering::equal;
    const auto& a = *kids_;
    const auto& b = *other.kids_;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return a.size() <=> b.size();
}

bool Value::operator==(const Value& other) const { return (*this <=> other) == 0; }

std::size_t Value::hash() const {
    std::size_t h = std::hash<std::int64_t>{}(tag_) ^ (is_atom() ? 0x9e3779b97f4a7c15ULL : 0x7f4a7c159e3779b9ULL);
    if (kids_) {
        for (const auto& k : *kids_) {
            h ^= k.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
    }
    return h;
}

std::string Value::str() const {
    std::string out = std::to_string(tag_);
    if (is_atom()) return out;
    out += '(';
    for (std::size_t i = 0; i < kids_->size(); ++i) {
        if (i) out += ',';
        out += (*kids_)[i].str();
    }
    out += ')';
    return out;
}

namespace {
Value parse_at(const std::string& s, std::size_t& pos) {
    std::size_t start = pos;
    if (pos < s.size() && s[pos] == '-') ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("value: expected integer at offset " + std::to_string(pos));
    std::int64_t tag = std::stoll(s.substr(start, pos - start));
    if (pos >= s.size() || s[pos] != '(') return Value::atom(tag);
    ++pos;
    std::vector<Value> kids;
    if (pos < s.size() && s[pos] == ')') {
        ++pos;
        return Value::node(tag, std::move(kids));
    }
    while (true) {
        kids.push_back(parse_at(s, pos));
        if (pos >= s.size()) throw std::invalid_argument("value: unterminated node");
        if (s[pos] == ',') {
            ++pos;
            continue;
        }
        if (s[pos] == ')') {
            ++pos;
            break;
        }
        throw std::invalid_argument("value: unexpected character at offset " + std::to_string(pos));
    }
    return Value::node(tag, std::move(kids));
}
}  // namespace

Value Value::parse(const std::string& text) {
    std::size_t pos = 0;
    Value v = parse_at(text, pos);
    if (pos != text.size()) throw std::invalid_argument("value: trailing characters");
    return v;
}

std::vector<Value> atoms(std::int64_t n) {
    std::vector<Value> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) out.push_back(Value::atom(i));
    return out;
}

}  // namespace kancat
