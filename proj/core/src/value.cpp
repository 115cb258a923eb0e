#include "idb/value.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

namespace idb {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Io: return "io error";
        case ErrorKind::Ingest: return "ingestion error";
        case ErrorKind::Pivot: return "pivot error";
        case ErrorKind::Definition: return "definition error";
        case ErrorKind::Encoding: return "encoding error";
        case ErrorKind::Lex: return "lex error";
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Resolve: return "resolution error";
        case ErrorKind::Plan: return "plan error";
        case ErrorKind::Catalog: return "catalog error";
        case ErrorKind::Oracle: return "oracle error";
        case ErrorKind::Usage: return "usage error";
    }
    return "error";
}

const char* type_name(ValueType t) {
    switch (t) {
        case ValueType::Integer: return "integer";
        case ValueType::Real: return "real";
        case ValueType::Text: return "text";
    }
    return "?";
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string to_upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

bool ci_equal(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

bool ci_less_than(std::string_view a, std::string_view b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int ca = std::tolower(static_cast<unsigned char>(a[i]));
        int cb = std::tolower(static_cast<unsigned char>(b[i]));
        if (ca != cb) return ca < cb;
    }
    return a.size() < b.size();
}

Value Value::integer(std::int64_t v) {
    Value out;
    out.v_ = v;
    return out;
}

Value Value::real(double v) {
    if (!std::isfinite(v)) fail(ErrorKind::Ingest, "real value must be finite");
    Value out;
    out.v_ = v;
    return out;
}

Value Value::text(std::string v) {
    Value out;
    out.v_ = std::move(v);
    return out;
}

double Value::numeric() const {
    return is_integer() ? static_cast<double>(as_integer()) : as_real();
}

bool Value::equals(const Value& o) const {
    if (is_null() || o.is_null()) return false;
    if (is_numeric() && o.is_numeric()) {
        if (is_integer() && o.is_integer()) return as_integer() == o.as_integer();
        return numeric() == o.numeric();
    }
    if (is_text() && o.is_text()) return as_text() == o.as_text();
    return false;
}

std::optional<int> Value::compare(const Value& o) const {
    if (is_null() || o.is_null()) return std::nullopt;
    if (is_numeric() && o.is_numeric()) {
        if (is_integer() && o.is_integer()) {
            auto a = as_integer(), b = o.as_integer();
            return a < b ? -1 : a > b ? 1 : 0;
        }
        double a = numeric(), b = o.numeric();
        return a < b ? -1 : a > b ? 1 : 0;
    }
    if (is_text() && o.is_text()) {
        int c = as_text().compare(o.as_text());
        return c < 0 ? -1 : c > 0 ? 1 : 0;
    }
    return std::nullopt;
}

int Value::total_order(const Value& a, const Value& b) {
    auto rank = [](const Value& v) { return v.is_null() ? 0 : v.is_numeric() ? 1 : 2; };
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra == 0) return 0;
    if (ra == 1) {
        if (a.is_integer() && b.is_integer()) {
            auto x = a.as_integer(), y = b.as_integer();
            if (x != y) return x < y ? -1 : 1;
            return 0;
        }
        double x = a.numeric(), y = b.numeric();
        if (x != y) return x < y ? -1 : 1;
        // distinguish 2 from 2.0 so ordering is a true total order
        int ka = a.is_integer() ? 0 : 1, kb = b.is_integer() ? 0 : 1;
        return ka < kb ? -1 : ka > kb ? 1 : 0;
    }
    int c = a.as_text().compare(b.as_text());
    return c < 0 ? -1 : c > 0 ? 1 : 0;
}

bool Value::matches_type(ValueType t) const {
    if (is_null()) return true;
    switch (t) {
        case ValueType::Integer: return is_integer();
        case ValueType::Real: return is_numeric();
        case ValueType::Text: return is_text();
    }
    return false;
}

std::string Value::to_string() const {
    if (is_null()) return "";
    if (is_integer()) return std::to_string(as_integer());
    if (is_real()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", as_real());
        return buf;
    }
    return as_text();
}

Schema::Schema(std::vector<AttrDef> attrs) : attrs_(std::move(attrs)) {
    if (attrs_.empty()) fail(ErrorKind::Definition, "schema must not be empty");
    std::set<std::string, CiLess> seen;
    for (const auto& a : attrs_) {
        if (a.name.empty()) fail(ErrorKind::Definition, "attribute name must not be empty");
        if (!seen.insert(a.name).second)
            fail(ErrorKind::Definition, "duplicate attribute name '" + a.name + "'");
    }
}

std::optional<std::size_t> Schema::find(std::string_view name) const {
    for (std::size_t i = 0; i < attrs_.size(); ++i)
        if (ci_equal(attrs_[i].name, name)) return i;
    return std::nullopt;
}

std::size_t Schema::require(std::string_view name, Span span) const {
    auto i = find(name);
    if (!i) fail(ErrorKind::Plan, "unknown attribute '" + std::string(name) + "'", span);
    return *i;
}

bool Schema::operator==(const Schema& o) const {
    if (attrs_.size() != o.attrs_.size()) return false;
    for (std::size_t i = 0; i < attrs_.size(); ++i)
        if (!ci_equal(attrs_[i].name, o.attrs_[i].name) || attrs_[i].type != o.attrs_[i].type)
            return false;
    return true;
}

} // namespace idb
