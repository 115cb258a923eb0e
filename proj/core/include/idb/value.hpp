#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "idb/error.hpp"

namespace idb {

enum class ValueType { Integer, Real, Text };

const char* type_name(ValueType t);

// Case-insensitive ASCII helpers used for attribute/keyword/catalog names.
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);
bool ci_equal(std::string_view a, std::string_view b);
bool ci_less_than(std::string_view a, std::string_view b);

struct CiLess {
    bool operator()(const std::string& a, const std::string& b) const {
        return ci_less_than(a, b);
    }
};

// A cell value: Null, Integer, Real (always finite), or Text.
class Value {
public:
    Value() = default;
    static Value null() { return Value(); }
    static Value integer(std::int64_t v);
    static Value real(double v); // rejects NaN/infinity
    static Value text(std::string v);

    bool is_null() const { return v_.index() == 0; }
    bool is_integer() const { return v_.index() == 1; }
    bool is_real() const { return v_.index() == 2; }
    bool is_text() const { return v_.index() == 3; }
    bool is_numeric() const { return is_integer() || is_real(); }

    std::int64_t as_integer() const { return std::get<1>(v_); }
    double as_real() const { return std::get<2>(v_); }
    const std::string& as_text() const { return std::get<3>(v_); }
    double numeric() const; // Integer or Real widened to double

    // Comparison semantics: Null equals nothing (including Null);
    // Integer/Real coerce; Text compares only with Text.
    bool equals(const Value& o) const;
    std::optional<int> compare(const Value& o) const; // ordering under the same rules

    // Total deterministic order used for sorting output (Null < numeric < text).
    static int total_order(const Value& a, const Value& b);
    bool identical(const Value& o) const { return total_order(*this, o) == 0; }

    bool matches_type(ValueType t) const; // Null matches every declared type
    std::string to_string() const;        // bare text form used in CSV cells

private:
    std::variant<std::monostate, std::int64_t, double, std::string> v_;
};

struct AttrDef {
    std::string name;
    ValueType type = ValueType::Text;
};

// Ordered attribute list; names unique case-insensitively, non-empty.
class Schema {
public:
    Schema() = default;
    explicit Schema(std::vector<AttrDef> attrs);

    const std::vector<AttrDef>& attrs() const { return attrs_; }
    std::size_t size() const { return attrs_.size(); }
    const AttrDef& at(std::size_t i) const { return attrs_[i]; }

    std::optional<std::size_t> find(std::string_view name) const;
    std::size_t require(std::string_view name, Span span = {}) const;

    bool operator==(const Schema& o) const;

private:
    std::vector<AttrDef> attrs_;
};

using Row = std::vector<Value>;

} // namespace idb
