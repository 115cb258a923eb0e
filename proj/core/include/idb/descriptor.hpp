#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "idb/hierarchy.hpp"
#include "idb/value.hpp"

namespace idb {

// A higher-level concept standing for a set of raw values. Identity (equality,
// ordering, canonical export text) is the coverage key, so the same band
// defined through different dialects' background knowledge compares equal.
struct Concept {
    std::string key;                  // Coverage::canonical()
    Coverage coverage;
    std::string label;                // display label from the defining hierarchy
    std::optional<std::int64_t> code; // integer code when the hierarchy assigns one
    // Default-code concept: stands for "covered by none of these leaves".
    std::shared_ptr<const std::vector<Coverage>> complement_of;

    bool matches(const Value& raw) const;
};

// An (attribute, value-or-concept) atom; the unit rules are built from.
struct Descriptor {
    std::string attr;
    std::variant<Value, Concept> val;

    bool is_concept() const { return val.index() == 1; }
    const Value& value() const { return std::get<0>(val); }
    const Concept& concept_value() const { return std::get<1>(val); }

    // true when a raw cell value stands for this descriptor's value
    bool matches_raw(const Value& raw) const;

    static int compare(const Descriptor& a, const Descriptor& b);
    bool operator==(const Descriptor& o) const { return compare(*this, o) == 0; }
    bool operator<(const Descriptor& o) const { return compare(*this, o) < 0; }

    // canonical text: item='A', income=[500..599], count=3
    std::string to_text() const;
};

using DescriptorSet = std::vector<Descriptor>; // kept sorted + unique

DescriptorSet make_descriptor_set(std::vector<Descriptor> ds);
bool descriptor_subset(const DescriptorSet& sub, const DescriptorSet& super);
bool descriptor_disjoint(const DescriptorSet& a, const DescriptorSet& b);
int descriptor_set_compare(const DescriptorSet& a, const DescriptorSet& b);
std::string descriptor_set_text(const DescriptorSet& ds, const std::string& sep = " & ");

// Scan-time value->concept mapping. Concrete encoders: a defined hierarchy, or
// the MINE RULE style power-of-ten truncation.
class ConceptEncoder {
public:
    virtual ~ConceptEncoder() = default;
    virtual Concept encode(const Value& raw) const = 0;
    virtual std::string name() const = 0;
};

class HierarchyEncoder final : public ConceptEncoder {
public:
    explicit HierarchyEncoder(HierarchyPtr hierarchy);
    Concept encode(const Value& raw) const override;
    std::string name() const override;
    const ConceptHierarchy& hierarchy() const { return *hierarchy_; }

private:
    HierarchyPtr hierarchy_;
};

// floor(v / 10^digits) * 10^digits as the concept [k..k + 10^digits - 1]
class TruncationEncoder final : public ConceptEncoder {
public:
    explicit TruncationEncoder(int digits);
    Concept encode(const Value& raw) const override;
    std::string name() const override;
    int digits() const { return digits_; }

private:
    int digits_;
    std::int64_t unit_;
};

using EncoderPtr = std::shared_ptr<const ConceptEncoder>;
// attribute (case-insensitive) -> encoder applied while scanning that attribute
using Bindings = std::map<std::string, EncoderPtr, CiLess>;

} // namespace idb
