#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idb/value.hpp"

namespace idb {

// What a hierarchy node stands for at data level: a closed numeric interval
// (MIN/MAX sentinels = unbounded end) or a literal value set.
struct Coverage {
    bool is_interval = true;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool lo_unbounded = false;
    bool hi_unbounded = false;
    std::vector<Value> values; // value-set form

    static Coverage interval(std::optional<std::int64_t> lo, std::optional<std::int64_t> hi);
    static Coverage value_set(std::vector<Value> values);

    bool contains(const Value& v) const;
    bool overlaps(const Coverage& o) const;
    // "[500..599]", "[MIN..499]", "{a,b}" — the dialect-independent key used
    // for concept identity and exports.
    std::string canonical() const;

    bool operator==(const Coverage& o) const;
};

struct HierarchyNode {
    int level = 1;                   // 0 is the ANY root
    std::string label;               // display label ("[500..599]", "I5", "2")
    std::optional<std::int64_t> code;
    Coverage coverage;               // leaves: own coverage; inner nodes: union of children
    int parent = 0;                  // node index; root's parent is itself
    bool is_leaf = true;
};

// Unified background knowledge: discretization encodings, multi-level concept
// hierarchies, and taxonomies all normalize to this shape.
class ConceptHierarchy {
public:
    ConceptHierarchy() = default;

    const std::string& name() const { return name_; }
    const std::string& attribute() const { return attribute_; }
    int depth() const { return depth_; } // number of levels including root
    std::optional<std::int64_t> default_code() const { return default_code_; }
    const std::vector<HierarchyNode>& nodes() const { return nodes_; }
    std::vector<const HierarchyNode*> leaves() const;

    // Index of the unique leaf covering v, or nullopt.
    std::optional<std::size_t> covering_leaf(const Value& v) const;

    // Leaf label as a Value: Integer code when present, else the Text label;
    // default code when uncovered and a default exists.
    Value encode_value(const Value& v) const;

    // Ancestor label at the requested level (level 0 = "ANY").
    Value generalize_value(const Value& v, int level) const;

    // One line per leaf: "level<TAB>label<TAB>lo<TAB>hi" (or value set).
    std::string to_text() const;
    static ConceptHierarchy from_text(const std::string& name, const std::string& attribute,
                                      const std::string& text);

    friend ConceptHierarchy define_encoding(const std::string&, const std::string&,
                                            const std::vector<struct EncodingRange>&,
                                            std::optional<std::int64_t>);
    friend ConceptHierarchy define_hierarchy(const std::string&, const std::string&,
                                             const std::vector<struct LevelDef>&);

private:
    std::string name_;
    std::string attribute_;
    std::vector<HierarchyNode> nodes_; // nodes_[0] is the root
    std::optional<std::int64_t> default_code_;
    int depth_ = 1;
};

struct EncodingRange {
    std::optional<std::int64_t> lo; // nullopt = MIN
    std::optional<std::int64_t> hi; // nullopt = MAX
    std::int64_t code = 0;
};

// Two-level hierarchy: root + coded interval leaves. Applied at scan time,
// never materialized into tables.
ConceptHierarchy define_encoding(const std::string& name, const std::string& attribute,
                                 const std::vector<EncodingRange>& ranges,
                                 std::optional<std::int64_t> default_code);

struct LevelDef {
    int level = 1;                     // > 0
    Coverage coverage;                 // for leaf rows; inner nodes may use label-only rows
    std::optional<std::string> label;  // defaults to coverage.canonical()
    std::optional<std::int64_t> code;
    std::string parent_label = "ANY";  // label of the node one level up
};

// Normalized target of DMQL hierarchies, MineSQL taxonomies, and
// ODMQL-style concept sets.
ConceptHierarchy define_hierarchy(const std::string& name, const std::string& attribute,
                                  const std::vector<LevelDef>& levels);

using HierarchyPtr = std::shared_ptr<const ConceptHierarchy>;

} // namespace idb
