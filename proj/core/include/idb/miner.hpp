#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idb/descriptor.hpp"
#include "idb/rational.hpp"
#include "idb/relstore.hpp"
#include "idb/table.hpp"

namespace idb {

enum class Metric { Support, Confidence };
enum class Basis { Absolute, Relative };
enum class Comparator { Greater, GreaterEq };

struct Threshold {
    Metric metric = Metric::Support;
    Rational value;
    Basis basis = Basis::Relative;
    Comparator cmp = Comparator::GreaterEq;
};

// body-support: groups matching the body; rule-support: groups matching
// body + head. The dialects disagree, so it is a per-plan parameter.
enum class SupportSemantics { BodySupport, RuleSupport };

struct ComponentSchema {
    std::vector<std::string> attrs;
    int min_card = 1;
    std::optional<int> max_card; // nullopt = N (unbounded)
};

// Group-level filter used by HAVING: COUNT(*) compared against a constant.
struct GroupCountPredicate {
    CmpOp op = CmpOp::Ge;
    std::int64_t count = 0;
};

struct MinePlan {
    std::shared_ptr<const GroupedTable> source;
    ComponentSchema body;
    ComponentSchema head;
    std::vector<Threshold> thresholds; // at most one per metric
    Bindings bindings;
    SupportSemantics semantics = SupportSemantics::BodySupport;
    std::optional<std::vector<std::string>> cluster_keys;
    std::optional<GroupCountPredicate> group_filter;
    std::optional<GroupCountPredicate> cluster_filter;
};

struct Rule {
    DescriptorSet body;
    DescriptorSet head;
    std::int64_t group_count = 0;
    std::int64_t body_count = 0;
    std::int64_t rule_count = 0;

    Rational confidence() const { return Rational(rule_count, body_count); }
    Rational support(SupportSemantics sem, Basis basis) const;

    bool operator==(const Rule& o) const;
    // (|body| ascending, body lexicographic, head lexicographic)
    static bool canonical_less(const Rule& a, const Rule& b);
};

struct MineOptions {
    int workers = 1; // candidate counting may be partitioned; output is identical
};

void validate_plan(const MinePlan& plan);

// All descriptor sets over the schema's attributes within its cardinality whose
// group frequency >= min_count; hierarchy-bound attributes contribute concepts.
std::vector<std::pair<DescriptorSet, std::int64_t>> enumerate_frequent(
    const GroupedTable& groups, const ComponentSchema& schema, std::int64_t min_count,
    const Bindings& bindings, const MineOptions& options = {});

std::vector<Rule> mine_associations(const MinePlan& plan, const MineOptions& options = {});
std::vector<Rule> mine_clustered(const MinePlan& plan, const MineOptions& options = {});
// dispatch on plan.cluster_keys
std::vector<Rule> mine(const MinePlan& plan, const MineOptions& options = {});

// Exhaustive oracle with identical contract; guards at 20 distinct descriptors.
std::vector<Rule> brute_force_mine(const MinePlan& plan);

// Shared satisfaction primitive: every descriptor matched by some row of the
// group (key attributes included); concepts match raw values by coverage.
bool match_descriptors(const GroupedTable& data, std::size_t group_idx, const DescriptorSet& ds);
bool match_descriptors(const Schema& key_schema, const Row& key, const Schema& row_schema,
                       const std::vector<Row>& rows, const DescriptorSet& ds);

} // namespace idb
