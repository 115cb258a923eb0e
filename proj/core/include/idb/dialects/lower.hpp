#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "idb/catalog.hpp"
#include "idb/dialects/ast.hpp"
#include "idb/postproc.hpp"

namespace idb::dsl {

// Session-scoped context lowering consults: DMQL USE HIERARCHY bindings and
// the active database name.
struct SessionDefaults {
    std::map<std::string, std::string, CiLess> dmql_hierarchies; // attribute -> hierarchy
    std::string active_database;
};

struct HierarchyDefPlan {
    ConceptHierarchy hierarchy;
};

struct DataQueryPlan {
    Table table;                        // materialized, group keys included
    std::vector<std::string> group_keys;
    std::vector<std::string> display;   // attributes to print (projection as written)
    std::optional<std::string> into;
    bool is_view = false;
};

struct MineExecPlan {
    MinePlan plan;
    RuleStyle style;
    std::optional<std::string> into;
    std::string summary;
};

struct SelectRulesPlan {
    std::string source;
    std::string alias;
    RulePredicate predicate;
    std::vector<RuleAccessorKind> accessors; // empty = whole rules
    std::optional<std::string> into;
};

struct CrossOverPlan {
    std::shared_ptr<const GroupedTable> data;
    std::string rules_source;
    RulePredicate rule_filter;
    std::string rule_alias;
    CrossOverMode mode;
    std::vector<std::string> projection; // key attributes to output (empty = all keys)
    std::optional<std::string> into;
};

struct UseDatabasePlan {
    std::string name;
};

struct UseHierarchyPlan {
    std::string hierarchy;
    std::string attr;
};

struct DeclareRuleTablePlan {
    std::string name;
};

using LogicalPlan = std::variant<HierarchyDefPlan, DataQueryPlan, MineExecPlan, SelectRulesPlan,
                                 CrossOverPlan, UseDatabasePlan, UseHierarchyPlan,
                                 DeclareRuleTablePlan>;

LogicalPlan lower_to_plan(const ParsedStatement& stmt, const CatalogSnapshot& catalog,
                          const SessionDefaults& defaults = {});

bool plans_equal(const LogicalPlan& a, const LogicalPlan& b);

// Re-thresholding used by the cross-dialect equivalence check: replaces a mine
// plan's semantics and thresholds with a common configuration.
void override_thresholds(MineExecPlan& plan, SupportSemantics semantics,
                         const std::vector<Threshold>& thresholds);

} // namespace idb::dsl
