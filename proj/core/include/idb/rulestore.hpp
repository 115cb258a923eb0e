#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "idb/miner.hpp"
#include "idb/table.hpp"

namespace idb {

enum class Dialect { Msql, Dmql, MineRule, MineSql };

const char* dialect_name(Dialect d);

// How a rule table prints: which dialect's conventions, which support basis the
// displayed support column uses, and the surface text of encoded attributes
// ("TRUNC(income,2)", a taxonomy alias like "income_h").
struct RuleStyle {
    Dialect dialect = Dialect::Msql;
    SupportSemantics display_semantics = SupportSemantics::BodySupport;
    Basis display_basis = Basis::Absolute;
    std::map<std::string, std::string, CiLess> surface;

    static RuleStyle defaults(Dialect d);
};

// Rules as a first-class, re-queryable value (closure property): a RuleTable
// is accepted anywhere a Table is via as_table().
struct RuleTable {
    std::string name;
    std::vector<Rule> rules;
    RuleStyle style;
    Bindings bindings;
    std::string plan_summary;
    bool declared_placeholder = false; // CREATE TABLE (… RULE …) before any INSERT … MINE

    Table as_table() const;
};

enum class RuleFormat { Canonical, Msql, Dmql, MineRule, MineSql };

std::string render_rule(const Rule& r, const RuleStyle& style, RuleFormat format);
// format chosen from style.dialect
std::string render_rule(const Rule& r, const RuleStyle& style);

enum class RuleMetricKind { Body, Head, Support, Confidence };

struct RuleMetricQuery {
    RuleMetricKind kind = RuleMetricKind::Support;
    Basis basis = Basis::Relative;                            // for Support
    SupportSemantics semantics = SupportSemantics::RuleSupport; // for Support
};

std::variant<DescriptorSet, Rational> rule_metric(const Rule& r, const RuleMetricQuery& q);

// CSV per row: body, head, body_count, rule_count, group_count, confidence.
void export_rules_csv(const RuleTable& rt, std::ostream& out);

struct NormalizedExport {
    Table rules;  // id_r, id_b, id_h, support, confidence, group_count, body_count, rule_count
    Table bodies; // id_b, attribute, value (one id per distinct body, shared)
    Table heads;  // id_h, attribute, value
};

NormalizedExport export_normalized(const RuleTable& rt);
// companion line-delimited text files <base>.rules/.bodies/.heads
void export_normalized_files(const RuleTable& rt, const std::string& base_path);

// Rebuild the rule rows by joining the three tables (round-trip check).
std::vector<Rule> reconstruct_normalized(const NormalizedExport& ex);

} // namespace idb
