#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "idb/miner.hpp"
#include "idb/rulestore.hpp"

namespace idb::dsl {

struct QualIdent {
    std::string qualifier; // table alias, may be empty
    std::string name;
    Span span;

    std::string text() const { return qualifier.empty() ? name : qualifier + "." + name; }
    bool operator==(const QualIdent& o) const {
        return ci_equal(qualifier, o.qualifier) && ci_equal(name, o.name);
    }
};

struct TableRef {
    std::string name;
    std::string alias; // empty = none
    Span span;
    bool operator==(const TableRef& o) const {
        return ci_equal(name, o.name) && ci_equal(alias, o.alias);
    }
};

struct LiteralAst {
    enum class Kind { Int, Real, Str, Star };
    Kind kind = Kind::Int;
    std::int64_t i = 0;
    std::string text; // exact spelling for reals/strings
    Span span;

    Value to_value() const;
    bool operator==(const LiteralAst& o) const;
};

// attribute <op> literal, or attribute = attribute (join condition)
struct CondAtom {
    QualIdent lhs;
    CmpOp op = CmpOp::Eq;
    std::variant<LiteralAst, QualIdent> rhs;
    Span span;
    bool operator==(const CondAtom& o) const;
};

struct PivotAst {
    std::string item_attr;
    std::string key_attr;
    Span span;
    bool operator==(const PivotAst& o) const {
        return ci_equal(item_attr, o.item_attr) && ci_equal(key_attr, o.key_attr);
    }
};

// Shared mini-SQL SELECT core: projection over joined tables with conjunctive
// conditions, optional grouping, optional item pivot.
struct DataSelectAst {
    std::vector<QualIdent> projection; // empty = *
    bool set_marker = false;           // SELECT SET(attr), ... (first projection is the collected one)
    std::vector<TableRef> from;
    std::vector<CondAtom> where;
    std::vector<QualIdent> group_by;
    std::optional<PivotAst> pivot;
    bool operator==(const DataSelectAst& o) const;
};

struct CreateViewStmt {
    std::string name;
    DataSelectAst select;
    Span span;
    bool operator==(const CreateViewStmt& o) const {
        return ci_equal(name, o.name) && select == o.select;
    }
};

struct SelectDataStmt {
    DataSelectAst select;
    std::optional<std::string> into;
    bool operator==(const SelectDataStmt& o) const;
};

// ---- MSQL ----

struct EncodingRangeAst {
    std::optional<std::int64_t> lo, hi; // nullopt = MIN/MAX
    std::int64_t code = 0;
    Span span;
    bool operator==(const EncodingRangeAst& o) const {
        return lo == o.lo && hi == o.hi && code == o.code;
    }
};

struct MsqlEncodingStmt {
    std::string name;
    std::string table; // qualifier of ON <table>.<attr>
    std::string attr;
    std::vector<EncodingRangeAst> ranges;
    std::int64_t default_code = 0;
    Span span;
    bool operator==(const MsqlEncodingStmt& o) const;
};

// (A=1), (INCOME=*) inside a braced descriptor set
struct DescriptorAtomAst {
    std::string name;
    LiteralAst value;
    Span span;
    bool operator==(const DescriptorAtomAst& o) const {
        return ci_equal(name, o.name) && value == o.value;
    }
};

enum class ShapeKind { BodyHas, BodyIs, ConsequentIs, ConsequentHas };

struct RuleShapeCond {
    ShapeKind kind = ShapeKind::BodyHas;
    std::vector<DescriptorAtomAst> atoms;
    Span span;
    bool operator==(const RuleShapeCond& o) const;
};

struct MetricCondAst {
    Metric metric = Metric::Support;
    CmpOp op = CmpOp::Gt;
    Rational value;
    std::string value_text; // original spelling ("0.25", "25%")
    Span span;
    bool operator==(const MetricCondAst& o) const {
        return metric == o.metric && op == o.op && value == o.value;
    }
};

struct MsqlGetRulesStmt {
    std::string source;
    std::string into;
    std::vector<RuleShapeCond> shape;
    std::vector<MetricCondAst> metrics;
    std::optional<std::pair<std::string, std::string>> using_enc; // (encoding, attribute)
    Span span;
    bool operator==(const MsqlGetRulesStmt& o) const;
};

// Rule-selection predicate tree as written (aliases unresolved).
struct RulePredAst {
    enum class Kind { True, And, Or, Not, Shape, MetricCmp, NotExists };
    Kind kind = Kind::True;
    std::vector<RulePredAst> children;

    // Shape: BODY/CONSEQUENT HAS/IS <object>
    bool on_head = false;
    bool is_equality = false;                 // IS vs HAS
    std::string subject_alias;                // optional "R2." qualifier
    std::vector<DescriptorAtomAst> literal;   // {…} literal set
    std::optional<QualIdent> corr;            // R1.BODY / R1.CONSEQUENT
    bool corr_head = false;
    bool proper = false;                      // BODY(a) IN BODY(b): proper-subset reading
    bool reversed = false;                    // subject is a subset of the correlated side

    // MetricCmp
    std::string metric_alias;
    Metric metric = Metric::Support;
    CmpOp op = CmpOp::Gt;
    Rational value;
    std::string value_text;

    // NotExists
    std::string nested_source;
    std::string nested_alias;

    Span span;
    bool operator==(const RulePredAst& o) const;
};

struct SelectRulesStmt {
    std::string source;
    std::string alias;
    RulePredAst where;
    std::optional<std::string> into;
    Span span;
    bool operator==(const SelectRulesStmt& o) const;
};

struct MsqlCrossoverStmt {
    std::optional<std::string> into;
    std::string from_table;
    CrossOp op = CrossOp::Violates;
    Quantifier quantifier = Quantifier::All;
    bool strict = false;
    SelectRulesStmt rule_select;
    Span span;
    bool operator==(const MsqlCrossoverStmt& o) const;
};

// ---- DMQL ----

struct DmqlUseDatabaseStmt {
    std::string name;
    Span span;
    bool operator==(const DmqlUseDatabaseStmt& o) const { return ci_equal(name, o.name); }
};

struct DmqlUseHierarchyStmt {
    std::string hierarchy;
    std::string attr;
    Span span;
    bool operator==(const DmqlUseHierarchyStmt& o) const {
        return ci_equal(hierarchy, o.hierarchy) && ci_equal(attr, o.attr);
    }
};

struct CoverageAst {
    bool is_interval = true;
    std::optional<std::int64_t> lo, hi; // nullopt = MIN/MAX
    std::vector<std::string> values;
    Span span;
    bool operator==(const CoverageAst& o) const;
};

struct DmqlLevelLine {
    int level = 1;
    CoverageAst coverage;
    int parent_level = 0;
    std::string parent_label; // "ALL" or a concept label
    Span span;
    bool operator==(const DmqlLevelLine& o) const;
};

struct DmqlHierarchyStmt {
    std::string name;
    std::string attr;
    std::optional<std::string> on_table; // recorded, not binding
    std::vector<DmqlLevelLine> levels;
    Span span;
    bool operator==(const DmqlHierarchyStmt& o) const;
};

struct MetapatternSide {
    std::string attr;
    bool plus = false; // attr+ : one or more
    bool operator==(const MetapatternSide& o) const {
        return ci_equal(attr, o.attr) && plus == o.plus;
    }
};

struct DmqlFindStmt {
    std::optional<std::string> use_database;
    std::vector<DmqlUseHierarchyStmt> use_hierarchies;
    std::optional<std::string> as_name;
    std::optional<std::pair<MetapatternSide, MetapatternSide>> metapattern;
    DataSelectAst select;
    std::vector<MetricCondAst> thresholds;
    bool had_order_by = false;
    Span span;
    bool operator==(const DmqlFindStmt& o) const;
};

// ---- MINE RULE ----

struct CardSpecAst {
    int min = 1;
    std::optional<int> max; // nullopt = N
    bool operator==(const CardSpecAst& o) const { return min == o.min && max == o.max; }
};

struct AttrExprAst {
    std::string attr;
    std::optional<int> trunc_digits; // TRUNC(attr, n)
    Span span;
    std::string surface() const;
    bool operator==(const AttrExprAst& o) const {
        return ci_equal(attr, o.attr) && trunc_digits == o.trunc_digits;
    }
};

struct GroupHavingAst {
    CmpOp op = CmpOp::Ge;
    std::int64_t count = 0;
    Span span;
    bool operator==(const GroupHavingAst& o) const { return op == o.op && count == o.count; }
};

struct MineRuleStmt {
    std::string name;
    CardSpecAst body_card, head_card;
    std::vector<AttrExprAst> body_attrs, head_attrs;
    bool select_support = false, select_confidence = false;
    bool had_mining_where = false; // rule-element WHERE: accepted, ignored with a diagnostic
    DataSelectAst select;          // FROM/WHERE; group_by lives here too
    std::optional<GroupHavingAst> having;
    std::vector<QualIdent> cluster_by;
    std::optional<GroupHavingAst> cluster_having;
    MetricCondAst ext_support, ext_confidence;
    bool has_ext_confidence = false;
    Span span;
    bool operator==(const MineRuleStmt& o) const;
};

// ---- MineSQL ----

struct TaxonomyLeafAst {
    CoverageAst coverage;
    std::int64_t code = 0;
    Span span;
    bool operator==(const TaxonomyLeafAst& o) const {
        return coverage == o.coverage && code == o.code;
    }
};

struct MineSqlTaxonomyStmt {
    std::string name;
    std::optional<std::string> node_label;
    std::vector<TaxonomyLeafAst> leaves;
    Span span;
    bool operator==(const MineSqlTaxonomyStmt& o) const;
};

struct MineSqlCreateTableStmt {
    std::string name;
    std::string rule_col;
    Span span;
    bool operator==(const MineSqlCreateTableStmt& o) const {
        return ci_equal(name, o.name) && ci_equal(rule_col, o.rule_col);
    }
};

enum class MineExprKind { RuleExpr, Support, Confidence, Body, Head };

struct ForToEntry {
    std::string attr;
    std::optional<std::string> using_taxonomy;
    std::optional<std::string> alias;
    Span span;
    bool operator==(const ForToEntry& o) const;
};

struct MineSqlMineStmt {
    std::optional<std::string> insert_into;
    std::optional<std::string> insert_col;
    std::vector<MineExprKind> exprs;
    std::vector<ForToEntry> body, head;
    DataSelectAst nested;
    std::vector<MetricCondAst> where_metrics;
    bool had_order_by = false;
    Span span;
    bool operator==(const MineSqlMineStmt& o) const;
};

enum class RuleAccessorKind { Star, Body, Head, Support, Confidence, RuleText };

struct RuleAccessorAst {
    RuleAccessorKind kind = RuleAccessorKind::Star;
    Span span;
    bool operator==(const RuleAccessorAst& o) const { return kind == o.kind; }
};

// SELECT <accessors|*> FROM <ruletable> <alias> [WHERE …] — rule selection and
// accessor queries share this node.
struct MineSqlRuleQueryStmt {
    std::vector<RuleAccessorAst> accessors; // empty = *
    std::string source;
    std::string alias;
    std::string rule_col; // column name used in BODY(alias.col); display only
    RulePredAst where;
    std::optional<std::string> into;
    Span span;
    bool operator==(const MineSqlRuleQueryStmt& o) const;
};

struct MineSqlCrossStmt {
    std::vector<QualIdent> projection; // outer SELECT list (key attributes)
    TableRef outer;
    MineSqlRuleQueryStmt rule_query; // the parenthesized rule subquery
    CrossOp op = CrossOp::Violates;
    bool strict = false;
    DataSelectAst data; // the parenthesized data subquery; correlation removed
    std::optional<QualIdent> correlation_key; // inner attribute equated with the outer key
    Span span;
    bool operator==(const MineSqlCrossStmt& o) const;
};

using StatementNode =
    std::variant<CreateViewStmt, SelectDataStmt, MsqlEncodingStmt, MsqlGetRulesStmt,
                 SelectRulesStmt, MsqlCrossoverStmt, DmqlUseDatabaseStmt, DmqlUseHierarchyStmt,
                 DmqlHierarchyStmt, DmqlFindStmt, MineRuleStmt, MineSqlTaxonomyStmt,
                 MineSqlCreateTableStmt, MineSqlMineStmt, MineSqlRuleQueryStmt, MineSqlCrossStmt>;

struct ParsedStatement {
    Dialect dialect = Dialect::Msql;
    StatementNode node;
    std::vector<std::string> diagnostics; // accepted-and-ignored clauses etc.
};

bool ast_equal(const ParsedStatement& a, const ParsedStatement& b);

} // namespace idb::dsl
