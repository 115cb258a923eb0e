#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idb/rulestore.hpp"

namespace idb {

enum class CrossOp { Satisfies, Violates };
enum class Quantifier { All, Any };
// non-satisfaction: violates(g,r) = !(body and head both match);
// strict: body matches but head does not.
enum class ViolationSemantics { NonSatisfaction, Strict };

struct CrossOverMode {
    CrossOp op = CrossOp::Violates;
    Quantifier quantifier = Quantifier::All;
    ViolationSemantics violation = ViolationSemantics::NonSatisfaction;
};

// Selection predicate over rules: BODY/CONSEQUENT HAS/IS atoms (literal set or
// a correlated reference to an enclosing rule), metric comparisons, boolean
// connectives, and NOT EXISTS over a nested rule query.
struct RulePredicate {
    enum class Kind { True, And, Or, Not, BodyHas, BodyIs, HeadHas, HeadIs, MetricCmp, NotExists };

    Kind kind = Kind::True;
    std::vector<RulePredicate> children;

    // *Has / *Is
    DescriptorSet literal;
    std::optional<std::string> corr_alias; // compare against that rule's corresponding side
    bool corr_head = false;                // alias.CONSEQUENT instead of alias.BODY
    bool reversed = false;                 // HAS direction flipped: subject ⊆ object

    // MetricCmp
    Metric metric = Metric::Support;
    CmpOp op = CmpOp::Gt;
    Rational value;
    std::optional<Basis> basis;                 // defaults to the table's display basis
    std::optional<SupportSemantics> semantics;  // defaults to the table's display semantics

    // NotExists
    std::string nested_source; // empty = same table
    std::string nested_alias;

    static RulePredicate truth() { return {}; }
    static RulePredicate conj(std::vector<RulePredicate> cs);
    static RulePredicate body_has(DescriptorSet ds);
};

using RuleTableLookup = std::function<std::shared_ptr<const RuleTable>(const std::string&)>;

bool eval_rule_predicate(const RulePredicate& p, const Rule& r, const RuleTable& table,
                         const std::vector<std::pair<std::string, const Rule*>>& scope,
                         const RuleTableLookup& lookup);

// Rules satisfying p, original order preserved; the result is itself a
// RuleTable (closure).
RuleTable select_rules(const RuleTable& rt, const RulePredicate& p,
                       const std::string& alias = "", const RuleTableLookup& lookup = {});

// Rules whose body is a proper subset of no other body with the same head.
RuleTable maximal_rules(const RuleTable& rt);

// The nested NOT EXISTS predicate equivalent to maximal_rules (cross-check).
RulePredicate maximality_predicate(const std::string& outer_alias, const std::string& inner_alias);

bool group_satisfies(const GroupedTable& data, std::size_t group_idx, const Rule& r);
bool group_violates(const GroupedTable& data, std::size_t group_idx, const Rule& r,
                    ViolationSemantics v);

// Groups passing the quantified test; output is the key column(s), sorted.
Table crossover(const GroupedTable& data, const std::vector<Rule>& rules, const CrossOverMode& mode);

} // namespace idb
