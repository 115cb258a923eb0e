#include "idb/postproc.hpp"

#include <algorithm>

namespace idb {

RulePredicate RulePredicate::conj(std::vector<RulePredicate> cs) {
    RulePredicate p;
    p.kind = Kind::And;
    p.children = std::move(cs);
    return p;
}

RulePredicate RulePredicate::body_has(DescriptorSet ds) {
    RulePredicate p;
    p.kind = Kind::BodyHas;
    p.literal = std::move(ds);
    return p;
}

namespace {

const Rule* resolve_alias(const std::vector<std::pair<std::string, const Rule*>>& scope,
                          const std::string& alias) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (ci_equal(it->first, alias)) return it->second;
    fail(ErrorKind::Plan, "unresolvable rule correlation '" + alias + "'");
}

} // namespace

bool eval_rule_predicate(const RulePredicate& p, const Rule& r, const RuleTable& table,
                         const std::vector<std::pair<std::string, const Rule*>>& scope,
                         const RuleTableLookup& lookup) {
    switch (p.kind) {
        case RulePredicate::Kind::True:
            return true;
        case RulePredicate::Kind::And:
            for (const auto& c : p.children)
                if (!eval_rule_predicate(c, r, table, scope, lookup)) return false;
            return true;
        case RulePredicate::Kind::Or:
            for (const auto& c : p.children)
                if (eval_rule_predicate(c, r, table, scope, lookup)) return true;
            return false;
        case RulePredicate::Kind::Not:
            return !eval_rule_predicate(p.children.at(0), r, table, scope, lookup);
        case RulePredicate::Kind::BodyHas:
        case RulePredicate::Kind::BodyIs:
        case RulePredicate::Kind::HeadHas:
        case RulePredicate::Kind::HeadIs: {
            bool on_head =
                p.kind == RulePredicate::Kind::HeadHas || p.kind == RulePredicate::Kind::HeadIs;
            bool is_equality =
                p.kind == RulePredicate::Kind::BodyIs || p.kind == RulePredicate::Kind::HeadIs;
            const DescriptorSet& subject = on_head ? r.head : r.body;
            const DescriptorSet* object = &p.literal;
            if (p.corr_alias) {
                const Rule* corr = resolve_alias(scope, *p.corr_alias);
                object = p.corr_head ? &corr->head : &corr->body;
            }
            if (is_equality) return descriptor_set_compare(subject, *object) == 0;
            if (p.reversed) return descriptor_subset(subject, *object);
            return descriptor_subset(*object, subject); // HAS: subject contains the object set
        }
        case RulePredicate::Kind::MetricCmp: {
            Rational actual;
            if (p.metric == Metric::Confidence) {
                actual = r.confidence();
            } else {
                Basis basis = p.basis.value_or(table.style.display_basis);
                SupportSemantics sem = p.semantics.value_or(table.style.display_semantics);
                actual = r.support(sem, basis);
            }
            return apply_cmp(p.op, actual.compare(p.value));
        }
        case RulePredicate::Kind::NotExists: {
            std::shared_ptr<const RuleTable> nested_holder;
            const RuleTable* nested = &table;
            if (!p.nested_source.empty() && !ci_equal(p.nested_source, table.name)) {
                if (!lookup)
                    fail(ErrorKind::Plan,
                         "nested rule query references '" + p.nested_source + "' without a catalog");
                nested_holder = lookup(p.nested_source);
                if (!nested_holder)
                    fail(ErrorKind::Resolve, "unknown rule table '" + p.nested_source + "'");
                nested = nested_holder.get();
            }
            auto inner_scope = scope;
            for (const auto& cand : nested->rules) {
                inner_scope.push_back({p.nested_alias, &cand});
                bool hit = eval_rule_predicate(p.children.at(0), cand, *nested, inner_scope, lookup);
                inner_scope.pop_back();
                if (hit) return false;
            }
            return true;
        }
    }
    return false;
}

RuleTable select_rules(const RuleTable& rt, const RulePredicate& p, const std::string& alias,
                       const RuleTableLookup& lookup) {
    RuleTable out;
    out.name = "";
    out.style = rt.style;
    out.bindings = rt.bindings;
    out.plan_summary = "select_rules(" + rt.name + ")";
    std::vector<std::pair<std::string, const Rule*>> scope;
    for (const auto& r : rt.rules) {
        scope.clear();
        if (!alias.empty()) scope.push_back({alias, &r});
        if (eval_rule_predicate(p, r, rt, scope, lookup)) out.rules.push_back(r);
    }
    return out;
}

RuleTable maximal_rules(const RuleTable& rt) {
    RuleTable out;
    out.name = "";
    out.style = rt.style;
    out.bindings = rt.bindings;
    out.plan_summary = "maximal_rules(" + rt.name + ")";
    for (const auto& r : rt.rules) {
        bool dominated = false;
        for (const auto& o : rt.rules) {
            if (descriptor_set_compare(o.head, r.head) != 0) continue;
            if (descriptor_set_compare(o.body, r.body) == 0) continue;
            if (descriptor_subset(r.body, o.body)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.rules.push_back(r);
    }
    return out;
}

RulePredicate maximality_predicate(const std::string& outer_alias, const std::string& inner_alias) {
    // NOT EXISTS (same table AS inner WHERE inner.BODY HAS outer.BODY
    //             AND NOT (inner.BODY IS outer.BODY)
    //             AND inner.CONSEQUENT IS outer.CONSEQUENT)
    RulePredicate has;
    has.kind = RulePredicate::Kind::BodyHas;
    has.corr_alias = outer_alias;

    RulePredicate is_same;
    is_same.kind = RulePredicate::Kind::BodyIs;
    is_same.corr_alias = outer_alias;
    RulePredicate not_same;
    not_same.kind = RulePredicate::Kind::Not;
    not_same.children.push_back(std::move(is_same));

    RulePredicate same_head;
    same_head.kind = RulePredicate::Kind::HeadIs;
    same_head.corr_alias = outer_alias;
    same_head.corr_head = true;

    RulePredicate inner = RulePredicate::conj({std::move(has), std::move(not_same), std::move(same_head)});

    RulePredicate ne;
    ne.kind = RulePredicate::Kind::NotExists;
    ne.nested_alias = inner_alias;
    ne.children.push_back(std::move(inner));
    return ne;
}

bool group_satisfies(const GroupedTable& data, std::size_t group_idx, const Rule& r) {
    return match_descriptors(data, group_idx, r.body) && match_descriptors(data, group_idx, r.head);
}

bool group_violates(const GroupedTable& data, std::size_t group_idx, const Rule& r,
                    ViolationSemantics v) {
    if (v == ViolationSemantics::NonSatisfaction) return !group_satisfies(data, group_idx, r);
    return match_descriptors(data, group_idx, r.body) && !match_descriptors(data, group_idx, r.head);
}

Table crossover(const GroupedTable& data, const std::vector<Rule>& rules, const CrossOverMode& mode) {
    Table out;
    out.schema = data.key_schema;
    for (std::size_t g = 0; g < data.groups.size(); ++g) {
        auto test = [&](const Rule& r) {
            return mode.op == CrossOp::Satisfies ? group_satisfies(data, g, r)
                                                 : group_violates(data, g, r, mode.violation);
        };
        bool pass;
        if (mode.quantifier == Quantifier::All) {
            pass = true; // empty rule set: vacuous truth, documented
            for (const auto& r : rules) pass = pass && test(r);
        } else {
            pass = false;
            for (const auto& r : rules) pass = pass || test(r);
        }
        if (pass) out.rows.push_back(data.groups[g].key);
    }
    std::sort(out.rows.begin(), out.rows.end(), [](const Row& a, const Row& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = Value::total_order(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    return out;
}

} // namespace idb
