#include "idb/dialects/lower.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "idb/relstore.hpp"

namespace idb::dsl {

namespace {

struct ResolvedSource {
    Table table;
    std::vector<std::string> group_keys;
    std::vector<std::string> display;
};

Table table_of(const CatalogSnapshot& cat, const std::string& name, Span span) {
    if (auto t = cat.find_table(name)) return t->table;
    if (auto rt = cat.find_ruletable(name)) return rt->as_table(); // closure
    fail(ErrorKind::Resolve, "unknown table '" + name + "'", span);
}

// Resolves unqualified attributes across the FROM tables; ambiguity is an error.
struct Scope {
    struct Entry {
        std::string alias;
        std::string table_name;
        const Schema* schema;
    };
    std::vector<Entry> entries;

    std::string resolve(const QualIdent& q) const {
        if (!q.qualifier.empty()) {
            for (const auto& e : entries) {
                if (ci_equal(e.alias, q.qualifier) || ci_equal(e.table_name, q.qualifier)) {
                    if (!e.schema->find(q.name))
                        fail(ErrorKind::Resolve,
                             "table '" + q.qualifier + "' has no attribute '" + q.name + "'", q.span);
                    return to_lower(q.name);
                }
            }
            fail(ErrorKind::Resolve, "unknown table or alias '" + q.qualifier + "'", q.span);
        }
        int hits = 0;
        for (const auto& e : entries)
            if (e.schema->find(q.name)) ++hits;
        if (hits == 0) fail(ErrorKind::Resolve, "unknown attribute '" + q.name + "'", q.span);
        if (hits > 1)
            fail(ErrorKind::Resolve, "ambiguous unqualified attribute '" + q.name + "'", q.span);
        return to_lower(q.name);
    }

    const Entry* entry_of(const QualIdent& q) const {
        if (!q.qualifier.empty()) {
            for (const auto& e : entries)
                if (ci_equal(e.alias, q.qualifier) || ci_equal(e.table_name, q.qualifier)) return &e;
            return nullptr;
        }
        for (const auto& e : entries)
            if (e.schema->find(q.name)) return &e;
        return nullptr;
    }
};

// Executes the mini-SQL core: joins in FROM order via attr=attr conditions,
// conjunctive filters, projection (group keys retained), optional pivot.
ResolvedSource run_data_select(const DataSelectAst& sel, const CatalogSnapshot& cat) {
    if (sel.from.empty()) fail(ErrorKind::Parse, "FROM clause required");
    std::vector<Table> tables;
    Scope scope;
    for (const auto& ref : sel.from) {
        tables.push_back(table_of(cat, ref.name, ref.span));
    }
    for (std::size_t i = 0; i < sel.from.size(); ++i)
        scope.entries.push_back({sel.from[i].alias.empty() ? sel.from[i].name : sel.from[i].alias,
                                 sel.from[i].name, &tables[i].schema});

    // split conditions into joins (attr = attr across tables) and filters
    struct JoinCond {
        std::size_t left_tbl, right_tbl;
        std::string left_attr, right_attr;
    };
    std::vector<JoinCond> joins;
    RowPredicate pred;
    for (const auto& atom : sel.where) {
        if (std::holds_alternative<QualIdent>(atom.rhs)) {
            const QualIdent& rhs = std::get<QualIdent>(atom.rhs);
            const Scope::Entry* le = scope.entry_of(atom.lhs);
            const Scope::Entry* re = scope.entry_of(rhs);
            if (!le) fail(ErrorKind::Resolve, "unknown attribute '" + atom.lhs.text() + "'", atom.lhs.span);
            if (!re) fail(ErrorKind::Resolve, "unknown attribute '" + rhs.text() + "'", rhs.span);
            if (le != re) {
                if (atom.op != CmpOp::Eq)
                    fail(ErrorKind::Plan, "join conditions must be equalities", atom.span);
                std::size_t li = static_cast<std::size_t>(le - scope.entries.data());
                std::size_t ri = static_cast<std::size_t>(re - scope.entries.data());
                scope.resolve(atom.lhs);
                scope.resolve(rhs);
                if (li == ri) fail(ErrorKind::Plan, "self-join conditions are not supported", atom.span);
                JoinCond jc;
                jc.left_tbl = std::min(li, ri);
                jc.right_tbl = std::max(li, ri);
                jc.left_attr = to_lower(li < ri ? atom.lhs.name : rhs.name);
                jc.right_attr = to_lower(li < ri ? rhs.name : atom.lhs.name);
                joins.push_back(std::move(jc));
                continue;
            }
            fail(ErrorKind::Plan, "attribute-to-attribute conditions within one table are not supported",
                 atom.span);
        }
        Condition c;
        c.attr = scope.resolve(atom.lhs);
        c.op = atom.op;
        c.literal = std::get<LiteralAst>(atom.rhs).to_value();
        pred.conditions.push_back(std::move(c));
    }

    // left-fold join
    Table acc = tables[0];
    for (std::size_t t = 1; t < tables.size(); ++t) {
        std::vector<std::pair<std::string, std::string>> on;
        for (const auto& jc : joins)
            if (jc.right_tbl == t && jc.left_tbl < t) on.push_back({jc.left_attr, jc.right_attr});
        if (on.empty())
            fail(ErrorKind::Plan,
                 "no join condition connects table '" + sel.from[t].name + "' to the preceding tables",
                 sel.from[t].span);
        acc = equijoin(acc, table_of(cat, sel.from[t].name, sel.from[t].span), on);
    }

    // filters
    std::vector<std::string> all_attrs;
    for (const auto& a : acc.schema.attrs()) all_attrs.push_back(a.name);
    acc = filter(acc, pred, all_attrs);

    // projection (group keys are kept in the materialized table)
    ResolvedSource out;
    std::vector<std::string> proj;
    if (sel.projection.empty()) {
        proj = all_attrs;
        out.display = all_attrs;
    } else {
        for (const auto& q : sel.projection) {
            scope.resolve(q);
            // resolve against the joined schema (qualifiers already validated)
            proj.push_back(to_lower(q.name));
        }
        out.display = proj;
    }
    for (const auto& q : sel.group_by) {
        scope.resolve(q);
        std::string name = to_lower(q.name);
        out.group_keys.push_back(name);
        if (std::find_if(proj.begin(), proj.end(), [&](const std::string& x) {
                return ci_equal(x, name);
            }) == proj.end())
            proj.push_back(name);
    }
    out.table = project(acc, proj);

    if (sel.pivot) {
        std::string key = to_lower(sel.pivot->key_attr);
        std::string item = to_lower(sel.pivot->item_attr);
        out.table.schema.require(key, sel.pivot->span);
        out.table.schema.require(item, sel.pivot->span);
        std::vector<std::string> carry;
        for (const auto& a : out.table.schema.attrs())
            if (!ci_equal(a.name, key) && !ci_equal(a.name, item)) carry.push_back(a.name);
        out.table = pivot_items(out.table, key, item, carry);
        out.display.clear();
        for (const auto& a : out.table.schema.attrs()) out.display.push_back(a.name);
        out.group_keys.clear();
        out.group_keys.push_back(key);
    }
    return out;
}

std::shared_ptr<const GroupedTable> group_source(const ResolvedSource& src, Span span) {
    if (src.group_keys.empty())
        fail(ErrorKind::Plan, "a grouped source is required (add GROUP BY)", span);
    return std::make_shared<GroupedTable>(group_rows(src.table, src.group_keys));
}

Threshold make_threshold(const MetricCondAst& m, Basis basis, Comparator fallback_cmp) {
    Threshold t;
    t.metric = m.metric;
    t.value = m.value;
    t.basis = m.metric == Metric::Confidence ? Basis::Relative : basis;
    switch (m.op) {
        case CmpOp::Gt: t.cmp = Comparator::Greater; break;
        case CmpOp::Ge: t.cmp = Comparator::GreaterEq; break;
        default: t.cmp = fallback_cmp; break;
    }
    return t;
}

DescriptorSet lower_descriptor_atoms(const std::vector<DescriptorAtomAst>& atoms,
                                     const RuleTable& rt) {
    // Atom (name=value): if name is a descriptor attribute of the table's rule
    // universe, it is (name, value); an item-flag spelling (X=1) where X is an
    // item value maps to (item-attribute, 'X').
    std::set<std::string, CiLess> attrs;
    std::string text_attr;
    for (const auto& r : rt.rules) {
        for (const auto& d : r.body) {
            attrs.insert(d.attr);
            if (!d.is_concept() && d.value().is_text()) text_attr = d.attr;
        }
        for (const auto& d : r.head) attrs.insert(d.attr);
    }
    DescriptorSet out;
    for (const auto& atom : atoms) {
        Descriptor d;
        if (attrs.count(atom.name)) {
            d.attr = to_lower(atom.name);
            if (atom.value.kind == LiteralAst::Kind::Star)
                fail(ErrorKind::Plan, "'*' descriptors are mining-shape syntax, not predicates",
                     atom.span);
            d.val = atom.value.to_value();
        } else if (atom.value.kind == LiteralAst::Kind::Int && atom.value.i == 1 && !text_attr.empty()) {
            d.attr = to_lower(text_attr);
            d.val = Value::text(atom.name);
        } else {
            fail(ErrorKind::Resolve,
                 "descriptor attribute '" + atom.name + "' does not occur in rule table '" +
                     rt.name + "'",
                 atom.span);
        }
        out.push_back(std::move(d));
    }
    return make_descriptor_set(std::move(out));
}

RulePredicate lower_rule_pred(const RulePredAst& ast, const RuleTable& rt,
                              const std::string& current_alias,
                              std::vector<std::string>& alias_stack,
                              const CatalogSnapshot& cat) {
    RulePredicate out;
    switch (ast.kind) {
        case RulePredAst::Kind::True:
            out.kind = RulePredicate::Kind::True;
            return out;
        case RulePredAst::Kind::And:
        case RulePredAst::Kind::Or:
        case RulePredAst::Kind::Not: {
            out.kind = ast.kind == RulePredAst::Kind::And ? RulePredicate::Kind::And
                       : ast.kind == RulePredAst::Kind::Or ? RulePredicate::Kind::Or
                                                           : RulePredicate::Kind::Not;
            for (const auto& c : ast.children)
                out.children.push_back(lower_rule_pred(c, rt, current_alias, alias_stack, cat));
            return out;
        }
        case RulePredAst::Kind::Shape: {
            if (!ast.subject_alias.empty() && !ci_equal(ast.subject_alias, current_alias))
                fail(ErrorKind::Resolve,
                     "predicate subject '" + ast.subject_alias + "' is not the current selection",
                     ast.span);
            if (ast.proper) {
                // HAS + NOT IS expansion
                RulePredAst has = ast;
                has.proper = false;
                RulePredAst is = ast;
                is.proper = false;
                is.is_equality = true;
                RulePredicate l_has = lower_rule_pred(has, rt, current_alias, alias_stack, cat);
                RulePredicate l_is = lower_rule_pred(is, rt, current_alias, alias_stack, cat);
                RulePredicate not_is;
                not_is.kind = RulePredicate::Kind::Not;
                not_is.children.push_back(std::move(l_is));
                out.kind = RulePredicate::Kind::And;
                out.children.push_back(std::move(l_has));
                out.children.push_back(std::move(not_is));
                return out;
            }
            if (ast.on_head)
                out.kind = ast.is_equality ? RulePredicate::Kind::HeadIs : RulePredicate::Kind::HeadHas;
            else
                out.kind = ast.is_equality ? RulePredicate::Kind::BodyIs : RulePredicate::Kind::BodyHas;
            out.reversed = ast.reversed;
            if (ast.corr) {
                const std::string& alias = ast.corr->qualifier.empty() ? ast.corr->name
                                                                       : ast.corr->qualifier;
                bool known = ci_equal(alias, current_alias);
                for (const auto& a : alias_stack) known = known || ci_equal(a, alias);
                if (!known)
                    fail(ErrorKind::Resolve, "unresolvable rule correlation '" + alias + "'",
                         ast.corr->span);
                if (ci_equal(alias, current_alias))
                    fail(ErrorKind::Resolve,
                         "correlation '" + alias + "' refers to the current selection", ast.corr->span);
                out.corr_alias = alias;
                out.corr_head = ast.corr_head;
            } else {
                out.literal = lower_descriptor_atoms(ast.literal, rt);
            }
            return out;
        }
        case RulePredAst::Kind::MetricCmp: {
            if (!ast.metric_alias.empty() && !ci_equal(ast.metric_alias, current_alias)) {
                bool known = false;
                for (const auto& a : alias_stack) known = known || ci_equal(a, ast.metric_alias);
                if (!known)
                    fail(ErrorKind::Resolve,
                         "unresolvable rule correlation '" + ast.metric_alias + "'", ast.span);
                // metric of an outer rule: not needed by any worked query
                fail(ErrorKind::Plan, "metric comparisons apply to the current selection", ast.span);
            }
            out.kind = RulePredicate::Kind::MetricCmp;
            out.metric = ast.metric;
            out.op = ast.op;
            out.value = ast.value;
            return out;
        }
        case RulePredAst::Kind::NotExists: {
            out.kind = RulePredicate::Kind::NotExists;
            out.nested_source = to_lower(ast.nested_source);
            out.nested_alias = ast.nested_alias;
            const RuleTable* nested = &rt;
            std::shared_ptr<const RuleTable> holder;
            if (!ci_equal(ast.nested_source, rt.name)) {
                holder = cat.find_ruletable(ast.nested_source);
                if (!holder)
                    fail(ErrorKind::Resolve, "unknown rule table '" + ast.nested_source + "'",
                         ast.span);
                nested = holder.get();
            }
            alias_stack.push_back(current_alias);
            out.children.push_back(
                lower_rule_pred(ast.children.at(0), *nested, ast.nested_alias, alias_stack, cat));
            alias_stack.pop_back();
            return out;
        }
    }
    return out;
}

std::string summarize(const MinePlan& plan, Dialect d) {
    std::ostringstream out;
    out << dialect_name(d) << " mine: body={";
    for (std::size_t i = 0; i < plan.body.attrs.size(); ++i)
        out << (i ? "," : "") << to_lower(plan.body.attrs[i]);
    out << "} " << plan.body.min_card << "..";
    if (plan.body.max_card) out << *plan.body.max_card;
    else out << "N";
    out << ", head={";
    for (std::size_t i = 0; i < plan.head.attrs.size(); ++i)
        out << (i ? "," : "") << to_lower(plan.head.attrs[i]);
    out << "} " << plan.head.min_card << "..";
    if (plan.head.max_card) out << *plan.head.max_card;
    else out << "N";
    out << ", " << (plan.semantics == SupportSemantics::BodySupport ? "body" : "rule") << "-support";
    return out.str();
}

LogicalPlan lower_getrules(const MsqlGetRulesStmt& g, const CatalogSnapshot& cat) {
    auto entry = cat.find_table(g.source);
    if (!entry) fail(ErrorKind::Resolve, "unknown table '" + g.source + "'", g.span);
    if (entry->group_keys.empty())
        fail(ErrorKind::Plan,
             "GETRULES source '" + g.source + "' is not grouped (define it with GROUP BY)", g.span);

    MineExecPlan mp;
    mp.plan.source =
        std::make_shared<GroupedTable>(group_rows(entry->table, entry->group_keys));
    mp.plan.semantics = SupportSemantics::BodySupport;

    const Schema& schema = entry->table.schema;
    std::vector<std::string> head_attrs, body_attrs;
    bool head_multi = false;
    for (const auto& cond : g.shape) {
        if (cond.kind == ShapeKind::ConsequentIs || cond.kind == ShapeKind::ConsequentHas) {
            for (const auto& atom : cond.atoms) {
                schema.require(atom.name, atom.span);
                head_attrs.push_back(to_lower(atom.name));
            }
            head_multi = cond.kind == ShapeKind::ConsequentHas;
        } else {
            // body atoms naming real attributes narrow the body; item-value
            // spellings ((A=1) etc.) leave the body over all remaining attributes
            for (const auto& atom : cond.atoms)
                if (schema.find(atom.name)) body_attrs.push_back(to_lower(atom.name));
        }
    }
    if (head_attrs.empty()) fail(ErrorKind::Plan, "CONSEQUENT clause required", g.span);
    if (body_attrs.empty()) {
        for (const auto& a : schema.attrs()) {
            bool is_key = false;
            for (const auto& k : entry->group_keys) is_key = is_key || ci_equal(k, a.name);
            bool is_head = false;
            for (const auto& h : head_attrs) is_head = is_head || ci_equal(h, a.name);
            if (!is_key && !is_head) body_attrs.push_back(to_lower(a.name));
        }
    }
    if (body_attrs.empty()) fail(ErrorKind::Plan, "no body attributes available", g.span);
    mp.plan.body = {body_attrs, 1, std::nullopt};
    mp.plan.head = {head_attrs, 1, head_multi ? std::optional<int>() : std::optional<int>(1)};

    for (const auto& m : g.metrics)
        mp.plan.thresholds.push_back(make_threshold(
            m, m.metric == Metric::Support ? Basis::Absolute : Basis::Relative, Comparator::Greater));

    mp.style = RuleStyle::defaults(Dialect::Msql);
    if (g.using_enc) {
        auto h = cat.find_hierarchy(g.using_enc->first);
        if (!h) fail(ErrorKind::Resolve, "unknown encoding '" + g.using_enc->first + "'", g.span);
        schema.require(g.using_enc->second, g.span);
        mp.plan.bindings[to_lower(g.using_enc->second)] = std::make_shared<HierarchyEncoder>(h);
    }
    mp.into = g.into;
    mp.summary = summarize(mp.plan, Dialect::Msql);
    return mp;
}

LogicalPlan lower_find(const DmqlFindStmt& f, const CatalogSnapshot& cat,
                       const SessionDefaults& defaults) {
    ResolvedSource src = run_data_select(f.select, cat);
    if (src.group_keys.empty())
        fail(ErrorKind::Plan, "FIND ASSOCIATIONS requires GROUP BY", f.span);

    MineExecPlan mp;
    mp.plan.source = group_source(src, f.span);
    mp.plan.semantics = SupportSemantics::RuleSupport;

    const Schema& schema = src.table.schema;
    if (f.metapattern) {
        const auto& [body, head] = *f.metapattern;
        schema.require(body.attr, f.span);
        schema.require(head.attr, f.span);
        mp.plan.body = {{to_lower(body.attr)}, 1,
                        body.plus ? std::optional<int>() : std::optional<int>(1)};
        mp.plan.head = {{to_lower(head.attr)}, 1,
                        head.plus ? std::optional<int>() : std::optional<int>(1)};
    } else {
        std::vector<std::string> attrs;
        for (const auto& a : schema.attrs()) {
            bool is_key = false;
            for (const auto& k : src.group_keys) is_key = is_key || ci_equal(k, a.name);
            if (!is_key) attrs.push_back(to_lower(a.name));
        }
        if (attrs.empty()) fail(ErrorKind::Plan, "no minable attributes outside the grouping keys", f.span);
        mp.plan.body = {attrs, 1, std::nullopt};
        mp.plan.head = {attrs, 1, 1};
    }

    // session bindings first, statement USE clauses override
    std::map<std::string, std::string, CiLess> hier = defaults.dmql_hierarchies;
    for (const auto& u : f.use_hierarchies) hier[to_lower(u.attr)] = u.hierarchy;
    for (const auto& [attr, hname] : hier) {
        if (!schema.find(attr)) continue;
        auto h = cat.find_hierarchy(hname);
        if (!h) fail(ErrorKind::Resolve, "unknown hierarchy '" + hname + "'", f.span);
        mp.plan.bindings[attr] = std::make_shared<HierarchyEncoder>(h);
    }

    for (const auto& m : f.thresholds)
        mp.plan.thresholds.push_back(make_threshold(m, Basis::Relative, Comparator::GreaterEq));

    mp.style = RuleStyle::defaults(Dialect::Dmql);
    mp.into = f.as_name;
    mp.summary = summarize(mp.plan, Dialect::Dmql);
    return mp;
}

LogicalPlan lower_minerule(const MineRuleStmt& m, const CatalogSnapshot& cat) {
    ResolvedSource src = run_data_select(m.select, cat);
    if (src.group_keys.empty()) fail(ErrorKind::Plan, "GROUP BY required", m.span);

    MineExecPlan mp;
    mp.plan.source = group_source(src, m.span);
    mp.plan.semantics = SupportSemantics::RuleSupport;
    mp.style = RuleStyle::defaults(Dialect::MineRule);

    auto lower_component = [&](const std::vector<AttrExprAst>& exprs, const CardSpecAst& card,
                               ComponentSchema& out) {
        for (const auto& e : exprs) {
            src.table.schema.require(e.attr, e.span);
            out.attrs.push_back(to_lower(e.attr));
            if (e.trunc_digits) {
                mp.plan.bindings[to_lower(e.attr)] =
                    std::make_shared<TruncationEncoder>(*e.trunc_digits);
                mp.style.surface[to_lower(e.attr)] = e.surface();
            }
        }
        out.min_card = card.min;
        out.max_card = card.max;
    };
    lower_component(m.body_attrs, m.body_card, mp.plan.body);
    lower_component(m.head_attrs, m.head_card, mp.plan.head);

    if (m.having) mp.plan.group_filter = GroupCountPredicate{m.having->op, m.having->count};
    if (!m.cluster_by.empty()) {
        std::vector<std::string> keys;
        for (const auto& q : m.cluster_by) {
            src.table.schema.require(q.name, q.span);
            keys.push_back(to_lower(q.name));
        }
        mp.plan.cluster_keys = std::move(keys);
        if (m.cluster_having)
            mp.plan.cluster_filter = GroupCountPredicate{m.cluster_having->op, m.cluster_having->count};
    }

    mp.plan.thresholds.push_back(make_threshold(m.ext_support, Basis::Relative, Comparator::GreaterEq));
    if (m.has_ext_confidence)
        mp.plan.thresholds.push_back(
            make_threshold(m.ext_confidence, Basis::Relative, Comparator::GreaterEq));

    mp.into = m.name;
    mp.summary = summarize(mp.plan, Dialect::MineRule);
    return mp;
}

LogicalPlan lower_minesql_mine(const MineSqlMineStmt& m, const CatalogSnapshot& cat) {
    ResolvedSource src = run_data_select(m.nested, cat);
    if (src.group_keys.empty())
        fail(ErrorKind::Plan, "the nested select requires GROUP BY", m.span);

    MineExecPlan mp;
    mp.plan.source = group_source(src, m.span);
    mp.plan.semantics = SupportSemantics::BodySupport;
    mp.style = RuleStyle::defaults(Dialect::MineSql);

    auto lower_entries = [&](const std::vector<ForToEntry>& entries, ComponentSchema& out) {
        for (const auto& e : entries) {
            src.table.schema.require(e.attr, e.span);
            std::string attr = to_lower(e.attr);
            out.attrs.push_back(attr);
            if (e.using_taxonomy) {
                auto h = cat.find_hierarchy(*e.using_taxonomy);
                if (!h)
                    fail(ErrorKind::Resolve, "unknown taxonomy '" + *e.using_taxonomy + "'", e.span);
                mp.plan.bindings[attr] = std::make_shared<HierarchyEncoder>(h);
            }
            if (e.alias) mp.style.surface[attr] = to_lower(*e.alias);
        }
        out.min_card = 1;
    };
    lower_entries(m.body, mp.plan.body);
    lower_entries(m.head, mp.plan.head);
    mp.plan.body.max_card = std::nullopt; // FOR: any number of elements
    mp.plan.head.max_card = 1;            // TO: single consequent element

    for (const auto& mc : m.where_metrics)
        mp.plan.thresholds.push_back(make_threshold(mc, Basis::Relative, Comparator::Greater));

    mp.into = m.insert_into;
    mp.summary = summarize(mp.plan, Dialect::MineSql);
    return mp;
}

const RuleTable& require_ruletable(const CatalogSnapshot& cat, const std::string& name, Span span,
                                   std::shared_ptr<const RuleTable>& holder) {
    holder = cat.find_ruletable(name);
    if (!holder) fail(ErrorKind::Resolve, "unknown rule table '" + name + "'", span);
    return *holder;
}

LogicalPlan lower_selectrules(const SelectRulesStmt& s, const CatalogSnapshot& cat) {
    std::shared_ptr<const RuleTable> holder;
    const RuleTable& rt = require_ruletable(cat, s.source, s.span, holder);
    SelectRulesPlan plan;
    plan.source = to_lower(s.source);
    plan.alias = s.alias;
    std::vector<std::string> stack;
    plan.predicate = lower_rule_pred(s.where, rt, s.alias, stack, cat);
    plan.into = s.into;
    return plan;
}

LogicalPlan lower_msql_crossover(const MsqlCrossoverStmt& c, const CatalogSnapshot& cat) {
    auto entry = cat.find_table(c.from_table);
    if (!entry) fail(ErrorKind::Resolve, "unknown table '" + c.from_table + "'", c.span);
    if (entry->group_keys.empty())
        fail(ErrorKind::Plan, "cross-over source '" + c.from_table + "' is not grouped", c.span);

    CrossOverPlan plan;
    plan.data = std::make_shared<GroupedTable>(group_rows(entry->table, entry->group_keys));
    std::shared_ptr<const RuleTable> holder;
    const RuleTable& rt = require_ruletable(cat, c.rule_select.source, c.span, holder);
    plan.rules_source = to_lower(c.rule_select.source);
    plan.rule_alias = c.rule_select.alias;
    std::vector<std::string> stack;
    plan.rule_filter = lower_rule_pred(c.rule_select.where, rt, c.rule_select.alias, stack, cat);
    plan.mode.op = c.op;
    plan.mode.quantifier = c.quantifier;
    plan.mode.violation =
        c.strict ? ViolationSemantics::Strict : ViolationSemantics::NonSatisfaction;
    plan.into = c.into;
    return plan;
}

LogicalPlan lower_minesql_cross(const MineSqlCrossStmt& c, const CatalogSnapshot& cat) {
    ResolvedSource src = run_data_select(c.data, cat);
    if (src.group_keys.empty())
        fail(ErrorKind::Plan, "the cross-over data subquery requires GROUP BY", c.span);

    CrossOverPlan plan;
    plan.data = group_source(src, c.span);
    std::shared_ptr<const RuleTable> holder;
    const RuleTable& rt = require_ruletable(cat, c.rule_query.source, c.span, holder);
    plan.rules_source = to_lower(c.rule_query.source);
    plan.rule_alias = c.rule_query.alias;
    std::vector<std::string> stack;
    plan.rule_filter = lower_rule_pred(c.rule_query.where, rt, c.rule_query.alias, stack, cat);
    plan.mode.op = c.op;
    plan.mode.quantifier = c.op == CrossOp::Violates ? Quantifier::All : Quantifier::Any;
    plan.mode.violation =
        c.strict ? ViolationSemantics::Strict : ViolationSemantics::NonSatisfaction;
    for (const auto& q : c.projection) {
        bool in_keys = false;
        for (const auto& k : src.group_keys) in_keys = in_keys || ci_equal(k, q.name);
        if (!in_keys)
            fail(ErrorKind::Plan,
                 "projection attribute '" + q.name + "' is not a grouping key of the data subquery",
                 q.span);
        plan.projection.push_back(to_lower(q.name));
    }
    return plan;
}

LogicalPlan lower_data_query(const DataSelectAst& sel, std::optional<std::string> into,
                             bool is_view, const CatalogSnapshot& cat) {
    ResolvedSource src = run_data_select(sel, cat);
    DataQueryPlan plan;
    plan.table = std::move(src.table);
    plan.group_keys = std::move(src.group_keys);
    plan.display = std::move(src.display);
    plan.into = std::move(into);
    plan.is_view = is_view;
    return plan;
}

ConceptHierarchy lower_coverage_hierarchy(const std::string& name, const std::string& attr,
                                          const std::vector<DmqlLevelLine>& lines) {
    std::vector<LevelDef> defs;
    for (const auto& line : lines) {
        LevelDef def;
        def.level = line.level;
        if (line.coverage.is_interval) {
            def.coverage = Coverage::interval(line.coverage.lo, line.coverage.hi);
        } else {
            std::vector<Value> vals;
            for (const auto& v : line.coverage.values) vals.push_back(Value::text(v));
            def.coverage = Coverage::value_set(std::移动_placeholder(vals));
        }
        def.parent_label = line.parent_label;
        defs.push_back(std::move(def));
    }
    return define_hierarchy(name, to_lower(attr), defs);
}

} // namespace

void override_thresholds(MineExecPlan& plan, SupportSemantics semantics,
                         const std::vector<Threshold>& thresholds) {
    plan.plan.semantics = semantics;
    plan.plan.thresholds = thresholds;
}

LogicalPlan lower_to_plan(const ParsedStatement& stmt, const CatalogSnapshot& catalog,
                          const SessionDefaults& defaults) {
    return std::visit(
        [&](const auto& node) -> LogicalPlan {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, CreateViewStmt>) {
                return lower_data_query(node.select, node.name, true, catalog);
            } else if constexpr (std::is_same_v<T, SelectDataStmt>) {
                return lower_data_query(node.select, node.into, false, catalog);
            } else if constexpr (std::is_same_v<T, MsqlEncodingStmt>) {
                auto entry = catalog.find_table(node.table);
                if (!entry) fail(ErrorKind::Resolve, "unknown table '" + node.table + "'", node.span);
                entry->table.schema.require(node.attr, node.span);
                std::vector<EncodingRange> ranges;
                for (const auto& r : node.ranges) ranges.push_back({r.lo, r.hi, r.code});
                return HierarchyDefPlan{
                    define_encoding(node.name, to_lower(node.attr), ranges, node.default_code)};
            } else if constexpr (std::is_same_v<T, MsqlGetRulesStmt>) {
                return lower_getrules(node, catalog);
            } else if constexpr (std::is_same_v<T, SelectRulesStmt>) {
                return lower_selectrules(node, catalog);
            } else if constexpr (std::is_same_v<T, MsqlCrossoverStmt>) {
                return lower_msql_crossover(node, catalog);
            } else if constexpr (std::is_same_v<T, DmqlUseDatabaseStmt>) {
                return UseDatabasePlan{node.name};
            } else if constexpr (std::is_same_v<T, DmqlUseHierarchyStmt>) {
                if (!catalog.find_hierarchy(node.hierarchy))
                    fail(ErrorKind::Resolve, "unknown hierarchy '" + node.hierarchy + "'", node.span);
                return UseHierarchyPlan{node.hierarchy, to_lower(node.attr)};
            } else if constexpr (std::is_same_v<T, DmqlHierarchyStmt>) {
                return HierarchyDefPlan{lower_coverage_hierarchy(node.name, node.attr, node.levels)};
            } else if constexpr (std::is_same_v<T, DmqlFindStmt>) {
                return lower_find(node, catalog, defaults);
            } else if constexpr (std::is_same_v<T, MineRuleStmt>) {
                return lower_minerule(node, catalog);
            } else if constexpr (std::is_same_v<T, MineSqlTaxonomyStmt>) {
                std::vector<LevelDef> defs;
                for (const auto& leaf : node.leaves) {
                    LevelDef def;
                    def.level = 1;
                    if (leaf.coverage.is_interval) {
                        def.coverage = Coverage::interval(leaf.coverage.lo, leaf.coverage.hi);
                    } else {
                        std::vector<Value> vals;
                        for (const auto& v : leaf.coverage.values) vals.push_back(Value::text(v));
                        def.coverage = Coverage::value_set(std::move(vals));
                    }
                    def.code = leaf.code;
                    defs.push_back(std::move(def));
                }
                return HierarchyDefPlan{define_hierarchy(node.name, "", defs)};
            } else if constexpr (std::is_same_v<T, MineSqlCreateTableStmt>) {
                return DeclareRuleTablePlan{node.name};
            } else if constexpr (std::is_same_v<T, MineSqlMineStmt>) {
                return lower_minesql_mine(node, catalog);
            } else if constexpr (std::is_same_v<T, MineSqlRuleQueryStmt>) {
                std::shared_ptr<const RuleTable> holder;
                const RuleTable& rt = require_ruletable(catalog, node.source, node.span, holder);
                SelectRulesPlan plan;
                plan.source = to_lower(node.source);
                plan.alias = node.alias;
                std::vector<std::string> stack;
                plan.predicate = lower_rule_pred(node.where, rt, node.alias, stack, catalog);
                for (const auto& a : node.accessors) plan.accessors.push_back(a.kind);
                plan.into = node.into;
                return plan;
            } else if constexpr (std::is_same_v<T, MineSqlCrossStmt>) {
                return lower_minesql_cross(node, catalog);
            } else {
                fail(ErrorKind::Plan, "unsupported statement");
            }
        },
        stmt.node);
}

namespace {

bool schemas_equal(const ComponentSchema& a, const ComponentSchema& b) {
    if (a.attrs.size() != b.attrs.size() || a.min_card != b.min_card || a.max_card != b.max_card)
        return false;
    for (std::size_t i = 0; i < a.attrs.size(); ++i)
        if (!ci_equal(a.attrs[i], b.attrs[i])) return false;
    return true;
}

bool bindings_equal(const Bindings& a, const Bindings& b) {
    if (a.size() != b.size()) return false;
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end(); ++ia, ++ib) {
        if (!ci_equal(ia->first, ib->first)) return false;
        if (ia->second->name() != ib->second->name()) return false;
    }
    return true;
}

bool thresholds_equal(const std::vector<Threshold>& a, const std::vector<Threshold>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].metric != b[i].metric || a[i].basis != b[i].basis || a[i].cmp != b[i].cmp ||
            !(a[i].value == b[i].value))
            return false;
    }
    return true;
}

bool preds_equal(const RulePredicate& a, const RulePredicate& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!preds_equal(a.children[i], b.children[i])) return false;
    if (descriptor_set_compare(a.literal, b.literal) != 0) return false;
    if (a.corr_alias.has_value() != b.corr_alias.has_value()) return false;
    if (a.corr_alias && !ci_equal(*a.corr_alias, *b.corr_alias)) return false;
    if (a.corr_head != b.corr_head || a.reversed != b.reversed) return false;
    if (a.kind == RulePredicate::Kind::MetricCmp &&
        (a.metric != b.metric || a.op != b.op || !(a.value == b.value)))
        return false;
    if (!ci_equal(a.nested_source, b.nested_source) || !ci_equal(a.nested_alias, b.nested_alias))
        return false;
    return true;
}

bool mine_plans_equal(const MineExecPlan& a, const MineExecPlan& b) {
    if (!schemas_equal(a.plan.body, b.plan.body) || !schemas_equal(a.plan.head, b.plan.head))
        return false;
    if (a.plan.semantics != b.plan.semantics) return false;
    if (!thresholds_equal(a.plan.thresholds, b.plan.thresholds)) return false;
    if (!bindings_equal(a.plan.bindings, b.plan.bindings)) return false;
    if (a.plan.cluster_keys.has_value() != b.plan.cluster_keys.has_value()) return false;
    if (a.plan.cluster_keys) {
        if (a.plan.cluster_keys->size() != b.plan.cluster_keys->size()) return false;
        for (std::size_t i = 0; i < a.plan.cluster_keys->size(); ++i)
            if (!ci_equal((*a.plan.cluster_keys)[i], (*b.plan.cluster_keys)[i])) return false;
    }
    auto filt_eq = [](const std::optional<GroupCountPredicate>& x,
                      const std::optional<GroupCountPredicate>& y) {
        if (x.has_value() != y.has_value()) return false;
        return !x || (x->op == y->op && x->count == y->count);
    };
    if (!filt_eq(a.plan.group_filter, b.plan.group_filter)) return false;
    if (!filt_eq(a.plan.cluster_filter, b.plan.cluster_filter)) return false;
    if (!a.plan.source || !b.plan.source) return a.plan.source == b.plan.source;
    if (!(*a.plan.source == *b.plan.source)) return false;
    return a.into == b.into;
}

} // namespace

bool plans_equal(const LogicalPlan& a, const LogicalPlan& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<HierarchyDefPlan>(a)) {
        const auto& x = std::get<HierarchyDefPlan>(a).hierarchy;
        const auto& y = std::get<HierarchyDefPlan>(b).hierarchy;
        return ci_equal(x.name(), y.name()) && ci_equal(x.attribute(), y.attribute()) &&
               x.to_text() == y.to_text();
    }
    if (std::holds_alternative<DataQueryPlan>(a)) {
        const auto& x = std::get<DataQueryPlan>(a);
        const auto& y = std::get<DataQueryPlan>(b);
        if (!(x.table == y.table)) return false;
        if (x.group_keys.size() != y.group_keys.size()) return false;
        for (std::size_t i = 0; i < x.group_keys.size(); ++i)
            if (!ci_equal(x.group_keys[i], y.group_keys[i])) return false;
        return x.into == y.into && x.is_view == y.is_view;
    }
    if (std::holds_alternative<MineExecPlan>(a))
        return mine_plans_equal(std::get<MineExecPlan>(a), std::get<MineExecPlan>(b));
    if (std::holds_alternative<SelectRulesPlan>(a)) {
        const auto& x = std::get<SelectRulesPlan>(a);
        const auto& y = std::get<SelectRulesPlan>(b);
        return ci_equal(x.source, y.source) && preds_equal(x.predicate, y.predicate) &&
               x.accessors == y.accessors && x.into == y.into;
    }
    if (std::holds_alternative<CrossOverPlan>(a)) {
        const auto& x = std::get<CrossOverPlan>(a);
        const auto& y = std::get<CrossOverPlan>(b);
        if (!(ci_equal(x.rules_source, y.rules_source) && preds_equal(x.rule_filter, y.rule_filter)))
            return false;
        if (x.mode.op != y.mode.op || x.mode.quantifier != y.mode.quantifier ||
            x.mode.violation != y.mode.violation)
            return false;
        if (!x.data || !y.data) return x.data == y.data;
        if (!(*x.data == *y.data)) return false;
        if (x.projection.size() != y.projection.size()) return false;
        for (std::size_t i = 0; i < x.projection.size(); ++i)
            if (!ci_equal(x.projection[i], y.projection[i])) return false;
        return x.into == y.into;
    }
    if (std::holds_alternative<UseDatabasePlan>(a))
        return ci_equal(std::get<UseDatabasePlan>(a).name, std::get<UseDatabasePlan>(b).name);
    if (std::holds_alternative<UseHierarchyPlan>(a)) {
        const auto& x = std::get<UseHierarchyPlan>(a);
        const auto& y = std::get<UseHierarchyPlan>(b);
        return ci_equal(x.hierarchy, y.hierarchy) && ci_equal(x.attr, y.attr);
    }
    if (std::holds_alternative<DeclareRuleTablePlan>(a))
        return ci_equal(std::get<DeclareRuleTablePlan>(a).name,
                        std::get<DeclareRuleTablePlan>(b).name);
    return false;
}

} // namespace idb::dsl
