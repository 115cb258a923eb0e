#include "idb/dialects/parse.hpp"
#include "parser_base.hpp"

namespace idb::dsl {

bool MineSqlTaxonomyStmt::operator==(const MineSqlTaxonomyStmt& o) const {
    return ci_equal(name, o.name) && node_label == o.node_label && leaves == o.leaves;
}

bool ForToEntry::operator==(const ForToEntry& o) const {
    return ci_equal(attr, o.attr) && using_taxonomy == o.using_taxonomy && alias == o.alias;
}

bool MineSqlMineStmt::operator==(const MineSqlMineStmt& o) const {
    return insert_into == o.insert_into && exprs == o.exprs && body == o.body && head == o.head &&
           nested == o.nested && where_metrics == o.where_metrics;
}

bool MineSqlRuleQueryStmt::operator==(const MineSqlRuleQueryStmt& o) const {
    return accessors == o.accessors && ci_equal(source, o.source) && ci_equal(alias, o.alias) &&
           where == o.where && into == o.into;
}

bool MineSqlCrossStmt::operator==(const MineSqlCrossStmt& o) const {
    return projection == o.projection && outer == o.outer && rule_query == o.rule_query &&
           op == o.op && strict == o.strict && data == o.data && correlation_key == o.correlation_key;
}

namespace {

// [500..599] / [MIN..499] / {a,b}
CoverageAst parse_leaf_coverage(Parser& p) {
    CoverageAst cov;
    cov.span = p.cur().span;
    Tok open = p.at(Tok::LBrace) ? Tok::LBrace : Tok::LBracket;
    Tok close = open == Tok::LBrace ? Tok::RBrace : Tok::RBracket;
    p.expect(open, "'[' or '{'");
    if (p.at(Tok::Integer) || p.at(Tok::Minus) || p.at_kw("MIN")) {
        cov.lo = parse_bound(p);
        p.expect(Tok::DotDot, "'..'");
        cov.hi = parse_bound(p);
        cov.is_interval = true;
    } else {
        cov.is_interval = false;
        while (true) {
            if (p.at(Tok::String)) cov.values.push_back(p.eat().text);
            else cov.values.push_back(p.expect_ident("leaf value"));
            if (!p.accept(Tok::Comma)) break;
        }
    }
    p.expect(close, "']' or '}'");
    return cov;
}

ParsedStatement parse_create_taxonomy(Parser& p) {
    ParsedStatement stmt;
    stmt.dialect = Dialect::MineSql;
    MineSqlTaxonomyStmt t;
    t.span = p.expect_kw("TAXONOMY").span;
    t.name = p.expect_ident("taxonomy name");
    p.expect(Tok::LParen, "'('");
    while (true) {
        if (p.accept_kw("NODE")) {
            Token label = p.expect(Tok::String, "node label");
            t.node_label = label.text;
        } else if (p.accept_kw("LEAF")) {
            TaxonomyLeafAst leaf;
            leaf.span = p.cur().span;
            leaf.coverage = parse_leaf_coverage(p);
            p.expect_kw("REFERENCES");
            bool neg = p.accept(Tok::Minus);
            leaf.code = p.expect(Tok::Integer, "leaf code").int_val;
            if (neg) leaf.code = -leaf.code;
            t.leaves.push_back(std::move(leaf));
        } else {
            p.error("NODE or LEAF");
        }
        if (!p.accept(Tok::Comma)) break;
    }
    p.expect(Tok::RParen, "')'");
    p.expect_statement_end();
    if (t.leaves.empty()) fail(ErrorKind::Parse, "taxonomy requires at least one LEAF", t.span);
    stmt.node = std::move(t);
    return stmt;
}

ParsedStatement parse_create_table(Parser& p) {
    ParsedStatement stmt;
    stmt.dialect = Dialect::MineSql;
    MineSqlCreateTableStmt t;
    t.span = p.expect_kw("TABLE").span;
    t.name = p.expect_ident("table name");
    p.expect(Tok::LParen, "'('");
    bool has_rule_col = false;
    while (true) {
        std::string col = p.expect_ident("column name");
        if (p.accept_kw("RULE")) {
            t.rule_col = col;
            has_rule_col = true;
        } else {
            // any other column type: name(size) or plain name
            p.expect_ident("column type");
            if (p.accept(Tok::LParen)) {
                p.expect(Tok::Integer, "size");
                p.expect(Tok::RParen, "')'");
            }
        }
        if (!p.accept(Tok::Comma)) break;
    }
    p.expect(Tok::RParen, "')'");
    p.expect_statement_end();
    if (!has_rule_col)
        fail(ErrorKind::Parse, "CREATE TABLE here requires a RULE-typed column", t.span);
    stmt.node = std::move(t);
    return stmt;
}

// MINE RULE[, SUPPORT(RULE), …] FOR … TO … FROM (…) WHERE … [GROUP BY …]
ParsedStatement parse_mine(Parser& p, std::optional<std::string> insert_into,
                           std::optional<std::string> insert_col) {
    ParsedStatement stmt;
    stmt.dialect = Dialect::MineSql;
    MineSqlMineStmt m;
    m.span = p.expect_kw("MINE").span;
    m.insert_into = std::move(insert_into);
    m.insert_col = std::move(insert_col);

    auto parse_expr_item = [&]() -> MineExprKind {
        if (p.accept_kw("RULE")) return MineExprKind::RuleExpr;
        if (p.at_kw("SUPPORT") || p.at_kw("CONFIDENCE") || p.at_kw("BODY") || p.at_kw("HEAD")) {
            std::string fn = to_upper(p.eat().text);
            p.expect(Tok::LParen, "'('");
            p.expect_kw("RULE");
            p.expect(Tok::RParen, "')'");
            if (fn == "SUPPORT") return MineExprKind::Support;
            if (fn == "CONFIDENCE") return MineExprKind::Confidence;
            if (fn == "BODY") return MineExprKind::Body;
            return MineExprKind::Head;
        }
        p.error("RULE, SUPPORT(RULE), CONFIDENCE(RULE), BODY(RULE) or HEAD(RULE)");
    };
    m.exprs.push_back(parse_expr_item());
    while (p.accept(Tok::Comma)) m.exprs.push_back(parse_expr_item());

    auto parse_for_to = [&](std::vector<ForToEntry>& out) {
        while (true) {
            ForToEntry e;
            e.span = p.cur().span;
            e.attr = p.expect_ident("attribute");
            if (p.accept_kw("USING")) e.using_taxonomy = p.expect_ident("taxonomy name");
            if (p.accept_kw("AS")) e.alias = p.expect_ident("alias");
            out.push_back(std::move(e));
            if (!p.accept(Tok::Comma)) break;
        }
    };
    if (!p.at_kw("FOR"))
        fail(ErrorKind::Parse, "body (FOR) and head (TO) schemas required", p.cur().span);
    p.eat();
    parse_for_to(m.body);
    if (!p.at_kw("TO"))
        fail(ErrorKind::Parse, "body (FOR) and head (TO) schemas required", p.cur().span);
    p.eat();
    parse_for_to(m.head);

    p.expect_kw("FROM");
    p.expect(Tok::LParen, "'('");
    m.nested = parse_data_select_body(p, true);
    p.expect(Tok::RParen, "')'");

    if (p.accept_kw("WHERE")) {
        while (true) {
            if (!p.at_kw("SUPPORT") && !p.at_kw("CONFIDENCE"))
                p.error("SUPPORT(RULE) or CONFIDENCE(RULE) condition");
            Metric metric = p.at_kw("SUPPORT") ? Metric::Support : Metric::Confidence;
            Span sp = p.eat().span;
            p.expect(Tok::LParen, "'('");
            p.expect_kw("RULE");
            p.expect(Tok::RParen, "')'");
            CmpOp op;
            if (p.accept(Tok::Gt)) op = CmpOp::Gt;
            else if (p.accept(Tok::Ge)) op = CmpOp::Ge;
            else p.error("'>' or '>='");
            MetricCondAst mc = parse_metric_cond(p, metric, op);
            mc.span = sp;
            m.where_metrics.push_back(std::move(mc));
            if (p.accept_kw("AND")) continue;
            break;
        }
    }
    if (p.at_kw("GROUP")) {
        p.eat();
        p.expect_kw("BY");
        parse_ident_list(p, "grouping attribute");
        stmt.diagnostics.push_back("outer GROUP BY accepted and ignored (grouping happens in the nested select)");
    }
    if (p.at_kw("ORDER")) {
        p.eat();
        p.expect_kw("BY");
        while (!p.at_end() && !p.at(Tok::Semi)) p.eat();
        m.had_order_by = true;
        stmt.diagnostics.push_back("ORDER BY accepted and ignored (no defined ordering semantics)");
    }
    p.expect_statement_end();
    stmt.node = std::move(m);
    return stmt;
}

// rule predicate: literal IN BODY(q) | BODY(q) IN BODY(q) | HEAD(q)=HEAD(q) |
// SUPPORT(q) cmp v | NOT EXISTS(SELECT * FROM rt alias WHERE …) | AND/OR/NOT
RulePredAst parse_minesql_pred(Parser& p, const std::string& current_alias);

MineSqlRuleQueryStmt parse_rule_subquery(Parser& p) {
    MineSqlRuleQueryStmt q;
    q.span = p.expect_kw("SELECT").span;
    if (p.accept(Tok::Star)) {
        // all rule columns
    } else {
        while (true) {
            RuleAccessorAst acc;
            acc.span = p.cur().span;
            if (p.accept_kw("RULE")) {
                acc.kind = RuleAccessorKind::RuleText;
            } else {
                std::string fn = to_upper(p.expect_ident("accessor"));
                if (fn == "BODY") acc.kind = RuleAccessorKind::Body;
                else if (fn == "HEAD") acc.kind = RuleAccessorKind::Head;
                else if (fn == "SUPPORT") acc.kind = RuleAccessorKind::Support;
                else if (fn == "CONFIDENCE") acc.kind = RuleAccessorKind::Confidence;
                else fail(ErrorKind::Parse, "unknown rule accessor '" + fn + "'", acc.span);
                p.expect(Tok::LParen, "'('");
                parse_qual_ident(p, "rule column");
                p.expect(Tok::RParen, "')'");
            }
            q.accessors.push_back(acc);
            if (!p.accept(Tok::Comma)) break;
        }
    }
    p.expect_kw("FROM");
    q.source = p.expect_ident("rule table");
    if (p.at(Tok::Ident) && !p.at_kw("WHERE")) q.alias = p.eat().text;
    if (p.accept_kw("WHERE")) q.where = parse_minesql_pred(p, q.alias);
    else q.where.kind = RulePredAst::Kind::True;
    return q;
}

RulePredAst parse_minesql_pred_atom(Parser& p, const std::string& current_alias) {
    RulePredAst a;
    a.span = p.cur().span;
    if (p.accept_kw("NOT")) {
        if (p.at_kw("EXISTS")) {
            p.eat();
            p.expect(Tok::LParen, "'('");
            MineSqlRuleQueryStmt nested = parse_rule_subquery(p);
            p.expect(Tok::RParen, "')'");
            if (nested.into || !nested.accessors.empty()) {
                // nested existence queries use SELECT *
            }
            a.kind = RulePredAst::Kind::NotExists;
            a.nested_source = nested.source;
            a.nested_alias = nested.alias;
            a.children.push_back(std::move(nested.where));
            return a;
        }
        a.kind = RulePredAst::Kind::Not;
        a.children.push_back(parse_minesql_pred_atom(p, current_alias));
        return a;
    }
    if (p.accept(Tok::LParen)) {
        RulePredAst inner = parse_minesql_pred(p, current_alias);
        p.expect(Tok::RParen, "')'");
        return inner;
    }
    // BODY(x.c) IN BODY(y.c) / HEAD(x.c) = HEAD(y.c) / SUPPORT(x.c) cmp v
    if (p.at_kw("BODY") || p.at_kw("HEAD") || p.at_kw("SUPPORT") || p.at_kw("CONFIDENCE")) {
        std::string fn = to_upper(p.eat().text);
        p.expect(Tok::LParen, "'('");
        QualIdent lhs = parse_qual_ident(p, "rule column");
        p.expect(Tok::RParen, "')'");
        if (fn == "SUPPORT" || fn == "CONFIDENCE") {
            a.kind = RulePredAst::Kind::MetricCmp;
            a.metric = fn == "SUPPORT" ? Metric::Support : Metric::Confidence;
            a.metric_alias = lhs.qualifier;
            if (p.accept(Tok::Gt)) a.op = CmpOp::Gt;
            else if (p.accept(Tok::Ge)) a.op = CmpOp::Ge;
            else if (p.accept(Tok::Lt)) a.op = CmpOp::Lt;
            else if (p.accept(Tok::Le)) a.op = CmpOp::Le;
            else if (p.accept(Tok::Eq)) a.op = CmpOp::Eq;
            else p.error("comparison operator");
            a.value = parse_threshold_value(p, a.value_text);
            return a;
        }
        bool lhs_head = fn == "HEAD";
        bool is_in = p.accept_kw("IN");
        bool is_eq = !is_in && p.accept(Tok::Eq);
        if (!is_in && !is_eq) p.error("IN or '='");
        std::string fn2 = to_upper(p.expect_ident("BODY or HEAD"));
        p.expect(Tok::LParen, "'('");
        QualIdent rhs = parse_qual_ident(p, "rule column");
        p.expect(Tok::RParen, "')'");
        bool rhs_head = fn2 == "HEAD";
        if (lhs_head != rhs_head)
            fail(ErrorKind::Parse, "cannot compare BODY with HEAD", a.span);

        // subject is the current selection's alias; the other side correlates.
        bool lhs_is_current = ci_equal(lhs.qualifier, current_alias);
        QualIdent corr = lhs_is_current ? rhs : lhs;
        a.kind = RulePredAst::Kind::Shape;
        a.on_head = lhs_head;
        a.corr = corr;
        a.corr_head = rhs_head;
        if (is_eq) {
            a.is_equality = true;
        } else {
            // IN between two rule components: proper subset
            a.is_equality = false;
            a.proper = true;
            // BODY(current) IN BODY(other): current is a proper subset of other
            // BODY(other) IN BODY(current): other is a proper subset of current
            a.reversed = lhs_is_current; // BODY(current) IN BODY(other): current ⊊ other
        }
        return a;
    }
    // literal descriptor IN BODY(col): item='A' IN BODY(TRB.RL)
    if (p.at(Tok::Ident) || p.at(Tok::String)) {
        DescriptorAtomAst atom;
        atom.span = p.cur().span;
        if (p.at(Tok::String)) {
            // tolerate a quoted descriptor: 'ITEM=…' is not split by the lexer,
            // so require the plain form attr='value'
            fail(ErrorKind::Parse, "write the descriptor unquoted: attr='value' IN BODY(...)",
                 atom.span);
        }
        atom.name = p.expect_ident("attribute");
        p.expect(Tok::Eq, "'='");
        atom.value = parse_literal(p);
        p.expect_kw("IN");
        std::string fn = to_upper(p.expect_ident("BODY or HEAD"));
        p.expect(Tok::LParen, "'('");
        parse_qual_ident(p, "rule column");
        p.expect(Tok::RParen, "')'");
        a.kind = RulePredAst::Kind::Shape;
        a.on_head = fn == "HEAD";
        a.is_equality = false;
        a.literal.push_back(std::move(atom));
        return a;
    }
    p.error("rule condition");
}

RulePredAst parse_minesql_pred(Parser& p, const std::string& current_alias) {
    RulePredAst first = parse_minesql_pred_atom(p, current_alias);
    if (!p.at_kw("AND") && !p.at_kw("OR")) return first;
    bool is_and = p.at_kw("AND");
    RulePredAst node;
    node.kind = is_and ? RulePredAst::Kind::And : RulePredAst::Kind::Or;
    node.span = first.span;
    node.children.push_back(std::move(first));
    while ((is_and && p.accept_kw("AND")) || (!is_and && p.accept_kw("OR")))
        node.children.push_back(parse_minesql_pred_atom(p, current_alias));
    return node;
}

} // namespace

ParsedStatement parse_minesql(const std::vector<Token>& tokens) {
    Parser p(tokens);
    if (p.at_kw("CREATE")) {
        p.eat();
        if (p.at_kw("TAXONOMY")) return parse_create_taxonomy(p);
        if (p.at_kw("TABLE")) return parse_create_table(p);
        if (p.at_kw("VIEW")) {
            // re-parse through the shared path (CREATE already consumed)
            Parser q(tokens);
            return parse_shared_data_statement(q, Dialect::MineSql);
        }
        p.error("TAXONOMY, TABLE or VIEW");
    }
    if (p.at_kw("INSERT")) {
        p.eat();
        p.expect_kw("INTO");
        std::string into = p.expect_ident("table name");
        std::optional<std::string> col;
        if (p.accept(Tok::LParen)) {
            col = p.expect_ident("column name");
            p.expect(Tok::RParen, "')'");
        }
        if (!p.at_kw("MINE")) p.error("MINE after INSERT INTO");
        return parse_mine(p, into, col);
    }
    if (p.at_kw("MINE")) return parse_mine(p, std::nullopt, std::nullopt);
    if (!p.at_kw("SELECT")) p.error("CREATE, INSERT, MINE or SELECT");

    // Disambiguate SELECT forms by scanning: VIOLATED/SATISFIED BY -> cross-over;
    // rule accessors / NOT EXISTS / IN BODY -> rule query; otherwise data select.
    bool cross = false, ruleish = false;
    for (std::size_t i = p.pos; i < tokens.size(); ++i) {
        if (tokens[i].is_kw("VIOLATED") || tokens[i].is_kw("SATISFIED")) cross = true;
        if (tokens[i].is_kw("EXISTS") || tokens[i].is_kw("BODY") || tokens[i].is_kw("HEAD") ||
            tokens[i].is_kw("SUPPORT") || tokens[i].is_kw("CONFIDENCE") || tokens[i].is_kw("RULE"))
            ruleish = true;
    }
    ParsedStatement stmt;
    stmt.dialect = Dialect::MineSql;
    if (cross) {
        MineSqlCrossStmt c;
        c.span = p.expect_kw("SELECT").span;
        c.projection = parse_ident_list(p, "key attribute");
        p.expect_kw("FROM");
        c.outer.span = p.cur().span;
        c.outer.name = p.expect_ident("table name");
        if (p.at(Tok::Ident) && !p.at_kw("WHERE")) c.outer.alias = p.eat().text;
        p.expect_kw("WHERE");
        p.expect(Tok::LParen, "'('");
        c.rule_query = parse_rule_subquery(p);
        p.expect(Tok::RParen, "')'");
        if (p.accept_kw("VIOLATED")) c.op = CrossOp::Violates;
        else if (p.accept_kw("SATISFIED")) c.op = CrossOp::Satisfies;
        else p.error("VIOLATED or SATISFIED");
        if (p.accept_kw("STRICT")) c.strict = true;
        p.expect_kw("BY");
        p.expect(Tok::LParen, "'('");
        c.data = parse_data_select_body(p, true);
        p.expect(Tok::RParen, "')'");
        p.expect_statement_end();

        // find the correlated condition (outer.key = inner.key) and strip it
        std::vector<CondAtom> kept;
        for (auto& atom : c.data.where) {
            bool corr = false;
            if (std::holds_alternative<QualIdent>(atom.rhs)) {
                const QualIdent& r = std::get<QualIdent>(atom.rhs);
                if (ci_equal(atom.lhs.qualifier, c.outer.alias) && !c.outer.alias.empty()) {
                    c.correlation_key = r;
                    corr = true;
                } else if (ci_equal(r.qualifier, c.outer.alias) && !c.outer.alias.empty()) {
                    c.correlation_key = atom.lhs;
                    corr = true;
                }
            }
            if (!corr) kept.push_back(std::move(atom));
        }
        c.data.where = std::move(kept);
        stmt.node = std::move(c);
        return stmt;
    }
    if (ruleish) {
        MineSqlRuleQueryStmt q = parse_rule_subquery(p);
        if (p.accept_kw("INTO")) q.into = p.expect_ident("rule table name");
        p.expect_statement_end();
        stmt.node = std::move(q);
        return stmt;
    }
    return parse_shared_data_statement(p, Dialect::MineSql);
}

} // namespace idb::dsl
