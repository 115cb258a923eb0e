#include "idb/dialects/parse.hpp"
#include "parser_base.hpp"

namespace idb::dsl {

std::string AttrExprAst::surface() const {
    if (trunc_digits) return "TRUNC(" + to_lower(attr) + "," + std::to_string(*trunc_digits) + ")";
    return to_lower(attr);
}

bool MineRuleStmt::operator==(const MineRuleStmt& o) const {
    return ci_equal(name, o.name) && body_card == o.body_card && head_card == o.head_card &&
           body_attrs == o.body_attrs && head_attrs == o.head_attrs && select == o.select &&
           having == o.having && cluster_by == o.cluster_by && cluster_having == o.cluster_having &&
           ext_support == o.ext_support &&
           (has_ext_confidence ? ext_confidence == o.ext_confidence : true) &&
           has_ext_confidence == o.has_ext_confidence;
}

namespace {

// <NUMBER>..<NUMBER> | <NUMBER>..N | N
CardSpecAst parse_cardspec(Parser& p) {
    CardSpecAst c;
    if (p.accept_kw("N")) {
        c.min = 1;
        c.max = std::nullopt;
        return c;
    }
    c.min = static_cast<int>(p.expect(Tok::Integer, "cardinality").int_val);
    p.expect(Tok::DotDot, "'..'");
    if (p.accept_kw("N")) c.max = std::nullopt;
    else c.max = static_cast<int>(p.expect(Tok::Integer, "cardinality upper bound").int_val);
    return c;
}

AttrExprAst parse_attr_expr(Parser& p) {
    AttrExprAst e;
    e.span = p.cur().span;
    if (p.at_kw("TRUNC")) {
        p.eat();
        p.expect(Tok::LParen, "'('");
        e.attr = p.expect_ident("attribute");
        p.expect(Tok::Comma, "','");
        e.trunc_digits = static_cast<int>(p.expect(Tok::Integer, "digit count").int_val);
        p.expect(Tok::RParen, "')'");
        return e;
    }
    QualIdent q = parse_qual_ident(p, "attribute");
    e.attr = q.name;
    return e;
}

GroupHavingAst parse_having(Parser& p) {
    // HAVING COUNT(*) <op> <n>
    GroupHavingAst h;
    h.span = p.expect_kw("HAVING").span;
    p.expect_kw("COUNT");
    p.expect(Tok::LParen, "'('");
    p.expect(Tok::Star, "'*'");
    p.expect(Tok::RParen, "')'");
    if (p.accept(Tok::Ge)) h.op = CmpOp::Ge;
    else if (p.accept(Tok::Gt)) h.op = CmpOp::Gt;
    else if (p.accept(Tok::Le)) h.op = CmpOp::Le;
    else if (p.accept(Tok::Lt)) h.op = CmpOp::Lt;
    else if (p.accept(Tok::Eq)) h.op = CmpOp::Eq;
    else if (p.accept(Tok::Ne)) h.op = CmpOp::Ne;
    else p.error("comparison operator");
    h.count = p.expect(Tok::Integer, "row count").int_val;
    return h;
}

} // namespace

ParsedStatement parse_minerule(const std::vector<Token>& tokens) {
    Parser p(tokens);
    if (p.at_kw("CREATE") || (p.at_kw("SELECT")))
        return parse_shared_data_statement(p, Dialect::MineRule);
    if (!p.at_kw("MINE")) p.error("MINE RULE, CREATE VIEW or SELECT");

    ParsedStatement stmt;
    stmt.dialect = Dialect::MineRule;
    MineRuleStmt m;
    m.span = p.eat().span; // MINE
    p.expect_kw("RULE");
    m.name = p.expect_ident("rule table name");
    p.expect_kw("AS");
    p.expect_kw("SELECT");
    p.expect_kw("DISTINCT");

    // [card] attrs AS BODY, [card] attr-exprs AS HEAD [, SUPPORT] [, CONFIDENCE]
    if (p.at(Tok::Integer) || p.at_kw("N")) m.body_card = parse_cardspec(p);
    m.body_attrs.push_back(parse_attr_expr(p));
    while (p.at(Tok::Comma) && !(p.peek().kind == Tok::Integer || p.peek().is_kw("N"))) {
        p.eat();
        m.body_attrs.push_back(parse_attr_expr(p));
    }
    p.expect_kw("AS");
    p.expect_kw("BODY");
    p.expect(Tok::Comma, "','");
    if (p.at(Tok::Integer) || p.at_kw("N")) m.head_card = parse_cardspec(p);
    m.head_attrs.push_back(parse_attr_expr(p));
    while (p.at(Tok::Comma) && p.peek().kind == Tok::Ident && !p.peek().is_kw("SUPPORT") &&
           !p.peek().is_kw("CONFIDENCE")) {
        p.eat();
        m.head_attrs.push_back(parse_attr_expr(p));
    }
    p.expect_kw("AS");
    p.expect_kw("HEAD");
    while (p.accept(Tok::Comma)) {
        if (p.accept_kw("SUPPORT")) m.select_support = true;
        else if (p.accept_kw("CONFIDENCE")) m.select_confidence = true;
        else p.error("SUPPORT or CONFIDENCE");
    }

    if (p.accept_kw("WHERE")) {
        // rule-element conditions: accepted, no defined semantics in scope; skip to FROM
        m.had_mining_where = true;
        stmt.diagnostics.push_back(
            "rule-element WHERE clause accepted and ignored (no worked semantics)");
        while (!p.at_end() && !p.at_kw("FROM")) p.eat();
    }
    parse_from_clause(p, m.select);
    if (p.accept_kw("WHERE")) m.select.where = parse_condition_list(p);
    p.expect_kw("GROUP");
    p.expect_kw("BY");
    m.select.group_by = parse_ident_list(p, "grouping attribute");
    if (p.at_kw("HAVING")) m.having = parse_having(p);
    if (p.at_kw("CLUSTER")) {
        p.eat();
        p.expect_kw("BY");
        m.cluster_by = parse_ident_list(p, "cluster attribute");
        if (p.at_kw("HAVING")) m.cluster_having = parse_having(p);
    }
    if (!p.at_kw("EXTRACTING"))
        fail(ErrorKind::Parse, "EXTRACTING RULES required", p.cur().span);
    p.eat();
    p.expect_kw("RULES");
    p.expect_kw("WITH");
    p.expect_kw("SUPPORT");
    p.expect(Tok::Colon, "':'");
    m.ext_support = parse_metric_cond(p, Metric::Support, CmpOp::Ge);
    if (p.accept(Tok::Comma)) {
        p.expect_kw("CONFIDENCE");
        p.expect(Tok::Colon, "':'");
        m.ext_confidence = parse_metric_cond(p, Metric::Confidence, CmpOp::Ge);
        m.has_ext_confidence = true;
    }
    p.expect_statement_end();
    stmt.node = std::move(m);
    return stmt;
}

} // namespace idb::dsl
