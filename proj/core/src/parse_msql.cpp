#include "idb/dialects/parse.hpp"
#include "parser_base.hpp"

namespace idb::dsl {

bool MsqlEncodingStmt::operator==(const MsqlEncodingStmt& o) const {
    return ci_equal(name, o.name) && ci_equal(table, o.table) && ci_equal(attr, o.attr) &&
           ranges == o.ranges && default_code == o.default_code;
}

bool RuleShapeCond::operator==(const RuleShapeCond& o) const {
    return kind == o.kind && atoms == o.atoms;
}

bool MsqlGetRulesStmt::operator==(const MsqlGetRulesStmt& o) const {
    return ci_equal(source, o.source) && ci_equal(into, o.into) && shape == o.shape &&
           metrics == o.metrics && using_enc == o.using_enc;
}

bool RulePredAst::operator==(const RulePredAst& o) const {
    return kind == o.kind && children == o.children && on_head == o.on_head &&
           is_equality == o.is_equality && ci_equal(subject_alias, o.subject_alias) &&
           literal == o.literal && corr == o.corr && corr_head == o.corr_head &&
           proper == o.proper && reversed == o.reversed && ci_equal(metric_alias, o.metric_alias) && metric == o.metric &&
           op == o.op && value == o.value && ci_equal(nested_source, o.nested_source) &&
           ci_equal(nested_alias, o.nested_alias);
}

bool SelectRulesStmt::operator==(const SelectRulesStmt& o) const {
    return ci_equal(source, o.source) && ci_equal(alias, o.alias) && where == o.where &&
           into == o.into;
}

bool MsqlCrossoverStmt::operator==(const MsqlCrossoverStmt& o) const {
    return into == o.into && ci_equal(from_table, o.from_table) && op == o.op &&
           quantifier == o.quantifier && strict == o.strict && rule_select == o.rule_select;
}

namespace {

// { (A=1) OR (B=1) } or { (INCOME=*) } — OR/AND both accepted inside braces
std::vector<DescriptorAtomAst> parse_descriptor_set(Parser& p) {
    std::vector<DescriptorAtomAst> atoms;
    p.expect(Tok::LBrace, "'{'");
    while (true) {
        p.expect(Tok::LParen, "'('");
        DescriptorAtomAst atom;
        atom.span = p.cur().span;
        atom.name = p.expect_ident("descriptor attribute");
        p.expect(Tok::Eq, "'='");
        atom.value = parse_literal(p);
        p.expect(Tok::RParen, "')'");
        atoms.push_back(std::move(atom));
        if (p.accept_kw("OR") || p.accept_kw("AND") || p.accept(Tok::Comma)) continue;
        break;
    }
    p.expect(Tok::RBrace, "'}'");
    return atoms;
}

ParsedStatement parse_create_encoding(Parser& p) {
    ParsedStatement stmt;
    stmt.dialect = Dialect::Msql;
    MsqlEncodingStmt enc;
    enc.span = p.cur().span;
    p.expect_kw("ENCODING");
    enc.name = p.expect_ident("encoding name");
    p.expect_kw("ON");
    QualIdent target = parse_qual_ident(p, "table.attribute");
    if (target.qualifier.empty())
        fail(ErrorKind::Parse, "CREATE ENCODING target must be table.attribute", target.span);
    enc.table = target.qualifier;
    enc.attr = target.name;
    p.expect_kw("AS");
    p.expect_kw("BEGIN");
    while (true) {
        if (p.at(Tok::LParen)) {
            EncodingRangeAst r;
            r.span = p.eat().span;
            r.lo = parse_bound(p);
            p.expect(Tok::Comma, "','");
            r.hi = parse_bound(p);
            p.expect(Tok::Comma, "','");
            bool neg = p.accept(Tok::Minus);
            r.code = p.expect(Tok::Integer, "range code").int_val;
            if (neg) r.code = -r.code;
            p.expect(Tok::RParen, "')'");
            enc.ranges.push_back(std::move(r));
            if (p.accept(Tok::Comma)) continue;
            break;
        }
        break;
    }
    // trailing lone integer = default code for values no range covers
    if (p.at(Tok::Integer) || p.at(Tok::Minus)) {
        bool neg = p.accept(Tok::Minus);
        enc.default_code = p.expect(Tok::Integer, "default code").int_val;
        if (neg) enc.default_code = -enc.default_code;
    }
    p.expect_kw("END");
    p.expect_statement_end();
    if (enc.ranges.empty()) fail(ErrorKind::Parse, "CREATE ENCODING requires at least one range", enc.span);
    stmt.node = std::move(enc);
    return stmt;
}

ParsedStatement parse_getrules(Parser& p) {
    ParsedStatement stmt;
    stmt.dialect = Dialect::Msql;
    MsqlGetRulesStmt g;
    g.span = p.expect_kw("GETRULES").span;
    p.expect(Tok::LParen, "'('");
    g.source = p.expect_ident("source table");
    p.expect(Tok::RParen, "')'");
    if (!p.accept_kw("INTO")) p.error("INTO <rule table>");
    g.into = p.expect_ident("rule table name");
    if (p.accept_kw("WHERE")) {
        while (true) {
            if (p.at_kw("BODY")) {
                RuleShapeCond c;
                c.span = p.eat().span;
                if (p.accept_kw("HAS")) c.kind = ShapeKind::BodyHas;
                else if (p.accept_kw("IS")) c.kind = ShapeKind::BodyIs;
                else p.error("HAS or IS");
                c.atoms = parse_descriptor_set(p);
                g.shape.push_back(std::move(c));
            } else if (p.at_kw("CONSEQUENT")) {
                RuleShapeCond c;
                c.span = p.eat().span;
                if (p.accept_kw("IS")) c.kind = ShapeKind::ConsequentIs;
                else if (p.accept_kw("HAS")) c.kind = ShapeKind::ConsequentHas;
                else p.error("IS or HAS");
                c.atoms = parse_descriptor_set(p);
                g.shape.push_back(std::move(c));
            } else if (p.at_kw("SUPPORT") || p.at_kw("CONFIDENCE")) {
                Metric metric = p.at_kw("SUPPORT") ? Metric::Support : Metric::Confidence;
                Span sp = p.eat().span;
                CmpOp op;
                if (p.accept(Tok::Gt)) op = CmpOp::Gt;
                else if (p.accept(Tok::Ge)) op = CmpOp::Ge;
                else p.error("'>' or '>='");
                MetricCondAst m = parse_metric_cond(p, metric, op);
                m.span = sp;
                g.metrics.push_back(std::move(m));
            } else {
                p.error("BODY, CONSEQUENT, SUPPORT or CONFIDENCE condition");
            }
            if (p.accept_kw("AND")) continue;
            break;
        }
    }
    if (p.accept_kw("USING")) {
        std::string enc = p.expect_ident("encoding name");
        p.expect_kw("FOR");
        std::string attr = p.expect_ident("attribute");
        g.using_enc = {enc, attr};
    }
    p.expect_statement_end();
    stmt.node = std::move(g);
    return stmt;
}

} // namespace

// rule predicate grammar shared by SELECTRULES WHERE clauses
static RulePredAst parse_pred_or(Parser& p);

static RulePredAst parse_pred_atom(Parser& p) {
    RulePredAst a;
    a.span = p.cur().span;
    if (p.accept_kw("NOT")) {
        if (p.at_kw("EXISTS")) {
            p.eat();
            p.expect(Tok::LParen, "'('");
            SelectRulesStmt nested = parse_selectrules(p);
            p.expect(Tok::RParen, "')'");
            a.kind = RulePredAst::Kind::NotExists;
            a.nested_source = nested.source;
            a.nested_alias = nested.alias;
            a.children.push_back(std::move(nested.where));
            return a;
        }
        a.kind = RulePredAst::Kind::Not;
        a.children.push_back(parse_pred_atom(p));
        return a;
    }
    if (p.accept(Tok::LParen)) {
        RulePredAst inner = parse_pred_or(p);
        p.expect(Tok::RParen, "')'");
        return inner;
    }

    // optionally qualified subject: [R2.]BODY / [R2.]CONSEQUENT / [R2.]SUPPORT…
    std::string subject_alias;
    if (p.at(Tok::Ident) && p.peek().kind == Tok::Dot &&
        !(p.at_kw("BODY") || p.at_kw("CONSEQUENT") || p.at_kw("SUPPORT") || p.at_kw("CONFIDENCE"))) {
        subject_alias = p.eat().text;
        p.eat(); // '.'
    }
    if (p.at_kw("BODY") || p.at_kw("CONSEQUENT")) {
        a.kind = RulePredAst::Kind::Shape;
        a.on_head = p.at_kw("CONSEQUENT");
        a.subject_alias = subject_alias;
        p.eat();
        if (p.accept_kw("HAS")) a.is_equality = false;
        else if (p.accept_kw("IS")) a.is_equality = true;
        else p.error("HAS or IS");
        if (p.at(Tok::LBrace)) {
            a.literal = parse_descriptor_set(p);
        } else {
            QualIdent ref = parse_qual_ident(p, "rule reference (alias.BODY)");
            if (!ci_equal(ref.name, "BODY") && !ci_equal(ref.name, "CONSEQUENT"))
                fail(ErrorKind::Parse, "expected alias.BODY or alias.CONSEQUENT", ref.span);
            a.corr = ref;
            a.corr_head = ci_equal(ref.name, "CONSEQUENT");
        }
        return a;
    }
    if (p.at_kw("SUPPORT") || p.at_kw("CONFIDENCE")) {
        a.kind = RulePredAst::Kind::MetricCmp;
        a.metric = p.at_kw("SUPPORT") ? Metric::Support : Metric::Confidence;
        a.metric_alias = subject_alias;
        p.eat();
        if (p.accept(Tok::Gt)) a.op = CmpOp::Gt;
        else if (p.accept(Tok::Ge)) a.op = CmpOp::Ge;
        else if (p.accept(Tok::Lt)) a.op = CmpOp::Lt;
        else if (p.accept(Tok::Le)) a.op = CmpOp::Le;
        else if (p.accept(Tok::Eq)) a.op = CmpOp::Eq;
        else if (p.accept(Tok::Ne)) a.op = CmpOp::Ne;
        else p.error("comparison operator");
        a.value = parse_threshold_value(p, a.value_text);
        return a;
    }
    p.error("rule predicate (BODY, CONSEQUENT, SUPPORT, CONFIDENCE, NOT EXISTS)");
}

static RulePredAst parse_pred_and(Parser& p) {
    RulePredAst first = parse_pred_atom(p);
    if (!p.at_kw("AND")) return first;
    RulePredAst node;
    node.kind = RulePredAst::Kind::And;
    node.span = first.span;
    node.children.push_back(std::move(first));
    while (p.accept_kw("AND")) node.children.push_back(parse_pred_atom(p));
    return node;
}

static RulePredAst parse_pred_or(Parser& p) {
    RulePredAst first = parse_pred_and(p);
    if (!p.at_kw("OR")) return first;
    RulePredAst node;
    node.kind = RulePredAst::Kind::Or;
    node.span = first.span;
    node.children.push_back(std::move(first));
    while (p.accept_kw("OR")) node.children.push_back(parse_pred_and(p));
    return node;
}

RulePredAst parse_msql_rule_predicate(Parser& p) { return parse_pred_or(p); }

SelectRulesStmt parse_selectrules(Parser& p) {
    SelectRulesStmt s;
    s.span = p.expect_kw("SELECTRULES").span;
    p.expect(Tok::LParen, "'('");
    s.source = p.expect_ident("rule table name");
    p.expect(Tok::RParen, "')'");
    if (p.accept_kw("AS")) s.alias = p.expect_ident("alias");
    if (p.accept_kw("WHERE")) s.where = parse_msql_rule_predicate(p);
    else s.where.kind = RulePredAst::Kind::True;
    return s;
}

ParsedStatement parse_msql(const std::vector<Token>& tokens) {
    Parser p(tokens);
    if (p.at_kw("CREATE") && p.peek().is_kw("ENCODING")) {
        p.eat();
        return parse_create_encoding(p);
    }
    if (p.at_kw("CREATE") && p.peek().is_kw("VIEW")) return parse_shared_data_statement(p, Dialect::Msql);
    if (p.at_kw("GETRULES")) return parse_getrules(p);
    if (p.at_kw("SELECTRULES")) {
        ParsedStatement stmt;
        stmt.dialect = Dialect::Msql;
        SelectRulesStmt s = parse_selectrules(p);
        if (p.accept_kw("INTO")) s.into = p.expect_ident("rule table name");
        p.expect_statement_end();
        stmt.node = std::move(s);
        return stmt;
    }
    // [INSERT INTO x AS] SELECT * FROM t WHERE VIOLATES|SATISFIES ALL|ANY (SELECTRULES …)
    std::optional<std::string> into;
    if (p.at_kw("INSERT")) {
        p.eat();
        p.expect_kw("INTO");
        into = p.expect_ident("table name");
        p.expect_kw("AS");
    }
    if (p.at_kw("SELECT")) {
        // look ahead for a cross-over WHERE
        std::size_t save = p.pos;
        bool crossover_form = false;
        while (!p.at_end()) {
            if (p.at_kw("VIOLATES") || p.at_kw("SATISFIES")) {
                crossover_form = true;
                break;
            }
            p.eat();
        }
        p.pos = save;
        if (!crossover_form) {
            if (into) p.error("SELECT with VIOLATES/SATISFIES after INSERT INTO");
            return parse_shared_data_statement(p, Dialect::Msql);
        }
        MsqlCrossoverStmt c;
        c.span = p.cur().span;
        c.into = into;
        p.expect_kw("SELECT");
        if (!p.accept(Tok::Star)) parse_ident_list(p, "attribute"); // keys come from grouping
        p.expect_kw("FROM");
        c.from_table = p.expect_ident("table name");
        p.expect_kw("WHERE");
        if (p.accept_kw("VIOLATES")) c.op = CrossOp::Violates;
        else if (p.accept_kw("SATISFIES")) c.op = CrossOp::Satisfies;
        else p.error("VIOLATES or SATISFIES");
        if (p.accept_kw("STRICT")) c.strict = true;
        if (p.accept_kw("ALL")) c.quantifier = Quantifier::All;
        else if (p.accept_kw("ANY")) c.quantifier = Quantifier::Any;
        else p.error("ALL or ANY");
        p.expect(Tok::LParen, "'('");
        c.rule_select = parse_selectrules(p);
        p.expect(Tok::RParen, "')'");
        p.expect_statement_end();
        ParsedStatement stmt;
        stmt.dialect = Dialect::Msql;
        stmt.node = std::move(c);
        return stmt;
    }
    p.error("CREATE ENCODING, CREATE VIEW, GETRULES, SELECTRULES, SELECT or INSERT");
}

} // namespace idb::dsl
