#include "idb/dialects/parse.hpp"
#include "parser_base.hpp"

namespace idb::dsl {

bool CoverageAst::operator==(const CoverageAst& o) const {
    return is_interval == o.is_interval && lo == o.lo && hi == o.hi && values == o.values;
}

bool DmqlLevelLine::operator==(const DmqlLevelLine& o) const {
    return level == o.level && coverage == o.coverage && parent_level == o.parent_level &&
           ci_equal(parent_label, o.parent_label);
}

bool DmqlHierarchyStmt::operator==(const DmqlHierarchyStmt& o) const {
    return ci_equal(name, o.name) && ci_equal(attr, o.attr) && on_table == o.on_table &&
           levels == o.levels;
}

bool DmqlFindStmt::operator==(const DmqlFindStmt& o) const {
    return use_database == o.use_database && use_hierarchies == o.use_hierarchies &&
           as_name == o.as_name && metapattern == o.metapattern && select == o.select &&
           thresholds == o.thresholds;
}

namespace {

int parse_level_ident(Parser& p) {
    Token t = p.expect(Tok::Ident, "LEVEL<n>");
    std::string up = to_upper(t.text);
    if (up.rfind("LEVEL", 0) != 0 || up.size() == 5)
        fail(ErrorKind::Parse, "expected LEVEL<n>, found '" + t.text + "'", t.span);
    for (std::size_t i = 5; i < up.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(up[i])))
            fail(ErrorKind::Parse, "expected LEVEL<n>, found '" + t.text + "'", t.span);
    return std::stoi(up.substr(5));
}

// {MIN..499}, {500..599}, {a,b,c}, [500..599]
CoverageAst parse_coverage(Parser& p) {
    CoverageAst cov;
    cov.span = p.cur().span;
    Tok open = p.at(Tok::LBracket) ? Tok::LBracket : Tok::LBrace;
    Tok close = open == Tok::LBracket ? Tok::RBracket : Tok::RBrace;
    p.expect(open, "'{' or '['");
    bool interval_start = p.at(Tok::Integer) || p.at(Tok::Minus) || p.at_kw("MIN");
    if (interval_start) {
        cov.lo = parse_bound(p);
        if (p.accept(Tok::DotDot)) {
            cov.is_interval = true;
            cov.hi = parse_bound(p);
            p.expect(close, "'}' or ']'");
            return cov;
        }
        // single numeric value set {5} or list {1,2}
        cov.is_interval = false;
        cov.values.push_back(std::to_string(*cov.lo));
        cov.lo.reset();
        while (p.accept(Tok::Comma)) {
            auto b = parse_bound(p);
            cov.values.push_back(b ? std::to_string(*b) : "MIN");
        }
        p.expect(close, "'}' or ']'");
        return cov;
    }
    cov.is_interval = false;
    while (true) {
        if (p.at(Tok::String)) cov.values.push_back(p.eat().text);
        else cov.values.push_back(p.expect_ident("concept value"));
        if (!p.accept(Tok::Comma)) break;
    }
    p.expect(close, "'}' or ']'");
    return cov;
}

ParsedStatement parse_define_hierarchy(Parser& p) {
    ParsedStatement stmt;
    stmt.dialect = Dialect::Dmql;
    DmqlHierarchyStmt h;
    h.span = p.expect_kw("DEFINE").span;
    p.expect_kw("HIERARCHY");
    h.name = p.expect_ident("hierarchy name");
    p.expect_kw("FOR");
    h.attr = p.expect_ident("attribute");
    if (p.accept_kw("ON")) h.on_table = p.expect_ident("table name");
    p.accept_kw("AS");
    while (p.at(Tok::Ident) && to_upper(p.cur().text).rfind("LEVEL", 0) == 0) {
        DmqlLevelLine line;
        line.span = p.cur().span;
        line.level = parse_level_ident(p);
        p.expect(Tok::Colon, "':'");
        line.coverage = parse_coverage(p);
        p.expect(Tok::Lt, "'<'");
        line.parent_level = parse_level_ident(p);
        p.expect(Tok::Colon, "':'");
        if (p.at(Tok::String)) line.parent_label = p.eat().text;
        else line.parent_label = p.expect_ident("parent concept");
        if (line.parent_level != line.level - 1)
            fail(ErrorKind::Parse,
                 "LEVEL" + std::to_string(line.level) + " must attach to LEVEL" +
                     std::to_string(line.level - 1),
                 line.span);
        h.levels.push_back(std::move(line));
    }
    if (h.levels.empty()) p.error("at least one LEVEL line");
    p.expect_statement_end();
    stmt.node = std::move(h);
    return stmt;
}

MetricCondAst parse_with_threshold(Parser& p, ParsedStatement& stmt) {
    // WITH [kind] THRESHOLD = value[%]
    Span sp = p.expect_kw("WITH").span;
    Metric metric = Metric::Support;
    bool known_kind = true;
    std::string kind_text = "SUPPORT";
    if (!p.at_kw("THRESHOLD")) {
        Token kind = p.expect(Tok::Ident, "threshold kind");
        kind_text = to_upper(kind.text);
        if (kind_text == "SUPPORT") metric = Metric::Support;
        else if (kind_text == "CONFIDENCE") metric = Metric::Confidence;
        else known_kind = false;
    }
    p.expect_kw("THRESHOLD");
    p.expect(Tok::Eq, "'='");
    MetricCondAst m = parse_metric_cond(p, metric, CmpOp::Ge);
    m.span = sp;
    if (!known_kind) {
        stmt.diagnostics.push_back("threshold kind '" + kind_text +
                                   "' has no defined semantics here; clause ignored");
        m.metric = Metric::Support;
        m.value = Rational::from_int(0); // neutral marker; dropped by caller
        m.value_text = "";
    }
    return m;
}

} // namespace

ParsedStatement parse_dmql(const std::vector<Token>& tokens) {
    Parser p(tokens);
    if (p.at_kw("DEFINE")) return parse_define_hierarchy(p);
    if (p.at_kw("CREATE") || (p.at_kw("SELECT"))) return parse_shared_data_statement(p, Dialect::Dmql);

    ParsedStatement stmt;
    stmt.dialect = Dialect::Dmql;

    std::optional<std::string> use_db;
    std::vector<DmqlUseHierarchyStmt> use_hier;
    while (p.at_kw("USE")) {
        Span sp = p.eat().span;
        if (p.accept_kw("DATABASE")) {
            use_db = p.expect_ident("database name");
        } else if (p.accept_kw("HIERARCHY")) {
            DmqlUseHierarchyStmt u;
            u.span = sp;
            u.hierarchy = p.expect_ident("hierarchy name");
            p.expect_kw("FOR");
            u.attr = p.expect_ident("attribute");
            use_hier.push_back(std::move(u));
        } else {
            p.error("DATABASE or HIERARCHY");
        }
    }
    if (!p.at_kw("FIND")) {
        // standalone USE statement(s)
        if (use_db && use_hier.empty() && p.at_end()) {
            stmt.node = DmqlUseDatabaseStmt{*use_db, {}};
            return stmt;
        }
        if (!use_db && use_hier.size() == 1 && p.at_end()) {
            stmt.node = use_hier[0];
            return stmt;
        }
        p.error("FIND ASSOCIATIONS after USE clauses");
    }

    DmqlFindStmt f;
    f.span = p.eat().span; // FIND
    f.use_database = use_db;
    f.use_hierarchies = std::move(use_hier);
    p.expect_kw("ASSOCIATIONS");
    if (p.accept_kw("AS")) {
        if (p.accept(Tok::LParen)) {
            f.as_name = p.expect_ident("rule table name");
            p.expect(Tok::RParen, "')'");
        } else {
            f.as_name = p.expect_ident("rule table name");
        }
    }
    if (p.accept_kw("MATCHING")) {
        p.expect_kw("WITH");
        auto parse_side = [&](MetapatternSide& side) {
            side.attr = p.expect_ident("metapattern attribute");
            side.plus = p.accept(Tok::Plus);
            p.expect(Tok::LParen, "'('");
            p.expect_ident("variable");
            p.expect(Tok::Comma, "','");
            if (p.accept(Tok::LBrace)) {
                p.expect_ident("set variable");
                p.expect(Tok::RBrace, "'}'");
            } else {
                p.expect_ident("variable");
            }
            p.expect(Tok::RParen, "')'");
        };
        MetapatternSide body, head;
        parse_side(body);
        if (!p.accept(Tok::Arrow))
            fail(ErrorKind::Parse, "malformed metapattern: expected '->' between body and head",
                 p.cur().span);
        parse_side(head);
        f.metapattern = {body, head};
    }
    parse_from_clause(p, f.select);
    if (p.accept_kw("WHERE")) f.select.where = parse_condition_list(p);
    if (p.at_kw("GROUP")) {
        p.eat();
        p.expect_kw("BY");
        f.select.group_by = parse_ident_list(p, "grouping attribute");
    }
    if (p.at_kw("ORDER")) {
        p.eat();
        p.expect_kw("BY");
        parse_ident_list(p, "ordering attribute");
        f.had_order_by = true;
        stmt.diagnostics.push_back("ORDER BY accepted and ignored (no defined ordering semantics)");
    }
    while (p.at_kw("WITH")) {
        MetricCondAst m = parse_with_threshold(p, stmt);
        if (!m.value_text.empty()) f.thresholds.push_back(std::move(m));
    }
    p.expect_statement_end();
    stmt.node = std::move(f);
    return stmt;
}

} // namespace idb::dsl
