#include "parser_base.hpp"

#include <cctype>

#include "idb/dialects/parse.hpp"

namespace idb::dsl {

Value LiteralAst::to_value() const {
    switch (kind) {
        case Kind::Int: return Value::integer(i);
        case Kind::Real: return Value::real(std::stod(text));
        case Kind::Str: return Value::text(text);
        case Kind::Star: return Value::null();
    }
    return Value::null();
}

bool LiteralAst::operator==(const LiteralAst& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Int: return i == o.i;
        case Kind::Real: return std::stod(text) == std::stod(o.text);
        case Kind::Str: return text == o.text;
        case Kind::Star: return true;
    }
    return false;
}

bool CondAtom::operator==(const CondAtom& o) const {
    return lhs == o.lhs && op == o.op && rhs == o.rhs;
}

bool DataSelectAst::operator==(const DataSelectAst& o) const {
    return projection == o.projection && set_marker == o.set_marker && from == o.from &&
           where == o.where && group_by == o.group_by && pivot == o.pivot;
}

bool SelectDataStmt::operator==(const SelectDataStmt& o) const {
    return select == o.select && into == o.into;
}

QualIdent parse_qual_ident(Parser& p, const char* what) {
    QualIdent q;
    q.span = p.cur().span;
    q.name = p.expect_ident(what);
    if (p.at(Tok::Dot)) {
        p.eat();
        q.qualifier = q.name;
        q.name = p.expect_ident(what);
    }
    return q;
}

LiteralAst parse_literal(Parser& p) {
    LiteralAst lit;
    lit.span = p.cur().span;
    if (p.at(Tok::Star)) {
        p.eat();
        lit.kind = LiteralAst::Kind::Star;
        return lit;
    }
    bool neg = p.accept(Tok::Minus);
    if (p.at(Tok::Integer)) {
        lit.kind = LiteralAst::Kind::Int;
        lit.i = p.eat().int_val;
        if (neg) lit.i = -lit.i;
        return lit;
    }
    if (p.at(Tok::Real)) {
        lit.kind = LiteralAst::Kind::Real;
        lit.text = (neg ? "-" : "") + p.eat().text;
        return lit;
    }
    if (neg) p.error("number after '-'");
    if (p.at(Tok::String)) {
        lit.kind = LiteralAst::Kind::Str;
        lit.text = p.eat().text;
        return lit;
    }
    p.error("literal value");
}

static CmpOp parse_cmp_op(Parser& p) {
    if (p.accept(Tok::Eq)) return CmpOp::Eq;
    if (p.accept(Tok::Ne)) return CmpOp::Ne;
    if (p.accept(Tok::Le)) return CmpOp::Le;
    if (p.accept(Tok::Lt)) return CmpOp::Lt;
    if (p.accept(Tok::Ge)) return CmpOp::Ge;
    if (p.accept(Tok::Gt)) return CmpOp::Gt;
    p.error("comparison operator");
}

std::vector<CondAtom> parse_condition_list(Parser& p) {
    std::vector<CondAtom> out;
    while (true) {
        CondAtom atom;
        atom.span = p.cur().span;
        atom.lhs = parse_qual_ident(p, "attribute");
        atom.op = parse_cmp_op(p);
        if (p.at(Tok::Ident)) {
            atom.rhs = parse_qual_ident(p, "attribute or literal");
        } else {
            atom.rhs = parse_literal(p);
        }
        out.push_back(std::move(atom));
        if (!p.accept_kw("AND")) break;
    }
    return out;
}

void parse_from_clause(Parser& p, DataSelectAst& out) {
    p.expect_kw("FROM");
    while (true) {
        TableRef ref;
        ref.span = p.cur().span;
        ref.name = p.expect_ident("table name");
        // optional alias: a bare identifier that's not a clause keyword
        if (p.at(Tok::Ident) && !p.at_kw("WHERE") && !p.at_kw("GROUP") && !p.at_kw("CLUSTER") &&
            !p.at_kw("EXTRACTING") && !p.at_kw("PIVOT") && !p.at_kw("ORDER") && !p.at_kw("HAVING") &&
            !p.at_kw("WITH") && !p.at_kw("INTO") && !p.at_kw("AND") && !p.at_kw("USING"))
            ref.alias = p.eat().text;
        out.from.push_back(std::move(ref));
        if (!p.accept(Tok::Comma)) break;
    }
}

std::vector<QualIdent> parse_ident_list(Parser& p, const char* what) {
    std::vector<QualIdent> out;
    out.push_back(parse_qual_ident(p, what));
    while (p.accept(Tok::Comma)) out.push_back(parse_qual_ident(p, what));
    return out;
}

// SELECT <list|*> FROM ... [WHERE conds] [GROUP BY keys] [PIVOT item ON key]
DataSelectAst parse_data_select_body(Parser& p, bool allow_set_marker) {
    DataSelectAst out;
    p.expect_kw("SELECT");
    p.accept_kw("DISTINCT");
    if (p.accept(Tok::Star)) {
        // empty projection = all attributes
    } else {
        while (true) {
            if (allow_set_marker && p.at_kw("SET") && p.peek().kind == Tok::LParen) {
                p.eat();
                p.eat();
                out.set_marker = true;
                out.projection.push_back(parse_qual_ident(p, "attribute"));
                p.expect(Tok::RParen, "')'");
            } else {
                out.projection.push_back(parse_qual_ident(p, "attribute"));
            }
            if (!p.accept(Tok::Comma)) break;
        }
    }
    parse_from_clause(p, out);
    if (p.accept_kw("WHERE")) out.where = parse_condition_list(p);
    if (p.at_kw("GROUP")) {
        p.eat();
        p.expect_kw("BY");
        out.group_by = parse_ident_list(p, "grouping attribute");
    }
    if (p.at_kw("PIVOT")) {
        PivotAst piv;
        piv.span = p.eat().span;
        piv.item_attr = p.expect_ident("item attribute");
        p.expect_kw("ON");
        piv.key_attr = p.expect_ident("key attribute");
        out.pivot = std::move(piv);
    }
    return out;
}

ParsedStatement parse_shared_data_statement(Parser& p, Dialect d) {
    ParsedStatement stmt;
    stmt.dialect = d;
    if (p.at_kw("CREATE")) {
        CreateViewStmt cv;
        cv.span = p.eat().span;
        p.expect_kw("VIEW");
        cv.name = p.expect_ident("view name");
        p.expect_kw("AS");
        cv.select = parse_data_select_body(p, true);
        p.expect_statement_end();
        stmt.node = std::move(cv);
        return stmt;
    }
    SelectDataStmt sel;
    sel.select = parse_data_select_body(p, true);
    if (p.accept_kw("INTO")) sel.into = p.expect_ident("table name");
    p.expect_statement_end();
    stmt.node = std::move(sel);
    return stmt;
}

Rational parse_threshold_value(Parser& p, std::string& text_out) {
    bool neg = p.accept(Tok::Minus);
    if (!p.at(Tok::Integer) && !p.at(Tok::Real)) p.error("threshold value");
    Token t = p.eat();
    std::string text = (neg ? "-" : "") + t.text;
    if (p.accept(Tok::Percent)) text += "%";
    text_out = text;
    return Rational::parse(text);
}

MetricCondAst parse_metric_cond(Parser& p, Metric metric, CmpOp op) {
    MetricCondAst m;
    m.span = p.cur().span;
    m.metric = metric;
    m.op = op;
    m.value = parse_threshold_value(p, m.value_text);
    return m;
}

std::optional<std::int64_t> parse_bound(Parser& p) {
    if (p.accept_kw("MIN") || p.accept_kw("MAX")) return std::nullopt;
    bool neg = p.accept(Tok::Minus);
    Token t = p.expect(Tok::Integer, "integer bound, MIN or MAX");
    return neg ? -t.int_val : t.int_val;
}

ParsedStatement parse_statement(const std::string& text, Dialect dialect) {
    auto tokens = tokenize(text);
    switch (dialect) {
        case Dialect::Msql: return parse_msql(tokens);
        case Dialect::Dmql: return parse_dmql(tokens);
        case Dialect::MineRule: return parse_minerule(tokens);
        case Dialect::MineSql: return parse_minesql(tokens);
    }
    fail(ErrorKind::Usage, "unknown dialect");
}

std::vector<ScriptItem> split_script(const std::string& text) {
    std::vector<ScriptItem> out;
    std::string cur;
    Span cur_start{1, 1};
    int line = 1, col = 1;
    bool in_string = false;
    char quote = 0;
    bool in_comment = false;
    bool at_line_start = true;
    bool buffer_empty = true;

    auto flush = [&](bool require_content) {
        bool content = false;
        for (char ch : cur)
            if (!std::isspace(static_cast<unsigned char>(ch))) content = true;
        if (content || !require_content) {
            ScriptItem item;
            item.text = cur;
            item.start = cur_start;
            out.push_back(std::move(item));
        }
        cur.clear();
        buffer_empty = true;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (buffer_empty && !in_comment && !std::isspace(static_cast<unsigned char>(ch))) {
            cur_start = {line, col};
            // meta command: '.' at start of a line while no statement is open
            if (ch == '.' && at_line_start) {
                std::string meta;
                while (i < text.size() && text[i] != '\n') meta.push_back(text[i++]);
                ScriptItem item;
                item.is_meta = true;
                item.text = meta;
                item.start = cur_start;
                out.push_back(std::move(item));
                ++line;
                col = 1;
                at_line_start = true;
                continue;
            }
            buffer_empty = false;
        }
        cur.push_back(ch);
        if (in_comment) {
            if (ch == '/' && i > 0 && text[i - 1] == '*') in_comment = false;
        } else if (in_string) {
            if (ch == quote) in_string = false;
        } else if (ch == '\'' || ch == '"') {
            in_string = true;
            quote = ch;
        } else if (ch == '*' && !cur.empty() && cur.size() >= 2 && cur[cur.size() - 2] == '/') {
            in_comment = true;
        } else if (ch == ';') {
            flush(true);
        }
        if (ch == '\n') {
            ++line;
            col = 1;
            at_line_start = true;
        } else {
            ++col;
            if (!std::isspace(static_cast<unsigned char>(ch))) at_line_start = false;
        }
    }
    flush(true);
    return out;
}

} // namespace idb::dsl
