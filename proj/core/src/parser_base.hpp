#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "idb/dialects/ast.hpp"
#include "idb/dialects/token.hpp"

namespace idb::dsl {

struct Parser {
    const std::vector<Token>& toks;
    std::size_t pos = 0;

    explicit Parser(const std::vector<Token>& t) : toks(t) {}

    const Token& cur() const { return toks[pos]; }
    const Token& peek(std::size_t ahead = 1) const {
        std::size_t i = pos + ahead;
        return i < toks.size() ? toks[i] : toks.back();
    }
    bool at(Tok k) const { return cur().kind == k; }
    bool at_kw(const char* kw) const { return cur().is_kw(kw); }
    bool at_end() const { return at(Tok::End); }

    Token eat() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }

    bool accept(Tok k) {
        if (at(k)) {
            eat();
            return true;
        }
        return false;
    }
    bool accept_kw(const char* kw) {
        if (at_kw(kw)) {
            eat();
            return true;
        }
        return false;
    }

    [[noreturn]] void error(const std::string& expected) const {
        std::string found = cur().kind == Tok::End ? "end of input"
                            : cur().kind == Tok::Ident ? "'" + cur().text + "'"
                                                       : tok_name(cur().kind);
        fail(ErrorKind::Parse, "expected " + expected + ", found " + found, cur().span);
    }

    Token expect(Tok k, const char* expected) {
        if (!at(k)) error(expected);
        return eat();
    }
    Token expect_kw(const char* kw) {
        if (!at_kw(kw)) error(std::string("keyword ") + kw);
        return eat();
    }
    std::string expect_ident(const char* what) {
        if (!at(Tok::Ident)) error(what);
        return eat().text;
    }
    void expect_statement_end() {
        accept(Tok::Semi);
        if (!at_end()) error("';' or end of statement");
    }
};

// shared sub-parsers (parse_data.cpp)
QualIdent parse_qual_ident(Parser& p, const char* what);
LiteralAst parse_literal(Parser& p);
std::vector<CondAtom> parse_condition_list(Parser& p);
void parse_from_clause(Parser& p, DataSelectAst& out);
std::vector<QualIdent> parse_ident_list(Parser& p, const char* what);
DataSelectAst parse_data_select_body(Parser& p, bool allow_set_marker);
ParsedStatement parse_shared_data_statement(Parser& p, Dialect d); // CREATE VIEW / SELECT
MetricCondAst parse_metric_cond(Parser& p, Metric metric, CmpOp op);
Rational parse_threshold_value(Parser& p, std::string& text_out);
std::optional<std::int64_t> parse_bound(Parser& p); // MIN/MAX/[-]integer

// MSQL-style rule predicate (also hosts nested SELECTRULES)
RulePredAst parse_msql_rule_predicate(Parser& p);
SelectRulesStmt parse_selectrules(Parser& p);

} // namespace idb::dsl
