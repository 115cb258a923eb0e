#pragma once

#include <string>
#include <vector>

#include "idb/dialects/ast.hpp"
#include "idb/dialects/token.hpp"

namespace idb::dsl {

ParsedStatement parse_msql(const std::vector<Token>& tokens);
ParsedStatement parse_dmql(const std::vector<Token>& tokens);
ParsedStatement parse_minerule(const std::vector<Token>& tokens);
ParsedStatement parse_minesql(const std::vector<Token>& tokens);

ParsedStatement parse_statement(const std::string& text, Dialect dialect);

// Script/REPL chunking: ';' terminates statements (quotes and comments
// respected); a line starting with '.' outside any statement is a meta command.
struct ScriptItem {
    bool is_meta = false;
    std::string text;
    Span start;
};

std::vector<ScriptItem> split_script(const std::string& text);

} // namespace idb::dsl
