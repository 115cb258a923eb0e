#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idb/error.hpp"

namespace idb::dsl {

enum class Tok {
    End,
    Ident,
    String,
    Integer,
    Real,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Dot,
    DotDot,
    Arrow, // "->" or "→"
    Eq,
    Ne, // "!=" or "<>"
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Colon,
    Percent,
};

const char* tok_name(Tok t);

struct Token {
    Tok kind = Tok::End;
    std::string text;       // original spelling (identifiers keep their case)
    std::int64_t int_val = 0;
    double real_val = 0;
    Span span;

    bool is_kw(const char* kw) const;
};

// Keywords are case-insensitive identifiers; comments are /* ... */.
std::vector<Token> tokenize(const std::string& text);

} // namespace idb::dsl
