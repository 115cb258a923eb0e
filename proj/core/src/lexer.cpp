#include "idb/dialects/token.hpp"

#include <cctype>

#include "idb/value.hpp"

namespace idb::dsl {

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier";
        case Tok::String: return "string";
        case Tok::Integer: return "integer";
        case Tok::Real: return "number";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Comma: return "','";
        case Tok::Semi: return "';'";
        case Tok::Dot: return "'.'";
        case Tok::DotDot: return "'..'";
        case Tok::Arrow: return "'->'";
        case Tok::Eq: return "'='";
        case Tok::Ne: return "'!='";
        case Tok::Lt: return "'<'";
        case Tok::Le: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Ge: return "'>='";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Colon: return "':'";
        case Tok::Percent: return "'%'";
    }
    return "?";
}

bool Token::is_kw(const char* kw) const {
    return kind == Tok::Ident && ci_equal(text, kw);
}

namespace {

struct Cursor {
    const std::string& in;
    std::size_t pos = 0;
    int line = 1, col = 1;

    char peek(std::size_t ahead = 0) const {
        return pos + ahead < in.size() ? in[pos + ahead] : '\0';
    }
    char get() {
        char c = in[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    Span span() const { return {line, col}; }
};

} // namespace

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    Cursor c{text};
    while (c.pos < text.size()) {
        char ch = c.peek();
        if (std::isspace(static_cast<unsigned char>(ch))) {
            c.get();
            continue;
        }
        Span start = c.span();
        // comment
        if (ch == '/' && c.peek(1) == '*') {
            c.get();
            c.get();
            bool closed = false;
            while (c.pos < text.size()) {
                if (c.peek() == '*' && c.peek(1) == '/') {
                    c.get();
                    c.get();
                    closed = true;
                    break;
                }
                c.get();
            }
            if (!closed) fail(ErrorKind::Lex, "unterminated comment", start);
            continue;
        }
        Token t;
        t.span = start;
        // identifier / keyword
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string id;
            while (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_')
                id.push_back(c.get());
            t.kind = Tok::Ident;
            t.text = std::move(id);
            out.push_back(std::move(t));
            continue;
        }
        // number
        if (std::isdigit(static_cast<unsigned char>(ch)) ||
            (ch == '.' && std::isdigit(static_cast<unsigned char>(c.peek(1))))) {
            std::string num;
            bool is_real = false;
            while (std::isdigit(static_cast<unsigned char>(c.peek()))) num.push_back(c.get());
            if (c.peek() == '.' && c.peek(1) != '.') {
                is_real = true;
                num.push_back(c.get());
                while (std::isdigit(static_cast<unsigned char>(c.peek()))) num.push_back(c.get());
            }
            t.text = num;
            if (is_real) {
                t.kind = Tok::Real;
                t.real_val = std::stod(num);
            } else {
                t.kind = Tok::Integer;
                t.int_val = std::stoll(num);
            }
            out.push_back(std::move(t));
            continue;
        }
        // string literal: '...' with '' escape (also "...")
        if (ch == '\'' || ch == '"') {
            char quote = c.get();
            std::string s;
            bool closed = false;
            while (c.pos < text.size()) {
                char x = c.get();
                if (x == quote) {
                    if (quote == '\'' && c.peek() == '\'') {
                        s.push_back('\'');
                        c.get();
                        continue;
                    }
                    closed = true;
                    break;
                }
                s.push_back(x);
            }
            if (!closed) fail(ErrorKind::Lex, "unterminated string", start);
            t.kind = Tok::String;
            t.text = std::move(s);
            out.push_back(std::move(t));
            continue;
        }
        // UTF-8 arrow
        if (static_cast<unsigned char>(ch) == 0xE2 && static_cast<unsigned char>(c.peek(1)) == 0x86 &&
            static_cast<unsigned char>(c.peek(2)) == 0x92) {
            c.get();
            c.get();
            c.get();
            t.kind = Tok::Arrow;
            t.text = "->";
            out.push_back(std::move(t));
            continue;
        }
        c.get();
        switch (ch) {
            case '(': t.kind = Tok::LParen; break;
            case ')': t.kind = Tok::RParen; break;
            case '{': t.kind = Tok::LBrace; break;
            case '}': t.kind = Tok::RBrace; break;
            case '[': t.kind = Tok::LBracket; break;
            case ']': t.kind = Tok::RBracket; break;
            case ',': t.kind = Tok::Comma; break;
            case ';': t.kind = Tok::Semi; break;
            case '+': t.kind = Tok::Plus; break;
            case '*': t.kind = Tok::Star; break;
            case ':': t.kind = Tok::Colon; break;
            case '%': t.kind = Tok::Percent; break;
            case '=': t.kind = Tok::Eq; break;
            case '.':
                if (c.peek() == '.') {
                    c.get();
                    t.kind = Tok::DotDot;
                } else {
                    t.kind = Tok::Dot;
                }
                break;
            case '-':
                if (c.peek() == '>') {
                    c.get();
                    t.kind = Tok::Arrow;
                } else {
                    t.kind = Tok::Minus;
                }
                break;
            case '!':
                if (c.peek() == '=') {
                    c.get();
                    t.kind = Tok::Ne;
                } else {
                    fail(ErrorKind::Lex, "unexpected character '!'", start);
                }
                break;
            case '<':
                if (c.peek() == '=') {
                    c.get();
                    t.kind = Tok::Le;
                } else if (c.peek() == '>') {
                    c.get();
                    t.kind = Tok::Ne;
                } else {
                    t.kind = Tok::Lt;
                }
                break;
            case '>':
                if (c.peek() == '=') {
                    c.get();
                    t.kind = Tok::Ge;
                } else {
                    t.kind = Tok::Gt;
                }
                break;
            default:
                fail(ErrorKind::Lex, std::string("unexpected character '") + ch + "'", start);
        }
        t.text = t.text.empty() ? std::string(1, ch) : t.text;
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.span = c.span();
    out.push_back(std::move(end));
    return out;
}

} // namespace idb::dsl
