#pragma once

#include <stdexcept>
#include <string>

namespace idb {

// 1-based position in source text; {0,0} means "no position".
struct Span {
    int line = 0;
    int col = 0;
    bool valid() const { return line > 0 && col > 0; }
};

enum class ErrorKind {
    Io,
    Ingest,
    Pivot,
    Definition,
    Encoding,
    Lex,
    Parse,
    Resolve,
    Plan,
    Catalog,
    Oracle,
    Usage,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, Span span = {})
        : std::runtime_error(std::move(message)), kind(kind), span(span) {}

    ErrorKind kind;
    Span span;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string message, Span span = {}) {
    throw Error(kind, std::move(message), span);
}

} // namespace idb
