#include "idb/rational.hpp"

#include <numeric>

#include "idb/error.hpp"

namespace idb {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) fail(ErrorKind::Plan, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    bool percent = false;
    if (!s.empty() && s.back() == '%') {
        percent = true;
        s.pop_back();
    }
    if (s.empty()) fail(ErrorKind::Parse, "empty numeric literal");

    std::size_t dot = s.find('.');
    std::int64_t whole = 0, frac = 0, scale = 1;
    std::string wpart = dot == std::string::npos ? s : s.substr(0, dot);
    std::string fpart = dot == std::string::npos ? "" : s.substr(dot + 1);
    bool neg = false;
    if (!wpart.empty() && (wpart[0] == '-' || wpart[0] == '+')) {
        neg = wpart[0] == '-';
        wpart.erase(0, 1);
    }
    for (char c : wpart) {
        if (c < '0' || c > '9') fail(ErrorKind::Parse, "bad numeric literal '" + std::string(text) + "'");
        whole = whole * 10 + (c - '0');
    }
    for (char c : fpart) {
        if (c < '0' || c > '9') fail(ErrorKind::Parse, "bad numeric literal '" + std::string(text) + "'");
        if (scale > 1000000000000LL) fail(ErrorKind::Parse, "numeric literal too precise");
        frac = frac * 10 + (c - '0');
        scale *= 10;
    }
    Rational r(whole * scale + frac, scale);
    if (neg) r.num = -r.num;
    if (percent) r = Rational(r.num, r.den * 100);
    return r;
}

int Rational::compare(const Rational& o) const {
    // denominators are positive and small (parsed decimals / counts), use 128-bit
    __int128 lhs = static_cast<__int128>(num) * o.den;
    __int128 rhs = static_cast<__int128>(o.num) * den;
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

std::string Rational::to_decimal(int max_frac) const {
    std::int64_t n = num;
    bool neg = n < 0;
    if (neg) n = -n;
    std::int64_t pow = 1;
    for (int i = 0; i < max_frac; ++i) pow *= 10;
    __int128 scaled = static_cast<__int128>(n) * pow;
    __int128 q = scaled / den;
    __int128 rem = scaled % den;
    if (rem * 2 >= den) ++q; // round half away from zero
    std::int64_t whole = static_cast<std::int64_t>(q / pow);
    std::int64_t frac = static_cast<std::int64_t>(q % pow);
    std::string out = (neg ? "-" : "") + std::to_string(whole);
    if (frac != 0) {
        std::string f = std::to_string(frac);
        f.insert(f.begin(), static_cast<std::size_t>(max_frac) - f.size(), '0');
        while (!f.empty() && f.back() == '0') f.pop_back();
        out += "." + f;
    }
    return out;
}

std::string Rational::to_percent() const {
    Rational p(num * 100, den);
    return p.to_decimal(1) + "%";
}

} // namespace idb
