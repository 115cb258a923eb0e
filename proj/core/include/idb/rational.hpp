#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace idb {

// Exact non-negative rational. Thresholds and confidences are compared by
// integer cross-multiplication so boundary cases (0.25 of 8 groups) are exact
// and outputs are byte-stable.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    static Rational from_int(std::int64_t n) { return Rational(n, 1); }
    // Parses "2", "0.25", "25%", ".5".
    static Rational parse(std::string_view text);

    int compare(const Rational& o) const;
    bool operator==(const Rational& o) const { return compare(o) == 0; }
    bool operator<(const Rational& o) const { return compare(o) < 0; }
    bool operator<=(const Rational& o) const { return compare(o) <= 0; }
    bool operator>(const Rational& o) const { return compare(o) > 0; }
    bool operator>=(const Rational& o) const { return compare(o) >= 0; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // Decimal with at most max_frac digits (round half away from zero),
    // trailing zeros stripped: 3/4 -> "0.75", 1/1 -> "1", 2/3 -> "0.666667".
    std::string to_decimal(int max_frac = 6) const;
    // Percent with at most one decimal: 2/3 -> "66.7%", 3/4 -> "75%".
    std::string to_percent() const;
};

} // namespace idb
