#ifndef QPP_RATIONAL_HPP
#define QPP_RATIONAL_HPP

#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qpp
{

// Arbitrary-precision rational, always kept canonical by gmpxx (lowest terms,
// positive denominator, zero is 0/1).
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string to_string(const Rational& r)
{
    return r.get_str();
}

// Accepts "p" or "p/q" with an optional leading sign. Returns nullopt on
// malformed input or a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text)
{
    if (text.empty()) {
        return std::nullopt;
    }
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        ++i;
    }
    bool seen_digit = false, seen_slash = false, digit_after_slash = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c >= '0' && c <= '9') {
            seen_digit = true;
            if (seen_slash) {
                digit_after_slash = true;
            }
        } else if (c == '/' && !seen_slash && seen_digit) {
            seen_slash = true;
        } else {
            return std::nullopt;
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash)) {
        return std::nullopt;
    }
    std::string s(text[0] == '+' ? text.substr(1) : text);
    Rational r;
    if (r.set_str(s, 10) != 0) {
        return std::nullopt;
    }
    if (r.get_den() == 0) {
        return std::nullopt;
    }
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r)
{
    return r.get_den() == 1;
}

// Narrowing conversion for values already known to be integral.
inline long to_long(const Rational& r)
{
    return r.get_num().get_si();
}

} // namespace qpp

#endif
