#ifndef QPP_PRODUCTS_HPP
#define QPP_PRODUCTS_HPP

#include <string>

#include <qpp/errors.hpp>
#include <qpp/series.hpp>

namespace qpp
{

// Pochhammer argument a = sign * q^exponent.
struct MonomialArg {
    int sign = 1;
    long exponent = 0;

    friend bool operator==(const MonomialArg&, const MonomialArg&) = default;

    std::string to_string() const
    {
        const std::string mag = exponent == 0 ? "1" : exponent == 1 ? "q" : "q^" + std::to_string(exponent);
        return sign < 0 ? "-" + mag : mag;
    }
};

inline MonomialArg q_pow(long r)
{
    return {1, r};
}
inline MonomialArg minus_q_pow(long r)
{
    return {-1, r};
}

// In-place multiplication by (1 - c q^k), O(N).
inline void mul_binomial(QSeries& s, const Rational& c, long k)
{
    if (k == 0) {
        s *= Rational(1 - c);
        return;
    }
    for (long i = s.order(); i >= k; --i) {
        if (s[i - k] != 0) {
            s[i] -= c * s[i - k];
        }
    }
}

// In-place division by (1 - c q^k), O(N).
inline void div_binomial(QSeries& s, const Rational& c, long k)
{
    if (k == 0) {
        if (c == 1) {
            throw zero_constant_term("division by the zero factor (1 - q^0)");
        }
        s *= Rational(1 / (1 - c));
        return;
    }
    for (long i = k; i <= s.order(); ++i) {
        if (s[i - k] != 0) {
            s[i] += c * s[i - k];
        }
    }
}

// Multiplies s in place by (a; q^m)_n. Factors whose exponent exceeds the
// order are skipped since they are 1 modulo q^(N+1).
inline void mul_poch(QSeries& s, MonomialArg a, long m, long n)
{
    const Rational c(a.sign);
    for (long j = 0; j < n; ++j) {
        const long e = a.exponent + m * j;
        if (e > s.order()) {
            break;
        }
        mul_binomial(s, c, e);
    }
}

// Divides s in place by (a; q^m)_n.
inline void div_poch(QSeries& s, MonomialArg a, long m, long n)
{
    const Rational c(a.sign);
    for (long j = 0; j < n; ++j) {
        const long e = a.exponent + m * j;
        if (e > s.order()) {
            break;
        }
        div_binomial(s, c, e);
    }
}

inline void check_modulus(long m)
{
    if (m < 1) {
        throw zero_exponent("Pochhammer modulus must be positive, got " + std::to_string(m));
    }
}

// (a; q^m)_n = prod_{j=0}^{n-1} (1 - a q^{mj}).
inline QSeries poch_finite(MonomialArg a, long m, long n, long order)
{
    check_modulus(m);
    QSeries s = QSeries::one(order);
    mul_poch(s, a, m, n);
    return s;
}

// (a; q^m)_inf truncated at the order. With a = q^0 the j = 0 factor vanishes
// and so does the product.
inline QSeries poch_inf(MonomialArg a, long m, long order)
{
    check_modulus(m);
    QSeries s = QSeries::one(order);
    mul_poch(s, a, m, order + 1);
    return s;
}

// 1 / (a; q^m)_n.
inline QSeries inv_poch_finite(MonomialArg a, long m, long n, long order)
{
    check_modulus(m);
    QSeries s = QSeries::one(order);
    div_poch(s, a, m, n);
    return s;
}

// 1 / (a; q^m)_inf.
inline QSeries inv_poch_inf(MonomialArg a, long m, long order)
{
    check_modulus(m);
    QSeries s = QSeries::one(order);
    div_poch(s, a, m, order + 1);
    return s;
}

// 1 / (1 + q^m) = 1 - q^m + q^{2m} - ...
inline QSeries inv_one_plus_pow(long m, long order)
{
    if (m == 0) {
        throw zero_exponent("1/(1+q^0) is the constant 1/2; callers handle it separately");
    }
    if (m < 0) {
        throw negative_exponent("inv_one_plus_pow with negative exponent " + std::to_string(m));
    }
    QSeries s(order);
    int sign = 1;
    for (long k = 0; k <= order; k += m) {
        s[k] = sign;
        sign = -sign;
    }
    return s;
}

// Euler's pentagonal-number sum  sum_{k in Z} (-1)^k q^{k(3k-1)/2}.
// Built independently of poch_inf so that the two can check each other.
inline QSeries pentagonal(long order)
{
    QSeries s(order);
    s[0] = 1;
    for (long k = 1;; ++k) {
        const long e_minus = k * (3 * k - 1) / 2;
        const long e_plus = k * (3 * k + 1) / 2;
        if (e_minus > order) {
            break;
        }
        const int sign = (k % 2 == 0) ? 1 : -1;
        s[e_minus] += sign;
        if (e_plus <= order) {
            s[e_plus] += sign;
        }
    }
    return s;
}

} // namespace qpp

#endif
