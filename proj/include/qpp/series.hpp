#ifndef QPP_SERIES_HPP
#define QPP_SERIES_HPP

#include <algorithm>
#include <cassert>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <qpp/errors.hpp>
#include <qpp/rational.hpp>

namespace qpp
{

// Truncated formal power series in q with exact rational coefficients.
//
// A series of order N carries the coefficients of q^0 .. q^N (inclusive);
// everything above N is unknown. Binary operations truncate to the smaller
// order of their operands.
class QSeries
{
public:
    QSeries() : m_coeffs(1) {}
    explicit QSeries(long order) : m_coeffs(static_cast<std::size_t>(checked_order(order)) + 1) {}
    QSeries(long order, std::vector<Rational> coeffs) : m_coeffs(std::move(coeffs))
    {
        m_coeffs.resize(static_cast<std::size_t>(checked_order(order)) + 1);
    }

    static QSeries zero(long order)
    {
        return QSeries(order);
    }
    static QSeries one(long order)
    {
        QSeries s(order);
        s.m_coeffs[0] = 1;
        return s;
    }

    long order() const
    {
        return static_cast<long>(m_coeffs.size()) - 1;
    }

    const Rational& coeff(long k) const
    {
        if (k < 0 || k > order()) {
            throw index_out_of_range("coefficient index " + std::to_string(k) + " outside 0.."
                                     + std::to_string(order()));
        }
        return m_coeffs[static_cast<std::size_t>(k)];
    }

    // Unchecked access.
    const Rational& operator[](long k) const
    {
        assert(k >= 0 && k <= order());
        return m_coeffs[static_cast<std::size_t>(k)];
    }
    Rational& operator[](long k)
    {
        assert(k >= 0 && k <= order());
        return m_coeffs[static_cast<std::size_t>(k)];
    }

    std::span<const Rational> coeffs() const
    {
        return m_coeffs;
    }

    // Smallest exponent with a nonzero coefficient, or nullopt if the series
    // vanishes up to its order.
    std::optional<long> valuation() const
    {
        for (long k = 0; k <= order(); ++k) {
            if (m_coeffs[static_cast<std::size_t>(k)] != 0) {
                return k;
            }
        }
        return std::nullopt;
    }

    bool is_zero() const
    {
        return !valuation().has_value();
    }

    QSeries truncated(long order) const
    {
        const long n = std::min(order, this->order());
        return QSeries(n, std::vector<Rational>(m_coeffs.begin(), m_coeffs.begin() + n + 1));
    }

    friend bool operator==(const QSeries&, const QSeries&) = default;

    QSeries& operator+=(const QSeries& other)
    {
        truncate_in_place(other.order());
        for (long k = 0; k <= order(); ++k) {
            (*this)[k] += other[k];
        }
        return *this;
    }
    QSeries& operator-=(const QSeries& other)
    {
        truncate_in_place(other.order());
        for (long k = 0; k <= order(); ++k) {
            (*this)[k] -= other[k];
        }
        return *this;
    }
    QSeries& operator*=(const Rational& c)
    {
        for (auto& x : m_coeffs) {
            x *= c;
        }
        return *this;
    }

private:
    static long checked_order(long order)
    {
        if (order < 0) {
            throw index_out_of_range("negative truncation order " + std::to_string(order));
        }
        return order;
    }

    void truncate_in_place(long order)
    {
        if (order < this->order()) {
            m_coeffs.resize(static_cast<std::size_t>(order) + 1);
        }
    }

    std::vector<Rational> m_coeffs;
};

inline QSeries monomial(const Rational& c, long k, long order)
{
    if (k < 0) {
        throw negative_exponent("monomial exponent " + std::to_string(k) + " is negative");
    }
    QSeries s(order);
    if (k <= order) {
        s[k] = c;
    }
    return s;
}

inline QSeries add(QSeries a, const QSeries& b)
{
    a += b;
    return a;
}

inline QSeries sub(QSeries a, const QSeries& b)
{
    a -= b;
    return a;
}

inline QSeries neg(QSeries a)
{
    a *= Rational(-1);
    return a;
}

inline QSeries scale(QSeries a, const Rational& c)
{
    a *= c;
    return a;
}

// Multiplication by q^k; coefficients pushed past the order are dropped.
inline QSeries shift(const QSeries& a, long k)
{
    if (k < 0) {
        throw negative_exponent("shift by negative exponent " + std::to_string(k));
    }
    QSeries r(a.order());
    for (long i = a.order() - k; i >= 0; --i) {
        r[i + k] = a[i];
    }
    return r;
}

// Cauchy product truncated to the smaller order.
inline QSeries mul(const QSeries& a, const QSeries& b)
{
    const long n = std::min(a.order(), b.order());
    QSeries r(n);
    Rational t;
    for (long i = 0; i <= n; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (long j = 0; i + j <= n; ++j) {
            if (b[j] != 0) {
                t = a[i] * b[j];
                r[i + j] += t;
            }
        }
    }
    return r;
}

// Multiplicative inverse by exact recursive convolution.
inline QSeries inverse(const QSeries& a)
{
    if (a[0] == 0) {
        throw zero_constant_term("cannot invert a series with zero constant term");
    }
    const long n = a.order();
    QSeries r(n);
    const Rational inv0 = 1 / a[0];
    r[0] = inv0;
    Rational acc;
    for (long k = 1; k <= n; ++k) {
        acc = 0;
        for (long j = 1; j <= k; ++j) {
            if (a[j] != 0) {
                acc += a[j] * r[k - j];
            }
        }
        r[k] = -acc * inv0;
    }
    return r;
}

inline QSeries div(const QSeries& a, const QSeries& b)
{
    return mul(a, inverse(b));
}

// Substitutes q -> sign * q^m. The coefficient at exponent k moves to m*k
// with a factor sign^k; the order is preserved.
inline QSeries compose_power(const QSeries& a, int sign, long m)
{
    assert(sign == 1 || sign == -1);
    if (m < 1) {
        throw zero_exponent("compose_power needs a positive power, got " + std::to_string(m));
    }
    QSeries r(a.order());
    for (long k = 0; k * m <= a.order(); ++k) {
        r[k * m] = (sign < 0 && k % 2 != 0) ? Rational(-a[k]) : a[k];
    }
    return r;
}

struct SeriesComparison {
    bool equal;
    std::optional<long> first_mismatch;

    explicit operator bool() const
    {
        return equal;
    }
};

// Compares coefficients 0..m exactly; m must not exceed either order.
inline SeriesComparison eq_up_to(const QSeries& a, const QSeries& b, long m)
{
    if (m > a.order() || m > b.order()) {
        throw index_out_of_range("comparison order " + std::to_string(m) + " exceeds operand order");
    }
    for (long k = 0; k <= m; ++k) {
        if (a[k] != b[k]) {
            return {false, k};
        }
    }
    return {true, std::nullopt};
}

inline QSeries operator+(QSeries a, const QSeries& b)
{
    return add(std::move(a), b);
}
inline QSeries operator-(QSeries a, const QSeries& b)
{
    return sub(std::move(a), b);
}
inline QSeries operator-(QSeries a)
{
    return neg(std::move(a));
}
inline QSeries operator*(const QSeries& a, const QSeries& b)
{
    return mul(a, b);
}
inline QSeries operator*(QSeries a, const Rational& c)
{
    return scale(std::move(a), c);
}
inline QSeries operator*(const Rational& c, QSeries a)
{
    return scale(std::move(a), c);
}
inline QSeries operator/(const QSeries& a, const QSeries& b)
{
    return div(a, b);
}

inline std::ostream& operator<<(std::ostream& os, const QSeries& s)
{
    bool first = true;
    for (long k = 0; k <= s.order(); ++k) {
        if (s[k] == 0) {
            continue;
        }
        os << (first ? "" : " + ") << s[k];
        if (k > 0) {
            os << "*q^" << k;
        }
        first = false;
    }
    if (first) {
        os << "0";
    }
    return os << " + O(q^" << s.order() + 1 << ")";
}

} // namespace qpp

#endif
