#include <random>

#include <catch_amalgamated.hpp>

#include <qpp/products.hpp>
#include <qpp/series.hpp>

#include "generators.hpp"

using namespace qpp;
using qpp::testing::random_series;

namespace
{

QSeries poly(long order, std::initializer_list<int> coeffs)
{
    QSeries s(order);
    long k = 0;
    for (int c : coeffs) {
        if (k <= order) {
            s[k] = c;
        }
        ++k;
    }
    return s;
}

// Partitions of n into even parts, by direct recursion over the largest part.
long even_partitions(long n, long largest)
{
    if (n == 0) {
        return 1;
    }
    long total = 0;
    for (long p = 2; p <= std::min(n, largest); p += 2) {
        total += even_partitions(n - p, p);
    }
    return total;
}

} // namespace

TEST_CASE("monomial")
{
    CHECK(monomial(1, 0, 5) == QSeries::one(5));
    CHECK(monomial(-1, 2, 5) == poly(5, {0, 0, -1}));
    CHECK(monomial(Rational(1, 2), 0, 3).coeff(0) == Rational(1, 2));
    CHECK(monomial(7, 9, 5).is_zero());
    CHECK_THROWS_AS(monomial(1, -1, 5), negative_exponent);
}

TEST_CASE("add and neg")
{
    CHECK(poly(4, {1, 1}) + poly(4, {1, -1}) == poly(4, {2}));
    const QSeries s = poly(4, {3, 0, -2, 5});
    CHECK(s + QSeries::zero(4) == s);
    CHECK(s + neg(s) == QSeries::zero(4));
    // orders meet at the minimum
    CHECK((poly(6, {1, 2}) + poly(3, {1})).order() == 3);
}

TEST_CASE("mul")
{
    const long N = 12;
    QSeries geometric(N);
    for (long k = 0; k <= N; ++k) {
        geometric[k] = 1;
    }
    CHECK(poly(N, {1, -1}) * geometric == QSeries::one(N));
    const QSeries s = poly(N, {2, 0, 1, -3});
    CHECK(s * QSeries::one(N) == s);
    CHECK((poly(10, {1, 1}) * poly(4, {1, 1})).order() == 4);

    // (-q;q^2)_inf (-q^2;q^2)_inf = (-q;q)_inf
    const long M = 50;
    CHECK(eq_up_to(poch_inf(minus_q_pow(1), 2, M) * poch_inf(minus_q_pow(2), 2, M), poch_inf(minus_q_pow(1), 1, M), M));
}

TEST_CASE("inverse")
{
    const long N = 10;
    QSeries geometric(N);
    for (long k = 0; k <= N; ++k) {
        geometric[k] = 1;
    }
    CHECK(inverse(poly(N, {1, -1})) == geometric);
    CHECK(inverse(poly(N, {2})) == monomial(Rational(1, 2), 0, N));
    CHECK_THROWS_AS(inverse(poly(N, {0, 1})), zero_constant_term);

    // 1/(q^2;q^2)_inf counts partitions into even parts
    const long M = 30;
    const QSeries inv = inverse(poch_inf(q_pow(2), 2, M));
    for (long n = 0; n <= M; ++n) {
        CHECK(inv[n] == even_partitions(n, n));
    }
    // frozen from the brute-force count above
    CHECK(inv.truncated(10) == poly(10, {1, 0, 1, 0, 2, 0, 3, 0, 5, 0, 7}));
}

TEST_CASE("compose_power")
{
    CHECK(compose_power(poly(2, {1, 1, 1}), -1, 1) == poly(2, {1, -1, 1}));
    CHECK(compose_power(poly(2, {1, 1}), 1, 2) == poly(2, {1, 0, 1}));
    const QSeries s = poly(9, {1, 2, 3, 4, 5});
    const QSeries c = compose_power(s, -1, 3);
    CHECK(c.order() == 9);
    CHECK(c == poly(9, {1, 0, 0, -2, 0, 0, 3, 0, 0, -4}));
    CHECK_THROWS_AS(compose_power(s, 1, 0), zero_exponent);
}

TEST_CASE("coeff, eq_up_to, scale, shift")
{
    const QSeries s = poly(5, {1, 0, 3});
    CHECK(s.coeff(2) == 3);
    CHECK_THROWS_AS(s.coeff(6), index_out_of_range);
    CHECK_THROWS_AS(s.coeff(-1), index_out_of_range);
    CHECK(eq_up_to(s, s, 5).equal);
    const auto cmp = eq_up_to(s, s + monomial(1, 4, 5), 5);
    CHECK_FALSE(cmp.equal);
    CHECK(cmp.first_mismatch == 4);
    CHECK(eq_up_to(s, s + monomial(1, 4, 5), 3).equal);
    CHECK(shift(poly(5, {1, 1}), 2) == poly(5, {0, 0, 1, 1}));
    CHECK(shift(poly(3, {1, 1, 1, 1}), 2) == poly(3, {0, 0, 1, 1}));
    CHECK(scale(s, Rational(1, 3)) == poly(5, {0, 0, 1}) + monomial(Rational(1, 3), 0, 5));
    CHECK(s.valuation() == 0);
    CHECK(shift(s, 3).valuation() == 3);
    CHECK_FALSE(QSeries::zero(4).valuation().has_value());
}

TEST_CASE("ring laws hold exactly up to truncation")
{
    std::mt19937 rng(20241015);
    for (int trial = 0; trial < 60; ++trial) {
        const long N = 1 + trial % 12;
        const QSeries a = random_series(rng, N);
        const QSeries b = random_series(rng, N);
        const QSeries c = random_series(rng, N);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("inverse is a two-sided inverse")
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const QSeries a = random_series(rng, 3 + trial % 15, true);
        CHECK(a * inverse(a) == QSeries::one(a.order()));
        CHECK(inverse(inverse(a)) == a);
    }
}

TEST_CASE("compose_power is an involution at -q and a ring homomorphism")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const long N = 2 + trial % 14;
        const QSeries a = random_series(rng, N);
        const QSeries b = random_series(rng, N);
        CHECK(compose_power(compose_power(a, -1, 1), -1, 1) == a);
        for (int sign : {1, -1}) {
            for (long m : {1, 2, 3}) {
                CHECK(compose_power(a * b, sign, m) == compose_power(a, sign, m) * compose_power(b, sign, m));
                CHECK(compose_power(a + b, sign, m) == compose_power(a, sign, m) + compose_power(b, sign, m));
            }
        }
    }
}
