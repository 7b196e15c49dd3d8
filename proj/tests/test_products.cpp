#include <catch_amalgamated.hpp>

#include <qpp/products.hpp>

using namespace qpp;

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

// Euler's function by plain repeated multiplication, no shortcuts.
QSeries euler_naive(long N)
{
    QSeries s = QSeries::one(N);
    for (long k = 1; k <= N; ++k) {
        s = s * (QSeries::one(N) - monomial(1, k, N));
    }
    return s;
}

} // namespace

TEST_CASE("MonomialArg printing")
{
    CHECK(q_pow(0).to_string() == "1");
    CHECK(minus_q_pow(0).to_string() == "-1");
    CHECK(q_pow(1).to_string() == "q");
    CHECK(minus_q_pow(2).to_string() == "-q^2");
}

TEST_CASE("poch_finite")
{
    CHECK(poch_finite(minus_q_pow(3), 2, 0, 7) == QSeries::one(7));
    CHECK(poch_finite(minus_q_pow(1), 2, 1, 5) == poly(5, {1, 1}));
    CHECK(poch_finite(minus_q_pow(0), 2, 2, 10) == poly(10, {2, 0, 2}));
    // (q;q)_3 = (1-q)(1-q^2)(1-q^3)
    CHECK(poch_finite(q_pow(1), 1, 3, 8) == poly(8, {1, -1, -1, 0, 1, 1, -1}));
    CHECK(poch_finite(q_pow(0), 1, 2, 4).is_zero());
    CHECK_THROWS_AS(poch_finite(q_pow(1), 0, 2, 4), zero_exponent);
}

TEST_CASE("poch_inf")
{
    CHECK(poch_inf(q_pow(1), 1, 7) == poly(7, {1, -1, -1, 0, 0, 1, 0, 1}));
    CHECK(poch_inf(q_pow(1), 1, 40) == euler_naive(40));
    CHECK(poch_inf(minus_q_pow(0), 2, 30) == scale(poch_inf(minus_q_pow(2), 2, 30), 2));
    CHECK(inverse(poch_inf(q_pow(2), 2, 10)) == poly(10, {1, 0, 1, 0, 2, 0, 3, 0, 5, 0, 7}));
    CHECK(inv_poch_inf(q_pow(2), 2, 30) == inverse(poch_inf(q_pow(2), 2, 30)));
    CHECK(inv_poch_finite(minus_q_pow(1), 1, 5, 30) == inverse(poch_finite(minus_q_pow(1), 1, 5, 30)));
    CHECK_THROWS_AS(inv_poch_inf(q_pow(0), 1, 5), zero_constant_term);
}

TEST_CASE("poch_inf is the stable limit of poch_finite")
{
    for (long m : {1, 2, 3}) {
        for (auto a : {q_pow(1), minus_q_pow(1), minus_q_pow(2), q_pow(3)}) {
            const long N = 35;
            const long n = N / m + 1;
            CHECK(poch_finite(a, m, n, N) == poch_inf(a, m, N));
            CHECK(poch_finite(a, m, n + 5, N) == poch_inf(a, m, N));
        }
    }
}

TEST_CASE("poch_finite recurrence")
{
    const long N = 25;
    for (long m : {1, 2}) {
        for (auto a : {q_pow(1), minus_q_pow(0), minus_q_pow(3)}) {
            for (long n = 0; n < 8; ++n) {
                const QSeries factor = QSeries::one(N) - monomial(a.sign, a.exponent + m * n, N);
                CHECK(poch_finite(a, m, n + 1, N) == poch_finite(a, m, n, N) * factor);
            }
        }
    }
}

TEST_CASE("parity split of (-q;q)_inf")
{
    const long N = 60;
    CHECK(poch_inf(minus_q_pow(1), 2, N) * poch_inf(minus_q_pow(2), 2, N) == poch_inf(minus_q_pow(1), 1, N));
    // Euler: distinct parts and odd parts are equinumerous
    CHECK(poch_inf(minus_q_pow(1), 1, N) == inv_poch_inf(q_pow(1), 2, N));
}

TEST_CASE("inv_one_plus_pow")
{
    CHECK(inv_one_plus_pow(1, 4) == poly(4, {1, -1, 1, -1, 1}));
    CHECK(inv_one_plus_pow(3, 7) == poly(7, {1, 0, 0, -1, 0, 0, 1}));
    for (long m = 1; m <= 6; ++m) {
        const QSeries one_plus = QSeries::one(20) + monomial(1, m, 20);
        CHECK(one_plus * inv_one_plus_pow(m, 20) == QSeries::one(20));
    }
    CHECK_THROWS_AS(inv_one_plus_pow(0, 5), zero_exponent);
}

TEST_CASE("pentagonal")
{
    CHECK(pentagonal(0) == QSeries::one(0));
    CHECK(pentagonal(7) == poly(7, {1, -1, -1, 0, 0, 1, 0, 1}));
    CHECK(eq_up_to(pentagonal(500), poch_inf(q_pow(1), 1, 500), 500).equal);
}
