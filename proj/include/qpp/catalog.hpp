#ifndef QPP_CATALOG_HPP
#define QPP_CATALOG_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <qpp/errors.hpp>
#include <qpp/partitions.hpp>
#include <qpp/products.hpp>
#include <qpp/series.hpp>
#include <qpp/summation.hpp>

namespace qpp
{

// Length argument meaning "infinite product"; mul_poch/div_poch stop at the
// truncation order anyway.
inline constexpr long infinite = std::numeric_limits<long>::max() / 4;

enum class IdentityId {
    and1_ou_eu,
    and2_od_eu,
    and3_ou_ed,
    and4_eu_ou,
    and5_ed_ou,
    and6_eu_od,
    thm1_od_ed,
    thm1_ed_od,
    thm1_ed_ou,
    remark_f,
    pf_decomp,
    bilateral_recomb,
    s3_double_sum,
    s3_theta_diff
};

inline constexpr std::array<IdentityId, 14> all_identities = {
    IdentityId::and1_ou_eu, IdentityId::and2_od_eu,    IdentityId::and3_ou_ed,       IdentityId::and4_eu_ou,
    IdentityId::and5_ed_ou, IdentityId::and6_eu_od,    IdentityId::thm1_od_ed,       IdentityId::thm1_ed_od,
    IdentityId::thm1_ed_ou, IdentityId::remark_f,      IdentityId::pf_decomp,        IdentityId::bilateral_recomb,
    IdentityId::s3_double_sum, IdentityId::s3_theta_diff};

inline constexpr std::string_view identity_tag(IdentityId id)
{
    constexpr std::array<std::string_view, 14> tags
        = {"and1.ou_eu", "and2.od_eu", "and3.ou_ed", "and4.eu_ou",       "and5.ed_ou",    "and6.eu_od",
           "thm1.od_ed", "thm1.ed_od", "thm1.ed_ou", "remark.f",         "pf.decomp",     "bilateral.recomb",
           "s3.double_sum", "s3.theta_diff"};
    return tags[static_cast<std::size_t>(id)];
}

inline std::optional<IdentityId> parse_identity(std::string_view tag)
{
    for (auto id : all_identities) {
        if (identity_tag(id) == tag) {
            return id;
        }
    }
    return std::nullopt;
}

// Default verification orders: univariate identities, the double sums, and
// the degenerate-form specializations.
inline constexpr long default_univariate_order = 200;
inline constexpr long default_double_sum_order = 80;
inline constexpr long default_degenerate_order = 60;

inline long default_order(IdentityId id)
{
    return (id == IdentityId::s3_double_sum || id == IdentityId::s3_theta_diff) ? default_double_sum_order
                                                                                 : default_univariate_order;
}

// ---------------------------------------------------------------------------
// Sum sides of the eight generating functions, at argument q.

inline QSeries sum_side(Family family, long N)
{
    auto term = [&](long n) -> QSeries {
        switch (family) {
            case Family::ou_eu: {
                // q^{2n} / ((q^2;q^2)_n (q^{2n+1};q^2)_inf)
                if (2 * n > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, 2 * n, N);
                div_poch(s, q_pow(2), 2, n);
                div_poch(s, q_pow(2 * n + 1), 2, infinite);
                return s;
            }
            case Family::od_eu: {
                // q^{2n} (-q^{2n+1};q^2)_inf / (q^2;q^2)_n
                if (2 * n > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, 2 * n, N);
                mul_poch(s, minus_q_pow(2 * n + 1), 2, infinite);
                div_poch(s, q_pow(2), 2, n);
                return s;
            }
            case Family::ou_ed: {
                // (-q^2;q^2)_n q^{2n+2} / (q^{2n+3};q^2)_inf
                if (2 * n + 2 > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, 2 * n + 2, N);
                mul_poch(s, minus_q_pow(2), 2, n);
                div_poch(s, q_pow(2 * n + 3), 2, infinite);
                return s;
            }
            case Family::od_ed: {
                // q^{2n+2} (-q^2;q^2)_n (-q^{2n+3};q^2)_inf
                if (2 * n + 2 > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, 2 * n + 2, N);
                mul_poch(s, minus_q_pow(2), 2, n);
                mul_poch(s, minus_q_pow(2 * n + 3), 2, infinite);
                return s;
            }
            case Family::eu_ou: {
                // q^{2n+1} / ((q;q^2)_{n+1} (q^{2n+2};q^2)_inf)
                if (2 * n + 1 > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, 2 * n + 1, N);
                div_poch(s, q_pow(1), 2, n + 1);
                div_poch(s, q_pow(2 * n + 2), 2, infinite);
                return s;
            }
            case Family::ed_ou: {
                // q^{2n+1} (-q^{2n+2};q^2)_inf / (q;q^2)_{n+1}
                if (2 * n + 1 > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, 2 * n + 1, N);
                mul_poch(s, minus_q_pow(2 * n + 2), 2, infinite);
                div_poch(s, q_pow(1), 2, n + 1);
                return s;
            }
            case Family::eu_od: {
                // q^{2n+1} (-q;q^2)_n / (q^{2n+2};q^2)_inf
                if (2 * n + 1 > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, 2 * n + 1, N);
                mul_poch(s, minus_q_pow(1), 2, n);
                div_poch(s, q_pow(2 * n + 2), 2, infinite);
                return s;
            }
            case Family::ed_od: {
                // q^{2n+1} (-q;q^2)_n (-q^{2n+2};q^2)_inf
                if (2 * n + 1 > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, 2 * n + 1, N);
                mul_poch(s, minus_q_pow(1), 2, n);
                mul_poch(s, minus_q_pow(2 * n + 2), 2, infinite);
                return s;
            }
        }
        return QSeries::zero(N);
    };
    return sum_until_vanishing(N, 0, term);
}

// ---------------------------------------------------------------------------
// Bilateral sums  sum_{n in Z} (-1)^n q^{e(n)} / (1 + q^n).

// One term of a bilateral sum with its exponent made nonnegative. For n < 0,
// 1/(1+q^n) = q^{|n|}/(1+q^{|n|}); the n = 0 term is the constant 1/2.
struct BilateralTerm {
    long n;
    int sign;
    long exponent;
    std::optional<long> denominator_power; // nullopt: the n = 0 half constant

    friend bool operator==(const BilateralTerm&, const BilateralTerm&) = default;
};

inline BilateralTerm canonical_bilateral_term(long n, long raw_exponent)
{
    BilateralTerm t{n, (n % 2 == 0) ? 1 : -1, raw_exponent, std::nullopt};
    if (n > 0) {
        t.denominator_power = n;
    } else if (n < 0) {
        t.exponent = raw_exponent - n;
        t.denominator_power = -n;
    }
    if (t.exponent < 0) {
        throw negative_exponent("bilateral term n = " + std::to_string(n) + " has exponent "
                                + std::to_string(t.exponent) + " after canonicalization");
    }
    return t;
}

inline QSeries evaluate(const BilateralTerm& t, long N)
{
    if (t.exponent > N) {
        return QSeries::zero(N);
    }
    if (!t.denominator_power) {
        return monomial(Rational(t.sign, 2), t.exponent, N);
    }
    QSeries s = shift(inv_one_plus_pow(*t.denominator_power, N), t.exponent);
    if (t.sign < 0) {
        s = neg(std::move(s));
    }
    return s;
}

template <typename Exponent>
QSeries bilateral_sum(Exponent&& exponent, long N)
{
    auto term = [&](long n) { return evaluate(canonical_bilateral_term(n, exponent(n)), N); };
    return sum_until_vanishing(N, 0, term) + sum_until_vanishing(N, -1, term, -1);
}

inline long three_n_n_plus_one_half(long n)
{
    return 3 * n * (n + 1) / 2;
}

inline long n_three_n_plus_one_half(long n)
{
    return n * (3 * n + 1) / 2;
}

// ---------------------------------------------------------------------------
// Pieces shared between several identities.

// sum_{n>=0} q^{n^2+n} / ((-q;q)_n^2 (1+q^{n+1}))
inline QSeries andrews_sum(long N)
{
    return sum_until_vanishing(N, 0, [&](long n) {
        const long e = n * n + n;
        if (e > N) {
            return QSeries::zero(N);
        }
        QSeries s = monomial(1, e, N);
        div_poch(s, minus_q_pow(1), 1, n);
        div_poch(s, minus_q_pow(1), 1, n);
        div_binomial(s, -1, n + 1);
        return s;
    });
}

// -(-q^2;q^2)_inf / 2 * (2 - 1/(-q;q)_inf - inner)
inline QSeries ed_ou_closed_form(const QSeries& inner)
{
    const long N = inner.order();
    QSeries bracket = monomial(2, 0, N) - inv_poch_inf(minus_q_pow(1), 1, N) - inner;
    return scale(mul(poch_inf(minus_q_pow(2), 2, N), bracket), Rational(-1, 2));
}

// 2/(q;q)_inf * sum_{n in Z} (-1)^n q^{3n(n+1)/2} / (1+q^n)
inline QSeries andrews_sum_bilateral(long N)
{
    QSeries s = bilateral_sum(three_n_n_plus_one_half, N);
    div_poch(s, q_pow(1), 1, infinite);
    return scale(std::move(s), 2);
}

// sum_{n>=0} (-1)^n q^{3n(n+1)/2} (1 - q^{2n+1}) / ((1+q^n)(1+q^{n+1}))
inline QSeries pf_combined_sum(long N)
{
    return sum_until_vanishing(N, 0, [&](long n) {
        const long e = three_n_n_plus_one_half(n);
        if (e > N) {
            return QSeries::zero(N);
        }
        QSeries s = monomial(n % 2 == 0 ? 1 : -1, e, N);
        mul_binomial(s, 1, 2 * n + 1);
        div_binomial(s, -1, n);
        div_binomial(s, -1, n + 1);
        return s;
    });
}

// sum_{n>=0} (-1)^n q^{3n(n+1)/2} (1/(1+q^n) - q^{n+1}/(1+q^{n+1}))
inline QSeries pf_split_sum(long N)
{
    return sum_until_vanishing(N, 0, [&](long n) {
        const long e = three_n_n_plus_one_half(n);
        if (e > N) {
            return QSeries::zero(N);
        }
        QSeries first = monomial(1, 0, N);
        div_binomial(first, -1, n);
        QSeries second = monomial(1, n + 1, N);
        div_binomial(second, -1, n + 1);
        QSeries s = shift(first - second, e);
        return n % 2 == 0 ? s : neg(std::move(s));
    });
}

// sum_{m>=0} sum_{n>=0} (-1)^m q^{n(n+3)/2 + 2nm + 2m^2 + 2m} * extra(m)
template <typename Extra>
QSeries s3_positive_lattice(long N, Extra&& extra)
{
    return sum_until_vanishing(N, 0, [&](long m) {
        return sum_until_vanishing(N, 0, [&](long n) {
            const long e = n * (n + 3) / 2 + 2 * n * m + 2 * m * m + 2 * m;
            if (e > N) {
                return QSeries::zero(N);
            }
            QSeries s = monomial(m % 2 == 0 ? 1 : -1, e, N);
            extra(s, m);
            return s;
        });
    });
}

// sum_{n,m<0} (-1)^m q^{n(n+3)/2 + 2nm + 2m(m+1)}; every exponent here is >= 1.
inline QSeries s3_negative_lattice(long N)
{
    return sum_until_vanishing(
        N, -1,
        [&](long m) {
            return sum_until_vanishing(
                N, -1,
                [&](long n) {
                    const long e = n * (n + 3) / 2 + 2 * n * m + 2 * m * (m + 1);
                    if (e < 0) {
                        throw negative_exponent("lattice term (" + std::to_string(n) + ", " + std::to_string(m)
                                                + ") has exponent " + std::to_string(e));
                    }
                    return monomial(m % 2 == 0 ? 1 : -1, e, N);
                },
                -1);
        },
        -1);
}

// ---------------------------------------------------------------------------
// Ramanujan's third-order mock theta function f(q).

enum class RemarkVariant { eulerian, bilateral_a, bilateral_b };

inline QSeries remark_f_series(RemarkVariant variant, long N)
{
    switch (variant) {
        case RemarkVariant::eulerian:
            // sum q^{n^2} / (-q;q)_n^2
            return sum_until_vanishing(N, 0, [&](long n) {
                if (n * n > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, n * n, N);
                div_poch(s, minus_q_pow(1), 1, n);
                div_poch(s, minus_q_pow(1), 1, n);
                return s;
            });
        case RemarkVariant::bilateral_a: {
            // 2/(q;q)_inf sum_{n in Z} (-1)^n q^{n(3n+1)/2} / (1+q^n)
            QSeries s = bilateral_sum(n_three_n_plus_one_half, N);
            div_poch(s, q_pow(1), 1, infinite);
            return scale(std::move(s), 2);
        }
        case RemarkVariant::bilateral_b:
            // 2 - 2/(q;q)_inf sum_{n in Z} (-1)^n q^{3n(n+1)/2} / (1+q^n)
            return monomial(2, 0, N) - andrews_sum_bilateral(N);
    }
    return QSeries::zero(N);
}

// ---------------------------------------------------------------------------
// Left and right sides of the cataloged identities.

inline QSeries lhs_series(IdentityId id, long N)
{
    switch (id) {
        case IdentityId::and1_ou_eu:
            return sum_side(Family::ou_eu, N);
        case IdentityId::and2_od_eu:
            return sum_side(Family::od_eu, N);
        case IdentityId::and3_ou_ed:
            return compose_power(sum_side(Family::ou_ed, N), -1, 1);
        case IdentityId::and4_eu_ou:
            return sum_side(Family::eu_ou, N);
        case IdentityId::and5_ed_ou:
        case IdentityId::thm1_ed_ou:
            return compose_power(sum_side(Family::ed_ou, N), -1, 1);
        case IdentityId::and6_eu_od:
            return compose_power(sum_side(Family::eu_od, N), -1, 1);
        case IdentityId::thm1_od_ed:
            return sum_side(Family::od_ed, N);
        case IdentityId::thm1_ed_od:
            return sum_side(Family::ed_od, N);
        case IdentityId::remark_f:
            return remark_f_series(RemarkVariant::eulerian, N);
        case IdentityId::pf_decomp:
            return pf_combined_sum(N);
        case IdentityId::bilateral_recomb:
            return pf_split_sum(N);
        case IdentityId::s3_double_sum:
            return compose_power(sum_side(Family::ed_od, N), -1, 1);
        case IdentityId::s3_theta_diff:
            return s3_positive_lattice(N, [](QSeries&, long) {}) - s3_negative_lattice(N);
    }
    throw unknown_tag("unknown identity");
}

inline QSeries rhs_series(IdentityId id, long N)
{
    switch (id) {
        case IdentityId::and1_ou_eu: {
            // 1 / ((1-q)(q^2;q^2)_inf)
            QSeries s = QSeries::one(N);
            div_binomial(s, 1, 1);
            div_poch(s, q_pow(2), 2, infinite);
            return s;
        }
        case IdentityId::and2_od_eu: {
            // (1/(q^2;q^2)_inf + (-q;q^2)_inf^2) / 2
            const QSeries p = poch_inf(minus_q_pow(1), 2, N);
            return scale(inv_poch_inf(q_pow(2), 2, N) + p * p, Rational(1, 2));
        }
        case IdentityId::and3_ou_ed: {
            // ((-q;q)_inf - 1 - sum_{n>=0} q^{n(3n-1)/2}(1-q^n)) / (2(-q;q^2)_inf)
            QSeries pent = sum_until_vanishing(N, 0, [&](long n) {
                const long e = n * (3 * n - 1) / 2;
                if (e > N) {
                    return QSeries::zero(N);
                }
                QSeries s = monomial(1, e, N);
                mul_binomial(s, 1, n);
                return s;
            });
            QSeries s = poch_inf(minus_q_pow(1), 1, N) - QSeries::one(N) - pent;
            div_poch(s, minus_q_pow(1), 2, infinite);
            return scale(std::move(s), Rational(1, 2));
        }
        case IdentityId::and4_eu_ou: {
            // (1/(q;q^2)_inf - 1/(q^2;q^2)_inf) / (1-q)
            QSeries s = inv_poch_inf(q_pow(1), 2, N) - inv_poch_inf(q_pow(2), 2, N);
            div_binomial(s, 1, 1);
            return s;
        }
        case IdentityId::and5_ed_ou:
            return ed_ou_closed_form(andrews_sum(N));
        case IdentityId::and6_eu_od: {
            // -1/(q^2;q^2)_inf sum_{j>=1} sum_{n>=j} (-1)^{n+j} q^{n(3n+1)/2 - j^2} (1 - q^{2n+1})
            QSeries s = sum_until_vanishing(N, 1, [&](long j) {
                return sum_until_vanishing(N, j, [&](long n) {
                    const long e = n * (3 * n + 1) / 2 - j * j;
                    if (e > N) {
                        return QSeries::zero(N);
                    }
                    QSeries t = monomial((n + j) % 2 == 0 ? 1 : -1, e, N);
                    mul_binomial(t, 1, 2 * n + 1);
                    return t;
                });
            });
            div_poch(s, q_pow(2), 2, infinite);
            return neg(std::move(s));
        }
        case IdentityId::thm1_od_ed: {
            // q(-q;q^2)_inf/(1-q) * (1 - (-q^2;q^2)_inf/(-q;q^2)_inf)
            QSeries ratio = poch_inf(minus_q_pow(2), 2, N);
            div_poch(ratio, minus_q_pow(1), 2, infinite);
            QSeries s = shift(poch_inf(minus_q_pow(1), 2, N), 1);
            div_binomial(s, 1, 1);
            return s * (QSeries::one(N) - ratio);
        }
        case IdentityId::thm1_ed_od: {
            // q(-q^2;q^2)_inf/(1-q) * (2 - (-q;q^2)_inf/(-q^2;q^2)_inf)
            QSeries ratio = poch_inf(minus_q_pow(1), 2, N);
            div_poch(ratio, minus_q_pow(2), 2, infinite);
            QSeries s = shift(poch_inf(minus_q_pow(2), 2, N), 1);
            div_binomial(s, 1, 1);
            return s * (monomial(2, 0, N) - ratio);
        }
        case IdentityId::thm1_ed_ou:
            return ed_ou_closed_form(andrews_sum_bilateral(N));
        case IdentityId::remark_f:
            return remark_f_series(RemarkVariant::bilateral_b, N);
        case IdentityId::pf_decomp:
            return pf_split_sum(N);
        case IdentityId::bilateral_recomb:
            return bilateral_sum(three_n_n_plus_one_half, N);
        case IdentityId::s3_double_sum: {
            // -q (q;q)_inf (-q^2;q^2)_inf / (q^2;q^2)_inf^2 * lattice sum with (1 + q^{2m+1})
            QSeries pre = shift(poch_inf(q_pow(1), 1, N), 1);
            mul_poch(pre, minus_q_pow(2), 2, infinite);
            div_poch(pre, q_pow(2), 2, infinite);
            div_poch(pre, q_pow(2), 2, infinite);
            const QSeries lattice = s3_positive_lattice(N, [](QSeries& s, long m) { mul_binomial(s, -1, 2 * m + 1); });
            return neg(pre * lattice);
        }
        case IdentityId::s3_theta_diff: {
            // 2(q^2;q^2)_inf / ((1+q)(q;q^2)_inf) - (q^2;q^2)_inf / ((1+q)(-q^2;q^2)_inf)
            QSeries a = poch_inf(q_pow(2), 2, N);
            div_poch(a, q_pow(1), 2, infinite);
            QSeries b = poch_inf(q_pow(2), 2, N);
            div_poch(b, minus_q_pow(2), 2, infinite);
            QSeries s = scale(std::move(a), 2) - b;
            div_binomial(s, -1, 1);
            return s;
        }
    }
    throw unknown_tag("unknown identity");
}

// ---------------------------------------------------------------------------
// Verification reports.

enum class Status { verified, mismatch };

inline constexpr std::string_view status_name(Status s)
{
    return s == Status::verified ? "verified" : "mismatch";
}

struct Mismatch {
    long exponent;
    Rational lhs;
    Rational rhs;

    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerificationReport {
    std::string id;
    long order = 0;
    Status status = Status::verified;
    std::optional<Mismatch> first_mismatch;
    std::chrono::milliseconds elapsed{0};

    bool verified() const
    {
        return status == Status::verified;
    }

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

enum class Side { lhs, rhs };

// Adds q^exponent to one side before comparing; used to exercise mismatch
// reporting.
struct Perturbation {
    Side side = Side::rhs;
    long exponent = 0;
};

namespace detail
{

class Stopwatch
{
public:
    std::chrono::milliseconds elapsed() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - m_start);
    }

private:
    std::chrono::steady_clock::time_point m_start = std::chrono::steady_clock::now();
};

inline std::optional<Mismatch> first_mismatch(const QSeries& lhs, const QSeries& rhs, long N)
{
    const auto cmp = eq_up_to(lhs, rhs, N);
    if (cmp) {
        return std::nullopt;
    }
    const long k = *cmp.first_mismatch;
    return Mismatch{k, lhs[k], rhs[k]};
}

inline std::optional<Mismatch> earliest(std::optional<Mismatch> a, std::optional<Mismatch> b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return b->exponent < a->exponent ? b : a;
}

inline VerificationReport make_report(std::string id, long N, std::optional<Mismatch> mm, const Stopwatch& sw)
{
    VerificationReport r;
    r.id = std::move(id);
    r.order = N;
    r.status = mm ? Status::mismatch : Status::verified;
    r.first_mismatch = std::move(mm);
    r.elapsed = sw.elapsed();
    return r;
}

inline void apply(std::optional<Perturbation> p, Side side, QSeries& s)
{
    if (p && p->side == side) {
        s += monomial(1, p->exponent, s.order());
    }
}

} // namespace detail

inline VerificationReport verify(IdentityId id, long N, std::optional<Perturbation> perturb = std::nullopt)
{
    detail::Stopwatch sw;
    QSeries lhs = lhs_series(id, N);
    QSeries rhs = rhs_series(id, N);
    detail::apply(perturb, Side::lhs, lhs);
    detail::apply(perturb, Side::rhs, rhs);
    auto mm = detail::first_mismatch(lhs, rhs, N);
    if (id == IdentityId::remark_f) {
        // The middle representation has to agree as well.
        mm = detail::earliest(mm, detail::first_mismatch(lhs, remark_f_series(RemarkVariant::bilateral_a, N), N));
    }
    return detail::make_report(std::string(identity_tag(id)), N, std::move(mm), sw);
}

// ---------------------------------------------------------------------------
// Parameterized checks.

// sum_{n>=0} (x;q^m)_n q^{mn} / (y;q^m)_n
//   = q^m (x;q^m)_inf / (y (y;q^m)_inf (1 - x q^m / y)) + (1 - q^m/y) / (1 - x q^m / y)
inline VerificationReport eq21_check(MonomialArg x, MonomialArg y, long m, long N)
{
    detail::Stopwatch sw;
    const std::string id
        = "eq21(x=" + x.to_string() + ",y=" + y.to_string() + ",m=" + std::to_string(m) + ")";
    if (m < 1) {
        throw invalid_specialization(id + ": modulus must be positive");
    }
    // x q^m / y = c1 q^e1 and q^m / y = c2 q^e2 (the signs are their own inverses)
    const long e1 = x.exponent + m - y.exponent;
    const long e2 = m - y.exponent;
    const int c1 = x.sign * y.sign;
    const int c2 = y.sign;
    if (e1 < 0 || e2 < 0) {
        throw invalid_specialization(id + ": monomial quotient has a negative exponent");
    }
    if (e1 == 0 && c1 == 1) {
        throw invalid_specialization(id + ": 1 - x q^m / y has zero constant term");
    }
    if (y.exponent == 0 && y.sign == 1) {
        throw invalid_specialization(id + ": (y; q^m) has a vanishing first factor");
    }

    QSeries lhs = sum_until_vanishing(N, 0, [&](long n) {
        if (m * n > N) {
            return QSeries::zero(N);
        }
        QSeries s = monomial(1, m * n, N);
        mul_poch(s, x, m, n);
        div_poch(s, y, m, n);
        return s;
    });

    QSeries first = monomial(c2, e2, N);
    mul_poch(first, x, m, infinite);
    div_poch(first, y, m, infinite);
    QSeries second = QSeries::one(N);
    mul_binomial(second, c2, e2);
    QSeries rhs = first + second;
    div_binomial(rhs, c1, e1);

    return detail::make_report(id, N, detail::first_mismatch(lhs, rhs, N), sw);
}

// beta'_n = 1 / ((-q;q)_n^2 (1 + q^{n+1}))
inline QSeries bailey_beta(long n, long N)
{
    QSeries s = QSeries::one(N);
    div_poch(s, minus_q_pow(1), 1, n);
    div_poch(s, minus_q_pow(1), 1, n);
    div_binomial(s, -1, n + 1);
    return s;
}

// alpha'_n = 2 (-1)^n q^{n(n+1)/2} (1 - q^{2n+1}) / ((1-q)(1+q^n)(1+q^{n+1}))
inline QSeries bailey_alpha(long n, long N)
{
    QSeries s = monomial(n % 2 == 0 ? 2 : -2, n * (n + 1) / 2, N);
    mul_binomial(s, 1, 2 * n + 1);
    div_binomial(s, 1, 1);
    div_binomial(s, -1, n);
    div_binomial(s, -1, n + 1);
    return s;
}

using BaileySequence = std::function<QSeries(long n, long N)>;

// Checks beta_n = sum_{j<=n} alpha_j / ((q;q)_{n-j} (q^2;q)_{n+j}) for n <= n_max.
inline VerificationReport bailey_def_check(long n_max, long N, const BaileySequence& alpha = bailey_alpha,
                                           const BaileySequence& beta = bailey_beta)
{
    detail::Stopwatch sw;
    std::vector<QSeries> alphas;
    for (long j = 0; j <= n_max; ++j) {
        alphas.push_back(alpha(j, N));
    }
    for (long n = 0; n <= n_max; ++n) {
        const QSeries rhs = sum_range(N, 0, n, [&](long j) {
            QSeries s = alphas[static_cast<std::size_t>(j)];
            div_poch(s, q_pow(1), 1, n - j);
            div_poch(s, q_pow(2), 1, n + j);
            return s;
        });
        if (auto mm = detail::first_mismatch(beta(n, N), rhs, N)) {
            return detail::make_report("bailey.def(n_max=" + std::to_string(n_max) + ")", N, std::move(mm), sw);
        }
    }
    return detail::make_report("bailey.def(n_max=" + std::to_string(n_max) + ")", N, std::nullopt, sw);
}

// sum q^{n^2+n} beta'_n = 1/(q^2;q)_inf sum q^{n^2+n} alpha'_n, and the
// right-hand sum recombined as 2/(q;q)_inf times the bilateral series.
inline VerificationReport bailey_lemma_check(long N)
{
    detail::Stopwatch sw;
    auto weighted = [&](const BaileySequence& seq) {
        return sum_until_vanishing(N, 0, [&](long n) {
            if (n * n + n > N) {
                return QSeries::zero(N);
            }
            return shift(seq(n, N), n * n + n);
        });
    };
    const QSeries lhs = weighted(bailey_beta);
    QSeries rhs = weighted(bailey_alpha);
    div_poch(rhs, q_pow(2), 1, infinite);
    auto mm = detail::first_mismatch(lhs, rhs, N);
    mm = detail::earliest(mm, detail::first_mismatch(rhs, andrews_sum_bilateral(N), N));
    return detail::make_report("bailey.lemma", N, std::move(mm), sw);
}

// (1 - q^{2n+1}) / ((1+q^n)(1+q^{n+1})) = 1/(1+q^n) - q^{n+1}/(1+q^{n+1}) for n <= n_max.
inline VerificationReport pf_decomp_check(long n_max, long N)
{
    detail::Stopwatch sw;
    const std::string id = "pf.decomp(n_max=" + std::to_string(n_max) + ")";
    for (long n = 0; n <= n_max; ++n) {
        QSeries lhs = QSeries::one(N);
        mul_binomial(lhs, 1, 2 * n + 1);
        div_binomial(lhs, -1, n);
        div_binomial(lhs, -1, n + 1);
        const QSeries first = n == 0 ? monomial(Rational(1, 2), 0, N) : inv_one_plus_pow(n, N);
        const QSeries rhs = first - shift(inv_one_plus_pow(n + 1, N), n + 1);
        if (auto mm = detail::first_mismatch(lhs, rhs, N)) {
            return detail::make_report(id, N, std::move(mm), sw);
        }
    }
    return detail::make_report(id, N, std::nullopt, sw);
}

inline VerificationReport s3_double_sum_check(long N)
{
    return verify(IdentityId::s3_double_sum, N);
}

inline VerificationReport s3_theta_diff_check(long N)
{
    return verify(IdentityId::s3_theta_diff, N);
}

// sum_{n,m>=0} z^n w^m q^{(n+cm)^2}
//   = 1/(1 - w/z^c) sum_{k<c} sum_{n>=0} z^{cn+k} q^{(cn+k)^2} (1 - w^{n+1}/z^{c(n+1)})
// specialized at z = q^s, w = q^t.
inline VerificationReport s3_degenerate_check(long c, long s, long t, long N)
{
    detail::Stopwatch sw;
    const std::string id = "s3.degenerate(c=" + std::to_string(c) + ",s=" + std::to_string(s)
                           + ",t=" + std::to_string(t) + ")";
    if (c < 1 || s < 1 || t < 1) {
        throw invalid_specialization(id + ": parameters must be positive");
    }
    const long d = t - c * s;
    if (d < 1) {
        throw invalid_specialization(id + ": w/z^c = q^" + std::to_string(d) + " needs a positive exponent");
    }
    const QSeries lhs = sum_until_vanishing(N, 0, [&](long m) {
        return sum_until_vanishing(N, 0, [&](long n) {
            const long e = s * n + t * m + (n + c * m) * (n + c * m);
            return e > N ? QSeries::zero(N) : monomial(1, e, N);
        });
    });
    QSeries rhs = sum_range(N, 0, c - 1, [&](long k) {
        return sum_until_vanishing(N, 0, [&](long n) {
            const long j = c * n + k;
            const long e = s * j + j * j;
            if (e > N) {
                return QSeries::zero(N);
            }
            QSeries term = monomial(1, e, N);
            mul_binomial(term, 1, d * (n + 1));
            return term;
        });
    });
    div_binomial(rhs, 1, d);
    return detail::make_report(id, N, detail::first_mismatch(lhs, rhs, N), sw);
}

// ---------------------------------------------------------------------------
// Batch verification.

struct FaultInjection {
    std::string tag;
    Perturbation perturbation;
};

inline VerificationReport verify_tag(IdentityId id, long N, const std::optional<FaultInjection>& fault)
{
    std::optional<Perturbation> p;
    if (fault && fault->tag == identity_tag(id)) {
        p = fault->perturbation;
    }
    return verify(id, N, p);
}

// Every cataloged identity and parameterized check at one order, sorted by id.
// The result does not depend on `jobs`.
inline std::vector<VerificationReport> verify_all(long N, unsigned jobs = 1,
                                                  const std::optional<FaultInjection>& fault = std::nullopt)
{
    std::vector<std::function<VerificationReport()>> tasks;
    for (auto id : all_identities) {
        tasks.emplace_back([=] { return verify_tag(id, N, fault); });
    }
    tasks.emplace_back([=] { return eq21_check(minus_q_pow(0), minus_q_pow(1), 2, N); });
    tasks.emplace_back([=] { return eq21_check(minus_q_pow(1), minus_q_pow(2), 2, N); });
    tasks.emplace_back([=] { return eq21_check(q_pow(2), q_pow(1), 1, N); });
    tasks.emplace_back([=] { return eq21_check(minus_q_pow(3), minus_q_pow(1), 3, N); });
    tasks.emplace_back([=] { return bailey_def_check(25, N); });
    tasks.emplace_back([=] { return bailey_lemma_check(N); });
    tasks.emplace_back([=] { return pf_decomp_check(30, N); });
    for (long c = 1; c <= 3; ++c) {
        for (long dt = 1; dt <= 2; ++dt) {
            tasks.emplace_back([=] { return s3_degenerate_check(c, 1, c + dt, N); });
        }
    }

    std::vector<VerificationReport> reports(tasks.size());
    std::vector<std::exception_ptr> failures(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
            try {
                reports[i] = tasks[i]();
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n_threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    for (const auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    std::sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return reports;
}

} // namespace qpp

#endif
