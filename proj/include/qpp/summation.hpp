#ifndef QPP_SUMMATION_HPP
#define QPP_SUMMATION_HPP

#include <string>

#include <qpp/errors.hpp>
#include <qpp/series.hpp>

namespace qpp
{

// Consecutive terms with valuation above the order needed to stop a sum.
inline constexpr int vanishing_window = 3;

inline long divergence_guard_limit(long order)
{
    return 10 * (order + 10);
}

// Sums term(n) for n = start, start + step, ... until `vanishing_window`
// consecutive terms vanish up to the order. Every infinite sum handled here
// has valuation growing (at least) linearly in n.
template <typename Term>
QSeries sum_until_vanishing(long order, long start, Term&& term, long step = 1)
{
    QSeries total(order);
    int quiet = 0;
    const long limit = divergence_guard_limit(order);
    for (long i = 0; i < limit; ++i) {
        const QSeries t = term(start + i * step);
        if (t.is_zero()) {
            if (++quiet >= vanishing_window) {
                return total;
            }
            continue;
        }
        quiet = 0;
        total += t;
    }
    throw divergence_guard("sum did not settle after " + std::to_string(limit) + " terms at order "
                           + std::to_string(order));
}

// Finite sum over n = lo..hi inclusive.
template <typename Term>
QSeries sum_range(long order, long lo, long hi, Term&& term)
{
    QSeries total(order);
    for (long n = lo; n <= hi; ++n) {
        total += term(n);
    }
    return total;
}

} // namespace qpp

#endif
