#ifndef QPP_EVAL_HPP
#define QPP_EVAL_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <qpp/errors.hpp>
#include <qpp/expr.hpp>
#include <qpp/products.hpp>
#include <qpp/series.hpp>
#include <qpp/summation.hpp>

namespace qpp
{

namespace detail
{

// Truncated Laurent series used only inside the evaluator, so that bilateral
// sum bodies may be written naturally at negative indices (1/(1+q^n) with
// n < 0 simply has negative valuation). Coefficients c[i] belong to exponent
// val + i. `prec` is the largest exponent known exactly; an empty `prec`
// marks an exact (finite) value.
struct Laurent {
    long val = 0;
    std::vector<Rational> c;
    std::optional<long> prec;

    static Laurent exact_monomial(const Rational& coeff, long e)
    {
        Laurent l;
        if (coeff != 0) {
            l.val = e;
            l.c.push_back(coeff);
        }
        return l;
    }

    bool is_exact() const
    {
        return !prec.has_value();
    }

    long top() const
    {
        return val + static_cast<long>(c.size()) - 1;
    }

    // Lower bound on the valuation; an exact zero has no valuation at all.
    std::optional<long> valuation() const
    {
        if (!c.empty()) {
            return val;
        }
        if (prec) {
            return *prec + 1;
        }
        return std::nullopt;
    }

    const Rational& at(long e, const Rational& zero) const
    {
        const long i = e - val;
        if (i < 0 || i >= static_cast<long>(c.size())) {
            return zero;
        }
        return c[static_cast<std::size_t>(i)];
    }
};

// Strips zero ends and caps storage (and precision) at the working order.
inline void normalize(Laurent& l, long cap)
{
    std::size_t lead = 0;
    while (lead < l.c.size() && l.c[lead] == 0) {
        ++lead;
    }
    if (lead == l.c.size()) {
        l.c.clear();
        l.val = 0;
    } else if (lead > 0) {
        l.c.erase(l.c.begin(), l.c.begin() + static_cast<long>(lead));
        l.val += static_cast<long>(lead);
    }
    while (!l.c.empty() && l.c.back() == 0) {
        l.c.pop_back();
    }
    if (l.prec && *l.prec > cap) {
        l.prec = cap;
    }
    if (!l.c.empty() && l.top() > cap) {
        if (l.val > cap) {
            l.c.clear();
            l.val = 0;
        } else {
            l.c.resize(static_cast<std::size_t>(cap - l.val + 1));
        }
        if (!l.prec) {
            l.prec = cap;
        }
    }
    if (l.prec && !l.c.empty() && l.top() > *l.prec) {
        l.c.resize(static_cast<std::size_t>(std::max(0L, *l.prec - l.val + 1)));
        normalize(l, cap);
    }
}

inline std::optional<long> min_prec(std::optional<long> a, std::optional<long> b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return std::min(*a, *b);
}

inline Laurent laurent_add(const Laurent& a, const Laurent& b, long cap, int sign = 1)
{
    Laurent r;
    r.prec = min_prec(a.prec, b.prec);
    if (a.c.empty() && b.c.empty()) {
        normalize(r, cap);
        return r;
    }
    long lo = std::min(a.c.empty() ? b.val : a.val, b.c.empty() ? a.val : b.val);
    long hi = std::max(a.c.empty() ? b.top() : a.top(), b.c.empty() ? a.top() : b.top());
    if (r.prec) {
        hi = std::min(hi, *r.prec);
    }
    hi = std::min(hi, cap);
    const Rational zero;
    r.val = lo;
    for (long e = lo; e <= hi; ++e) {
        r.c.push_back(sign > 0 ? Rational(a.at(e, zero) + b.at(e, zero)) : Rational(a.at(e, zero) - b.at(e, zero)));
    }
    normalize(r, cap);
    return r;
}

inline Laurent laurent_scale(Laurent a, const Rational& k, long cap)
{
    for (auto& x : a.c) {
        x *= k;
    }
    normalize(a, cap);
    return a;
}

inline Laurent laurent_mul(const Laurent& a, const Laurent& b, long cap)
{
    const auto va = a.valuation();
    const auto vb = b.valuation();
    if (!va || !vb) {
        return {}; // exact zero factor
    }
    Laurent r;
    if (a.prec) {
        r.prec = *a.prec + *vb;
    }
    if (b.prec) {
        r.prec = min_prec(r.prec, *b.prec + *va);
    }
    r.val = *va + *vb;
    long hi = a.c.empty() || b.c.empty() ? r.val - 1 : a.top() + b.top();
    if (r.prec) {
        hi = std::min(hi, *r.prec);
    }
    hi = std::min(hi, cap);
    if (hi >= r.val) {
        r.c.assign(static_cast<std::size_t>(hi - r.val + 1), Rational(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) {
                continue;
            }
            const long ei = a.val + static_cast<long>(i);
            for (std::size_t j = 0; j < b.c.size(); ++j) {
                const long e = ei + b.val + static_cast<long>(j);
                if (e > hi) {
                    break;
                }
                if (b.c[j] != 0) {
                    r.c[static_cast<std::size_t>(e - r.val)] += a.c[i] * b.c[j];
                }
            }
        }
    }
    normalize(r, cap);
    return r;
}

inline Laurent laurent_inverse(const Laurent& b, long cap)
{
    if (b.c.empty()) {
        throw zero_constant_term("division by a series that vanishes to the working order");
    }
    const long vb = b.val;
    if (vb > 0) {
        throw zero_constant_term("division by a series with zero constant term");
    }
    const Rational lead_inv = 1 / b.c[0];
    if (b.is_exact() && b.c.size() == 1) {
        Laurent r = Laurent::exact_monomial(lead_inv, -vb);
        normalize(r, cap);
        return r;
    }
    Laurent r;
    r.val = -vb;
    long hi = cap;
    if (b.prec) {
        r.prec = *b.prec - 2 * vb;
        hi = std::min(hi, *r.prec);
    } else {
        r.prec = cap;
    }
    const long count = hi - r.val + 1;
    Rational acc;
    for (long k = 0; k < count; ++k) {
        if (k == 0) {
            r.c.push_back(lead_inv);
            continue;
        }
        acc = 0;
        const long jmax = std::min<long>(k, static_cast<long>(b.c.size()) - 1);
        for (long j = 1; j <= jmax; ++j) {
            if (b.c[static_cast<std::size_t>(j)] != 0) {
                acc += b.c[static_cast<std::size_t>(j)] * r.c[static_cast<std::size_t>(k - j)];
            }
        }
        r.c.push_back(-acc * lead_inv);
    }
    normalize(r, cap);
    return r;
}

inline constexpr long max_integer_power = 10000;

inline Laurent laurent_pow(const Laurent& base, long k, long cap)
{
    if (k > max_integer_power || k < -max_integer_power) {
        throw bound_exceeded("integer power " + std::to_string(k) + " out of range");
    }
    if (k < 0) {
        return laurent_pow(laurent_inverse(base, cap), -k, cap);
    }
    if (base.is_exact() && base.c.size() == 1) {
        Rational coeff = 1;
        for (long i = 0; i < k; ++i) {
            coeff *= base.c[0];
        }
        Laurent r = Laurent::exact_monomial(coeff, base.val * k);
        normalize(r, cap);
        return r;
    }
    Laurent result = Laurent::exact_monomial(1, 0);
    Laurent sq = base;
    for (long e = k; e > 0; e >>= 1) {
        if (e & 1) {
            result = laurent_mul(result, sq, cap);
        }
        if (e > 1) {
            sq = laurent_mul(sq, sq, cap);
        }
    }
    return result;
}

inline long integral(const ExpPoly& p, const Bindings& env, const char* what)
{
    const Rational v = p.evaluate(env);
    if (!is_integer(v)) {
        throw non_integer_exponent(std::string(what) + " evaluates to the non-integer " + v.get_str());
    }
    if (!v.get_num().fits_slong_p()) {
        throw bound_exceeded(std::string(what) + " out of range");
    }
    return to_long(v);
}

class Evaluator
{
public:
    Evaluator(long cap, Bindings env) : m_cap(cap), m_env(std::move(env)) {}

    Laurent eval(const Expr& e)
    {
        return std::visit([&](const auto& node) { return eval_node(node); }, e.node);
    }

private:
    Laurent eval_node(const RationalLit& n)
    {
        return Laurent::exact_monomial(n.value, 0);
    }

    Laurent eval_node(const QPow& n)
    {
        Laurent l = Laurent::exact_monomial(1, integral(n.exponent, m_env, "q-exponent"));
        normalize(l, m_cap);
        return l;
    }

    Laurent eval_node(const Poch& n)
    {
        const long r = integral(n.exponent, m_env, "Pochhammer argument exponent");
        if (r < 0) {
            throw negative_exponent("Pochhammer argument exponent " + std::to_string(r) + " is negative");
        }
        const MonomialArg arg{n.sign, r};
        const long order = std::max(m_cap, 0L);
        QSeries s;
        bool exact = false;
        if (n.length) {
            const long len = integral(*n.length, m_env, "Pochhammer length");
            if (len < 0) {
                throw negative_exponent("Pochhammer length " + std::to_string(len) + " is negative");
            }
            s = poch_finite(arg, n.modulus, len, order);
            // degree r*len + modulus*len*(len-1)/2 must fit under the cap
            exact = len == 0 || (len <= order + 1 && r * len + n.modulus * len * (len - 1) / 2 <= order);
        } else {
            s = poch_inf(arg, n.modulus, order);
            exact = (r == 0 && n.sign == 1);
        }
        Laurent l;
        l.c.assign(s.coeffs().begin(), s.coeffs().end());
        if (!exact) {
            l.prec = order;
        }
        normalize(l, m_cap);
        return l;
    }

    Laurent eval_node(const Add& n)
    {
        return laurent_add(eval(*n.lhs), eval(*n.rhs), m_cap);
    }
    Laurent eval_node(const Sub& n)
    {
        return laurent_add(eval(*n.lhs), eval(*n.rhs), m_cap, -1);
    }
    Laurent eval_node(const Mul& n)
    {
        return laurent_mul(eval(*n.lhs), eval(*n.rhs), m_cap);
    }
    Laurent eval_node(const Div& n)
    {
        const Laurent num = eval(*n.lhs);
        return laurent_mul(num, laurent_inverse(eval(*n.rhs), m_cap), m_cap);
    }
    Laurent eval_node(const Neg& n)
    {
        return laurent_scale(eval(*n.operand), -1, m_cap);
    }
    Laurent eval_node(const IntPow& n)
    {
        const long k = integral(n.exponent, m_env, "power");
        return laurent_pow(eval(*n.base), k, m_cap);
    }

    // Adds terms while stepping through the index; an unbounded walk stops
    // once `vanishing_window` consecutive terms lie above the working order.
    Laurent walk(const std::string& var, const ExprBox& body, long start, std::optional<long> last, long step)
    {
        Laurent total;
        const auto saved = bound_value(var);
        const long limit = divergence_guard_limit(m_cap);
        int quiet = 0;
        long count = 0;
        for (long n = start; !last || (step > 0 ? n <= *last : n >= *last); n += step) {
            if (++count > limit) {
                restore(var, saved);
                throw divergence_guard("sum over '" + var + "' did not settle after " + std::to_string(limit)
                                       + " terms");
            }
            m_env[var] = n;
            const Laurent t = eval(*body);
            const auto v = t.valuation();
            if (!last && (!v || *v > m_cap)) {
                if (++quiet >= vanishing_window) {
                    break;
                }
                continue;
            }
            quiet = 0;
            total = laurent_add(total, t, m_cap);
        }
        restore(var, saved);
        return total;
    }

    Laurent eval_node(const Sum& n)
    {
        const long lo = integral(n.lower, m_env, "summation bound");
        std::optional<long> hi;
        if (n.upper) {
            hi = integral(*n.upper, m_env, "summation bound");
            if (*hi < lo) {
                return {};
            }
        }
        return walk(n.var, n.body, lo, hi, 1);
    }

    Laurent eval_node(const BSum& n)
    {
        return laurent_add(walk(n.var, n.body, 0, std::nullopt, 1), walk(n.var, n.body, -1, std::nullopt, -1), m_cap);
    }

    std::optional<long> bound_value(const std::string& var) const
    {
        const auto it = m_env.find(var);
        return it == m_env.end() ? std::nullopt : std::optional<long>(it->second);
    }

    void restore(const std::string& var, std::optional<long> saved)
    {
        if (saved) {
            m_env[var] = *saved;
        } else {
            m_env.erase(var);
        }
    }

    long m_cap;
    Bindings m_env;
};

} // namespace detail

// Evaluates a closed expression (or one whose free variables are bound in
// `env`) to a power series of the given order. Intermediate values may have
// negative exponents; the working order is raised until the result is exact
// to `order`. A nonzero coefficient at a negative exponent in the final
// result is an error.
inline QSeries eval(const Expr& e, long order, const Bindings& env = {})
{
    long cap = order;
    for (int attempt = 0; attempt < 8; ++attempt) {
        detail::Evaluator ev(cap, env);
        const detail::Laurent l = ev.eval(e);
        if (!l.prec || *l.prec >= order) {
            QSeries s(order);
            for (std::size_t i = 0; i < l.c.size(); ++i) {
                const long exp = l.val + static_cast<long>(i);
                if (l.c[i] == 0) {
                    continue;
                }
                if (exp < 0) {
                    throw negative_exponent("result has a nonzero coefficient at q^" + std::to_string(exp));
                }
                if (exp <= order) {
                    s[exp] = l.c[i];
                }
            }
            return s;
        }
        cap += (order - *l.prec) + 8;
    }
    throw divergence_guard("working order could not be raised enough to reach order " + std::to_string(order));
}

} // namespace qpp

#endif
