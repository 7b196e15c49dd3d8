#ifndef QPP_PARTITIONS_HPP
#define QPP_PARTITIONS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <qpp/errors.hpp>
#include <qpp/series.hpp>

namespace qpp
{

enum class Parity { odd, even };

// The eight families of partitions whose odd and even parts are separated:
// every part of the smaller parity is strictly below every part of the
// larger parity. Names read <larger><smaller>, with d = distinct and
// u = unlimited, e.g. od_ed = larger odd distinct, smaller even distinct.
enum class Family { ou_eu, od_eu, ou_ed, od_ed, eu_ou, ed_ou, eu_od, ed_od };

inline constexpr std::array<Family, 8> all_families = {Family::ou_eu, Family::od_eu, Family::ou_ed, Family::od_ed,
                                                       Family::eu_ou, Family::ed_ou, Family::eu_od, Family::ed_od};

struct ParityClass {
    Family family;
    Parity larger_parity;
    bool larger_distinct;
    bool smaller_distinct;
    // The smaller subpartition may be empty only for ou_eu and od_eu. The
    // larger subpartition may always be empty.
    bool smaller_may_be_empty;

    Parity smaller_parity() const
    {
        return larger_parity == Parity::odd ? Parity::even : Parity::odd;
    }

    friend bool operator==(const ParityClass&, const ParityClass&) = default;
};

inline constexpr ParityClass OU_EU{Family::ou_eu, Parity::odd, false, false, true};
inline constexpr ParityClass OD_EU{Family::od_eu, Parity::odd, true, false, true};
inline constexpr ParityClass OU_ED{Family::ou_ed, Parity::odd, false, true, false};
inline constexpr ParityClass OD_ED{Family::od_ed, Parity::odd, true, true, false};
inline constexpr ParityClass EU_OU{Family::eu_ou, Parity::even, false, false, false};
inline constexpr ParityClass ED_OU{Family::ed_ou, Parity::even, true, false, false};
inline constexpr ParityClass EU_OD{Family::eu_od, Parity::even, false, true, false};
inline constexpr ParityClass ED_OD{Family::ed_od, Parity::even, true, true, false};

inline constexpr ParityClass parity_class(Family f)
{
    switch (f) {
        case Family::ou_eu:
            return OU_EU;
        case Family::od_eu:
            return OD_EU;
        case Family::ou_ed:
            return OU_ED;
        case Family::od_ed:
            return OD_ED;
        case Family::eu_ou:
            return EU_OU;
        case Family::ed_ou:
            return ED_OU;
        case Family::eu_od:
            return EU_OD;
        case Family::ed_od:
            return ED_OD;
    }
    return OU_EU;
}

inline constexpr std::string_view family_name(Family f)
{
    constexpr std::array<std::string_view, 8> names = {"ou_eu", "od_eu", "ou_ed", "od_ed",
                                                       "eu_ou", "ed_ou", "eu_od", "ed_od"};
    return names[static_cast<std::size_t>(f)];
}

inline std::optional<Family> parse_family(std::string_view name)
{
    for (auto f : all_families) {
        if (family_name(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

struct Partition {
    std::vector<long> parts; // nonincreasing

    long size() const
    {
        long s = 0;
        for (auto p : parts) {
            s += p;
        }
        return s;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
};

inline constexpr long default_enumeration_bound = 60;

namespace detail
{

inline long first_of_parity(long lo, Parity p)
{
    const bool odd = (lo % 2 != 0);
    return (odd == (p == Parity::odd)) ? lo : lo + 1;
}

// Visits every nonincreasing sequence of parts of the given parity in
// [lo, hi] summing to target, appending it to the prefix in `parts`.
template <typename Visit>
void for_each_sequence(long target, long lo, long hi, Parity parity, bool distinct, std::vector<long>& parts,
                       Visit& visit)
{
    if (target == 0) {
        visit(parts);
        return;
    }
    lo = first_of_parity(lo, parity);
    for (long p = std::min(hi, target); p >= lo; --p) {
        if (first_of_parity(p, parity) != p) {
            continue;
        }
        parts.push_back(p);
        for_each_sequence(target - p, lo, distinct ? p - 2 : p, parity, distinct, parts, visit);
        parts.pop_back();
    }
}

// Recursive descent over the largest smaller-parity part, then over the
// larger-parity parts above it.
template <typename Visit>
void for_each_partition(const ParityClass& cls, long n, Visit&& visit)
{
    std::vector<long> larger, smaller;
    const Parity sp = cls.smaller_parity();

    if (cls.smaller_may_be_empty) {
        auto emit = [&](const std::vector<long>& l) { visit(l, smaller); };
        for_each_sequence(n, 1, n, cls.larger_parity, cls.larger_distinct, larger, emit);
    }
    for (long top = first_of_parity(1, sp); top <= n; top += 2) {
        smaller.assign(1, top);
        const long rest = n - top;
        for (long t = 0; t <= rest; ++t) {
            auto with_smaller = [&](const std::vector<long>&) {
                auto emit = [&](const std::vector<long>& l) { visit(l, smaller); };
                larger.clear();
                for_each_sequence(rest - t, top + 1, rest - t, cls.larger_parity, cls.larger_distinct, larger, emit);
            };
            for_each_sequence(t, 1, cls.smaller_distinct ? top - 2 : top, sp, cls.smaller_distinct, smaller,
                              with_smaller);
        }
    }
}

} // namespace detail

// Number of partitions of n in the class, by exhaustive enumeration.
inline std::uint64_t count(const ParityClass& cls, long n)
{
    if (n < 0) {
        return 0;
    }
    std::uint64_t total = 0;
    detail::for_each_partition(cls, n, [&](const std::vector<long>&, const std::vector<long>&) { ++total; });
    return total;
}

inline std::vector<Partition> enumerate(const ParityClass& cls, long n, long bound = default_enumeration_bound)
{
    if (n > bound) {
        throw bound_exceeded("enumeration of n = " + std::to_string(n) + " exceeds bound " + std::to_string(bound));
    }
    std::vector<Partition> out;
    if (n < 0) {
        return out;
    }
    detail::for_each_partition(cls, n, [&](const std::vector<long>& larger, const std::vector<long>& smaller) {
        Partition p;
        p.parts = larger;
        p.parts.insert(p.parts.end(), smaller.begin(), smaller.end());
        out.push_back(std::move(p));
    });
    return out;
}

// sum_{n <= N} count(cls, n) q^n
inline QSeries oracle_series(const ParityClass& cls, long order)
{
    QSeries s(order);
    for (long n = 0; n <= order; ++n) {
        s[n] = Rational(Integer(std::to_string(count(cls, n))));
    }
    return s;
}

} // namespace qpp

#endif
