#ifndef QPP_CANONICAL_HPP
#define QPP_CANONICAL_HPP

#include <string>
#include <string_view>

#include <qpp/catalog.hpp>
#include <qpp/errors.hpp>

namespace qpp
{

// DSL transcriptions of both sides of every cataloged identity. Identities
// stated at -q are written with the substitution already carried out, so
// that evaluating the text is an independent route to the same series.
inline std::string_view canonical_text(IdentityId id, Side side)
{
    const bool lhs = side == Side::lhs;
    switch (id) {
        case IdentityId::and1_ou_eu:
            return lhs ? "sum(n=0..inf, q^(2*n)/(poch(1,2;2)_(n)*poch(1,2*n+1;2)_inf))"
                       : "1/((1-q^1)*poch(1,2;2)_inf)";
        case IdentityId::and2_od_eu:
            return lhs ? "sum(n=0..inf, q^(2*n)*poch(-1,2*n+1;2)_inf/poch(1,2;2)_(n))"
                       : "1/2*(1/poch(1,2;2)_inf + poch(-1,1;2)_inf^2)";
        case IdentityId::and3_ou_ed:
            return lhs ? "sum(n=0..inf, poch(-1,2;2)_(n)*q^(2*n+2)/poch(-1,2*n+3;2)_inf)"
                       : "1/(2*poch(-1,1;2)_inf)*(poch(-1,1;1)_inf - 1 - sum(n=0..inf, q^(n*(3*n-1)/2)*(1-q^(n))))";
        case IdentityId::and4_eu_ou:
            return lhs ? "sum(n=0..inf, q^(2*n+1)/(poch(1,1;2)_(n+1)*poch(1,2*n+2;2)_inf))"
                       : "1/(1-q)*(1/poch(1,1;2)_inf - 1/poch(1,2;2)_inf)";
        case IdentityId::and5_ed_ou:
            return lhs ? "sum(n=0..inf, -q^(2*n+1)*poch(-1,2*n+2;2)_inf/poch(-1,1;2)_(n+1))"
                       : "-poch(-1,2;2)_inf/2*(2 - 1/poch(-1,1;1)_inf"
                         " - sum(n=0..inf, q^(n^2+n)/(poch(-1,1;1)_(n)^2*(1+q^(n+1)))))";
        case IdentityId::and6_eu_od:
            return lhs ? "sum(n=0..inf, -q^(2*n+1)*poch(1,1;2)_(n)/poch(1,2*n+2;2)_inf)"
                       : "-1/poch(1,2;2)_inf*sum(j=1..inf, sum(n=j..inf,"
                         " (-1)^(n+j)*q^(n*(3*n+1)/2-j^2)*(1-q^(2*n+1))))";
        case IdentityId::thm1_od_ed:
            return lhs ? "sum(n=0..inf, q^(2*n+2)*poch(-1,2;2)_(n)*poch(-1,2*n+3;2)_inf)"
                       : "q*poch(-1,1;2)_inf/(1-q^1) * (1 - poch(-1,2;2)_inf/poch(-1,1;2)_inf)";
        case IdentityId::thm1_ed_od:
            return lhs ? "sum(n=0..inf, q^(2*n+1)*poch(-1,1;2)_(n)*poch(-1,2*n+2;2)_inf)"
                       : "q*poch(-1,2;2)_inf/(1-q^1) * (2 - poch(-1,1;2)_inf/poch(-1,2;2)_inf)";
        case IdentityId::thm1_ed_ou:
            return lhs ? "sum(n=0..inf, -q^(2*n+1)*poch(-1,2*n+2;2)_inf/poch(-1,1;2)_(n+1))"
                       : "-poch(-1,2;2)_inf/2*(2 - 1/poch(-1,1;1)_inf"
                         " - 2/poch(1,1;1)_inf*bsum(n, (-1)^(n)*q^(3*n*(n+1)/2)/(1+q^(n))))";
        case IdentityId::remark_f:
            return lhs ? "sum(n=0..inf, q^(n^2)/poch(-1,1;1)_(n)^2)"
                       : "2 - 2/poch(1,1;1)_inf*bsum(n, (-1)^(n)*q^(3*n*(n+1)/2)/(1+q^(n)))";
        case IdentityId::pf_decomp:
            return lhs ? "sum(n=0..inf, (-1)^(n)*q^(3*n*(n+1)/2)*(1-q^(2*n+1))/((1+q^(n))*(1+q^(n+1))))"
                       : "sum(n=0..inf, (-1)^(n)*q^(3*n*(n+1)/2)*(1/(1+q^(n)) - q^(n+1)/(1+q^(n+1))))";
        case IdentityId::bilateral_recomb:
            return lhs ? "sum(n=0..inf, (-1)^(n)*q^(3*n*(n+1)/2)*(1/(1+q^(n)) - q^(n+1)/(1+q^(n+1))))"
                       : "bsum(n, (-1)^(n)*q^(3*n*(n+1)/2)/(1+q^(n)))";
        case IdentityId::s3_double_sum:
            return lhs ? "sum(n=0..inf, -q^(2*n+1)*poch(1,1;2)_(n)*poch(-1,2*n+2;2)_inf)"
                       : "-q*poch(1,1;1)_inf*poch(-1,2;2)_inf/poch(1,2;2)_inf^2*sum(m=0..inf, sum(n=0..inf,"
                         " (-1)^(m)*q^(n*(n+3)/2+2*n*m+2*m^2+2*m)*(1+q^(2*m+1))))";
        case IdentityId::s3_theta_diff:
            return lhs ? "sum(m=0..inf, sum(n=0..inf, (-1)^(m)*q^(n*(n+3)/2+2*n*m+2*m*(m+1))))"
                         " - sum(b=1..inf, sum(a=1..inf, (-1)^(b)*q^(a*(a-3)/2+2*a*b+2*b*(b-1))))"
                       : "2*poch(1,2;2)_inf/((1+q)*poch(1,1;2)_inf) - poch(1,2;2)_inf/((1+q)*poch(-1,2;2)_inf)";
    }
    throw unknown_tag("unknown identity");
}

// Lookup by stable tag string; throws unknown_tag.
inline std::string_view canonical_text(std::string_view tag, Side side)
{
    const auto id = parse_identity(tag);
    if (!id) {
        throw unknown_tag("unknown identity tag '" + std::string(tag) + "'");
    }
    return canonical_text(*id, side);
}

} // namespace qpp

#endif
