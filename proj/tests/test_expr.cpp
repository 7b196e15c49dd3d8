#include <random>

#include <catch_amalgamated.hpp>

#include <qpp/canonical.hpp>
#include <qpp/eval.hpp>
#include <qpp/expr.hpp>

using namespace qpp;
namespace a = qpp::ast;

namespace
{

Expr parsed(std::string_view text, std::vector<std::string> free_vars = {})
{
    auto r = parse(text, std::move(free_vars));
    if (const auto* e = std::get_if<ParseError>(&r)) {
        FAIL(e->to_string());
        return a::lit(0);
    }
    return std::get<Expr>(r);
}

ParseError parse_error(std::string_view text)
{
    auto r = parse(text);
    REQUIRE(std::holds_alternative<ParseError>(r));
    return std::get<ParseError>(r);
}

QSeries ev(std::string_view text, long order, const Bindings& env = {})
{
    std::vector<std::string> names;
    for (const auto& [k, v] : env) {
        names.push_back(k);
    }
    return eval(parsed(text, names), order, env);
}

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

} // namespace

TEST_CASE("parse builds the expected trees")
{
    CHECK(parsed("1/(1-q^1)") == a::div(a::lit(1), a::sub(a::lit(1), a::qpow(a::c(1)))));
    CHECK(parsed("poch(-1,1;2)_inf") == a::poch(-1, a::c(1), 2, std::nullopt));
    CHECK(parsed("q") == a::qpow(a::c(1)));
    CHECK(parsed("3/4") == a::lit(Rational(3, 4)));
    CHECK(parsed("6/4") == a::lit(Rational(3, 2)));

    const ExpPoly n = a::v("n");
    const Expr andrews = a::sum(
        "n", a::c(0), std::nullopt,
        a::div(a::qpow(n * n + n),
               a::mul(a::pow(a::poch(-1, a::c(1), 1, n), a::c(2)), a::add(a::lit(1), a::qpow(n + a::c(1))))));
    CHECK(parsed("sum(n=0..inf, q^(n^2+n) / (poch(-1,1;1)_(n)^2 * (1+q^(n+1))))") == andrews);
}

TEST_CASE("operators associate to the left")
{
    CHECK(parsed("1-2-3") == a::sub(a::sub(a::lit(1), a::lit(2)), a::lit(3)));
    CHECK(parsed("q^1/q^2/q^3") == a::div(a::div(a::qpow(a::c(1)), a::qpow(a::c(2))), a::qpow(a::c(3))));
    CHECK(ev("1-2-3", 0) == monomial(-4, 0, 0));
    CHECK(ev("8/2/2", 0) == monomial(2, 0, 0));
    CHECK(ev("-2^2", 0) == monomial(-4, 0, 0));
}

TEST_CASE("eval")
{
    CHECK(ev("1/(1-q^1)", 3) == poly(3, {1, 1, 1, 1}));
    CHECK(ev("1/(1-q)", 3) == poly(3, {1, 1, 1, 1}));
    CHECK(ev("(1+q)^3", 5) == poly(5, {1, 3, 3, 1}));
    CHECK(ev("(1+q)^(-1)", 4) == poly(4, {1, -1, 1, -1, 1}));
    CHECK(ev("poch(-1,0;2)_(2)", 10) == poly(10, {2, 0, 2}));
    CHECK(ev("poch(1,1;1)_inf", 7) == poly(7, {1, -1, -1, 0, 0, 1, 0, 1}));
    CHECK(ev("sum(n=1..3, q^(n))", 5) == poly(5, {0, 1, 1, 1}));
    CHECK(ev("sum(n=0..inf, q^(n^2))", 10) == poly(10, {1, 1, 0, 0, 1, 0, 0, 0, 0, 1}));
    CHECK(ev("q^(n)*q^(m)", 6, {{"m", 3}, {"n", 2}}) == monomial(1, 5, 6));
    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        const long n = static_cast<long>(rng() % 12);
        const long m = static_cast<long>(rng() % 12);
        CHECK(ev("q^(n)*q^(m)", 15, {{"m", m}, {"n", n}}) == monomial(1, n + m, 15));
    }
    // negative powers may appear on the way as long as the result has none
    CHECK(ev("q^(-2)*q^3/(1-q)", 3) == poly(3, {0, 1, 1, 1}));
    CHECK(ev("q^2/(1+q^(-1))", 4) == poly(4, {0, 0, 0, 1, -1}));
    CHECK(ev("bsum(n, q^(n^2))", 9) == poly(9, {1, 2, 0, 0, 2, 0, 0, 0, 0, 2}));
    CHECK_THROWS_AS(ev("q^(1/2)", 5), non_integer_exponent);
    CHECK_THROWS_AS(ev("1/q", 5), zero_constant_term);
    CHECK_THROWS_AS(ev("q^3/(q^2*(1-q))", 5), zero_constant_term);
    CHECK_THROWS_AS(ev("q^(-1)+1", 5), negative_exponent);
    CHECK_THROWS_AS(ev("poch(1,-1;1)_(2)", 5), negative_exponent);
    CHECK_THROWS_AS(ev("1/(q-q)", 5), zero_constant_term);
    CHECK_THROWS_AS(ev("sum(n=0..inf, 1)", 5), divergence_guard);
}

TEST_CASE("parse errors are structured")
{
    const auto e = parse_error("q^(n)");
    CHECK(e.position <= 5);
    CHECK(e.message.find("'n'") != std::string::npos);
    CHECK(parse_error("").position == 0);
    CHECK(parse_error("1+").position == 2);
    CHECK(parse_error("poch(2,1;1)_inf").position == 5);
    CHECK(parse_error("1 ) ").position == 2);
    CHECK_FALSE(parse_error("(((").to_string().empty());
    CHECK(parse_error("sum(m=0..3, sum(n=0..m^2, 1))").message.find("affine") != std::string::npos);
    CHECK(std::holds_alternative<ParseError>(parse(std::string(5000, '('))));
}

TEST_CASE("canonical texts evaluate to the hand-built sides")
{
    const long N = 60;
    for (auto id : all_identities) {
        for (auto side : {Side::lhs, Side::rhs}) {
            INFO(identity_tag(id) << (side == Side::lhs ? " lhs" : " rhs"));
            const QSeries built = side == Side::lhs ? lhs_series(id, N) : rhs_series(id, N);
            CHECK(ev(canonical_text(id, side), N) == built);
        }
    }
    CHECK(canonical_text("thm1.od_ed", Side::rhs)
          == "q*poch(-1,1;2)_inf/(1-q^1) * (1 - poch(-1,2;2)_inf/poch(-1,1;2)_inf)");
    CHECK(canonical_text("and1.ou_eu", Side::rhs) == "1/((1-q^1)*poch(1,2;2)_inf)");
    CHECK_THROWS_AS(canonical_text("nope", Side::lhs), unknown_tag);
}

TEST_CASE("random input never escapes the parser")
{
    std::mt19937 rng(1234);
    const std::string alphabet = "0123456789q^()+-*/,;=._ poch sum bsum inf n m";
    std::uniform_int_distribution<int> len(0, 40);
    for (int trial = 0; trial < 3000; ++trial) {
        std::string s;
        const int L = len(rng);
        for (int i = 0; i < L; ++i) {
            s.push_back(trial % 2 ? alphabet[rng() % alphabet.size()] : static_cast<char>(rng() % 256));
        }
        ParseResult r;
        CHECK_NOTHROW(r = parse(s));
        if (const auto* e = std::get_if<ParseError>(&r)) {
            CHECK(e->position <= s.size());
        }
    }
}
