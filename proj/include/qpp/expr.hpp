#ifndef QPP_EXPR_HPP
#define QPP_EXPR_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <qpp/errors.hpp>
#include <qpp/rational.hpp>

namespace qpp
{

using Bindings = std::map<std::string, long, std::less<>>;

// Polynomial with rational coefficients in the bound index variables. Used for
// q-exponents, Pochhammer arguments and lengths, and summation bounds.
class ExpPoly
{
public:
    // variable -> degree (all degrees positive)
    using Monomial = std::map<std::string, int>;

    ExpPoly() = default;

    static ExpPoly constant(const Rational& c)
    {
        ExpPoly p;
        if (c != 0) {
            p.m_terms[{}] = c;
        }
        return p;
    }
    static ExpPoly variable(const std::string& name)
    {
        ExpPoly p;
        p.m_terms[{{name, 1}}] = 1;
        return p;
    }

    const std::map<Monomial, Rational>& terms() const
    {
        return m_terms;
    }

    int degree() const
    {
        int d = 0;
        for (const auto& [mono, c] : m_terms) {
            int md = 0;
            for (const auto& [v, k] : mono) {
                md += k;
            }
            d = std::max(d, md);
        }
        return d;
    }

    std::optional<Rational> constant_value() const
    {
        if (m_terms.empty()) {
            return Rational(0);
        }
        if (m_terms.size() == 1 && m_terms.begin()->first.empty()) {
            return m_terms.begin()->second;
        }
        return std::nullopt;
    }

    std::set<std::string> variables() const
    {
        std::set<std::string> out;
        for (const auto& [mono, c] : m_terms) {
            for (const auto& [v, k] : mono) {
                out.insert(v);
            }
        }
        return out;
    }

    Rational evaluate(const Bindings& env) const
    {
        Rational total = 0;
        for (const auto& [mono, c] : m_terms) {
            Rational t = c;
            for (const auto& [v, k] : mono) {
                const auto it = env.find(v);
                if (it == env.end()) {
                    throw error("unbound index variable '" + v + "'");
                }
                for (int i = 0; i < k; ++i) {
                    t *= it->second;
                }
            }
            total += t;
        }
        return total;
    }

    friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b)
    {
        ExpPoly r = a;
        for (const auto& [mono, c] : b.m_terms) {
            r.accumulate(mono, c);
        }
        return r;
    }
    friend ExpPoly operator-(const ExpPoly& a)
    {
        ExpPoly r = a;
        for (auto& [mono, c] : r.m_terms) {
            c = -c;
        }
        return r;
    }
    friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b)
    {
        return a + (-b);
    }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b)
    {
        ExpPoly r;
        for (const auto& [ma, ca] : a.m_terms) {
            for (const auto& [mb, cb] : b.m_terms) {
                Monomial m = ma;
                for (const auto& [v, k] : mb) {
                    m[v] += k;
                }
                r.accumulate(m, ca * cb);
            }
        }
        return r;
    }
    ExpPoly pow(unsigned k) const
    {
        ExpPoly r = constant(1);
        for (unsigned i = 0; i < k; ++i) {
            r = r * *this;
        }
        return r;
    }

    friend bool operator==(const ExpPoly&, const ExpPoly&) = default;

    std::string to_string() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::string out;
        for (const auto& [mono, c] : m_terms) {
            if (!out.empty()) {
                out += " + ";
            }
            out += "(" + c.get_str() + ")";
            for (const auto& [v, k] : mono) {
                out += "*" + v + (k > 1 ? "^" + std::to_string(k) : "");
            }
        }
        return out;
    }

private:
    void accumulate(const Monomial& m, const Rational& c)
    {
        Rational& slot = m_terms[m];
        slot += c;
        if (slot == 0) {
            m_terms.erase(m);
        }
    }

    std::map<Monomial, Rational> m_terms;
};

// ---------------------------------------------------------------------------
// Expression tree.

struct Expr;

// Shared immutable child pointer with deep equality.
class ExprBox
{
public:
    ExprBox() = default;
    ExprBox(Expr e);

    const Expr& operator*() const
    {
        return *m_ptr;
    }
    const Expr* operator->() const
    {
        return m_ptr.get();
    }

    friend bool operator==(const ExprBox& a, const ExprBox& b);

private:
    std::shared_ptr<const Expr> m_ptr;
};

struct RationalLit {
    Rational value;
    friend bool operator==(const RationalLit&, const RationalLit&) = default;
};

// q^exponent
struct QPow {
    ExpPoly exponent;
    friend bool operator==(const QPow&, const QPow&) = default;
};

// (sign q^exponent; q^modulus)_length, infinite when length is empty.
struct Poch {
    int sign = 1;
    ExpPoly exponent;
    long modulus = 1;
    std::optional<ExpPoly> length;
    friend bool operator==(const Poch&, const Poch&) = default;
};

template <typename Tag>
struct BinaryNode {
    ExprBox lhs, rhs;
    friend bool operator==(const BinaryNode&, const BinaryNode&) = default;
};

using Add = BinaryNode<struct AddTag>;
using Sub = BinaryNode<struct SubTag>;
using Mul = BinaryNode<struct MulTag>;
using Div = BinaryNode<struct DivTag>;

struct Neg {
    ExprBox operand;
    friend bool operator==(const Neg&, const Neg&) = default;
};

// base^exponent with an integer-valued (possibly index-dependent) exponent.
struct IntPow {
    ExprBox base;
    ExpPoly exponent;
    friend bool operator==(const IntPow&, const IntPow&) = default;
};

// sum over var = lower..upper (upper empty: infinity)
struct Sum {
    std::string var;
    ExpPoly lower;
    std::optional<ExpPoly> upper;
    ExprBox body;
    friend bool operator==(const Sum&, const Sum&) = default;
};

// sum over all integers
struct BSum {
    std::string var;
    ExprBox body;
    friend bool operator==(const BSum&, const BSum&) = default;
};

struct Expr {
    std::variant<RationalLit, QPow, Poch, Add, Sub, Mul, Div, Neg, IntPow, Sum, BSum> node;
    friend bool operator==(const Expr&, const Expr&) = default;
};

inline ExprBox::ExprBox(Expr e) : m_ptr(std::make_shared<const Expr>(std::move(e))) {}

inline bool operator==(const ExprBox& a, const ExprBox& b)
{
    if (!a.m_ptr || !b.m_ptr) {
        return a.m_ptr == b.m_ptr;
    }
    return a.m_ptr == b.m_ptr || *a.m_ptr == *b.m_ptr;
}

// Construction helpers, mostly for tests and hand-built trees.
namespace ast
{

inline Expr lit(const Rational& r)
{
    return {RationalLit{r}};
}
inline Expr qpow(ExpPoly e)
{
    return {QPow{std::move(e)}};
}
inline Expr poch(int sign, ExpPoly exponent, long modulus, std::optional<ExpPoly> length)
{
    return {Poch{sign, std::move(exponent), modulus, std::move(length)}};
}
inline Expr add(Expr a, Expr b)
{
    return {Add{std::move(a), std::move(b)}};
}
inline Expr sub(Expr a, Expr b)
{
    return {Sub{std::move(a), std::move(b)}};
}
inline Expr mul(Expr a, Expr b)
{
    return {Mul{std::move(a), std::move(b)}};
}
inline Expr div(Expr a, Expr b)
{
    return {Div{std::move(a), std::move(b)}};
}
inline Expr neg(Expr a)
{
    return {Neg{std::move(a)}};
}
inline Expr pow(Expr base, ExpPoly k)
{
    return {IntPow{std::move(base), std::move(k)}};
}
inline Expr sum(std::string var, ExpPoly lower, std::optional<ExpPoly> upper, Expr body)
{
    return {Sum{std::move(var), std::move(lower), std::move(upper), std::move(body)}};
}
inline Expr bsum(std::string var, Expr body)
{
    return {BSum{std::move(var), std::move(body)}};
}
inline ExpPoly c(const Rational& r)
{
    return ExpPoly::constant(r);
}
inline ExpPoly v(const std::string& name)
{
    return ExpPoly::variable(name);
}

} // namespace ast

// ---------------------------------------------------------------------------
// Parser.

struct ParseError {
    std::size_t position;
    std::string message;
    std::string expected;

    std::string to_string() const
    {
        std::string s = "parse error at byte " + std::to_string(position) + ": " + message;
        if (!expected.empty()) {
            s += " (expected " + expected + ")";
        }
        return s;
    }
};

using ParseResult = std::variant<Expr, ParseError>;

namespace detail
{

enum class TokKind { integer, ident, symbol, dots, end, invalid };

struct Token {
    TokKind kind;
    std::string text;
    std::size_t pos;
};

class Lexer
{
public:
    explicit Lexer(std::string_view src) : m_src(src) {}

    Token next()
    {
        while (m_pos < m_src.size() && std::isspace(static_cast<unsigned char>(m_src[m_pos]))) {
            ++m_pos;
        }
        const std::size_t start = m_pos;
        if (m_pos >= m_src.size()) {
            return {TokKind::end, "", start};
        }
        const char c = m_src[m_pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (m_pos < m_src.size() && std::isdigit(static_cast<unsigned char>(m_src[m_pos]))) {
                ++m_pos;
            }
            return {TokKind::integer, std::string(m_src.substr(start, m_pos - start)), start};
        }
        if (c == '_') {
            ++m_pos;
            return {TokKind::symbol, "_", start};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (m_pos < m_src.size() && is_ident_char(m_src[m_pos])) {
                ++m_pos;
            }
            return {TokKind::ident, std::string(m_src.substr(start, m_pos - start)), start};
        }
        if (c == '.') {
            if (m_pos + 1 < m_src.size() && m_src[m_pos + 1] == '.') {
                m_pos += 2;
                return {TokKind::dots, "..", start};
            }
            ++m_pos;
            return {TokKind::invalid, ".", start};
        }
        constexpr std::string_view symbols = "+-*/^(),;=";
        ++m_pos;
        if (symbols.find(c) != std::string_view::npos) {
            return {TokKind::symbol, std::string(1, c), start};
        }
        return {TokKind::invalid, std::string(1, c), start};
    }

private:
    static bool is_ident_char(char c)
    {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string_view m_src;
    std::size_t m_pos = 0;
};

struct ParseFailure {
    ParseError error;
};

class Parser
{
public:
    Parser(std::string_view src, std::vector<std::string> free_vars) : m_lexer(src), m_src_size(src.size())
    {
        m_scope = std::move(free_vars);
        m_tok = m_lexer.next();
    }

    Expr parse_all()
    {
        Expr e = parse_expr();
        if (m_tok.kind != TokKind::end) {
            fail("unexpected trailing input '" + m_tok.text + "'", "end of input");
        }
        return e;
    }

private:
    static constexpr int max_depth = 200;
    static constexpr std::size_t max_literal_digits = 15;

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser)
        {
            if (++p.m_depth > max_depth) {
                p.fail("expression nested too deeply", "");
            }
        }
        ~DepthGuard()
        {
            --p.m_depth;
        }
    };

    [[noreturn]] void fail(std::string message, std::string expected)
    {
        throw ParseFailure{{std::min(m_tok.pos, m_src_size), std::move(message), std::move(expected)}};
    }

    void advance()
    {
        m_tok = m_lexer.next();
        if (m_tok.kind == TokKind::invalid) {
            fail("invalid character '" + m_tok.text + "'", "");
        }
    }

    bool is_symbol(std::string_view s) const
    {
        return m_tok.kind == TokKind::symbol && m_tok.text == s;
    }
    bool is_ident(std::string_view s) const
    {
        return m_tok.kind == TokKind::ident && m_tok.text == s;
    }

    void expect_symbol(std::string_view s)
    {
        if (!is_symbol(s)) {
            fail("unexpected " + describe(), "'" + std::string(s) + "'");
        }
        advance();
    }

    std::string describe() const
    {
        switch (m_tok.kind) {
            case TokKind::end:
                return "end of input";
            case TokKind::integer:
                return "integer " + m_tok.text;
            case TokKind::ident:
                return "identifier '" + m_tok.text + "'";
            default:
                return "'" + m_tok.text + "'";
        }
    }

    long parse_small_integer()
    {
        if (m_tok.kind != TokKind::integer) {
            fail("unexpected " + describe(), "integer");
        }
        if (m_tok.text.size() > max_literal_digits) {
            fail("integer literal too large", "");
        }
        const long v = std::stol(m_tok.text);
        advance();
        return v;
    }

    Integer parse_big_integer()
    {
        if (m_tok.kind != TokKind::integer) {
            fail("unexpected " + describe(), "integer");
        }
        Integer v(m_tok.text, 10);
        advance();
        return v;
    }

    // expr := term (("+"|"-") term)*
    Expr parse_expr()
    {
        DepthGuard g(*this);
        Expr lhs = parse_term();
        while (is_symbol("+") || is_symbol("-")) {
            const bool plus = is_symbol("+");
            advance();
            Expr rhs = parse_term();
            lhs = plus ? ast::add(std::move(lhs), std::move(rhs)) : ast::sub(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    // term := factor (("*"|"/") factor)*
    Expr parse_term()
    {
        Expr lhs = parse_factor();
        while (is_symbol("*") || is_symbol("/")) {
            const bool times = is_symbol("*");
            advance();
            Expr rhs = parse_factor();
            lhs = times ? ast::mul(std::move(lhs), std::move(rhs)) : ast::div(std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    // factor := "-" factor | atom ("^" power)?
    // power  := ["-"] integer | "(" exppoly ")"
    Expr parse_factor()
    {
        DepthGuard g(*this);
        if (is_symbol("-")) {
            advance();
            return ast::neg(parse_factor());
        }
        Expr base = parse_atom();
        if (is_symbol("^")) {
            advance();
            ExpPoly k;
            if (is_symbol("(")) {
                advance();
                k = parse_exppoly();
                expect_symbol(")");
            } else {
                const bool negative = is_symbol("-");
                if (negative) {
                    advance();
                }
                k = ExpPoly::constant(negative ? -parse_small_integer() : parse_small_integer());
            }
            return ast::pow(std::move(base), std::move(k));
        }
        return base;
    }

    // atom := rational | qpow | poch | sum | bsum | "(" expr ")"
    Expr parse_atom()
    {
        if (m_tok.kind == TokKind::integer) {
            Integer num = parse_big_integer();
            if (is_symbol("/")) {
                // rational := integer "/" positive-integer, only when an
                // integer literal follows the slash.
                Lexer probe = m_lexer;
                const Token after = probe.next();
                if (after.kind == TokKind::integer) {
                    advance();
                    Integer den = parse_big_integer();
                    if (den == 0) {
                        fail("zero denominator in rational literal", "positive integer");
                    }
                    Rational r(num, den);
                    r.canonicalize();
                    return ast::lit(r);
                }
            }
            return ast::lit(Rational(num));
        }
        if (is_symbol("(")) {
            advance();
            Expr e = parse_expr();
            expect_symbol(")");
            return e;
        }
        if (is_ident("q")) {
            return parse_qpow();
        }
        if (is_ident("poch")) {
            return parse_poch();
        }
        if (is_ident("sum")) {
            return parse_sum();
        }
        if (is_ident("bsum")) {
            return parse_bsum();
        }
        fail("unexpected " + describe(), "number, 'q', 'poch', 'sum', 'bsum' or '('");
    }

    // qpow := "q" "^" "(" exppoly ")" | "q" "^" integer | "q"
    Expr parse_qpow()
    {
        advance();
        if (!is_symbol("^")) {
            return ast::qpow(ExpPoly::constant(1));
        }
        advance();
        if (is_symbol("(")) {
            advance();
            ExpPoly e = parse_exppoly();
            expect_symbol(")");
            return ast::qpow(std::move(e));
        }
        return ast::qpow(ExpPoly::constant(parse_small_integer()));
    }

    // poch := "poch" "(" ("1"|"-1") "," exppoly ";" integer ")" "_" ("(" exppoly ")" | "inf")
    Expr parse_poch()
    {
        advance();
        expect_symbol("(");
        int sign = 1;
        if (is_symbol("-")) {
            sign = -1;
            advance();
        }
        if (m_tok.kind != TokKind::integer || m_tok.text != "1") {
            fail("Pochhammer sign must be 1 or -1", "'1' or '-1'");
        }
        advance();
        expect_symbol(",");
        ExpPoly exponent = parse_exppoly();
        expect_symbol(";");
        const long modulus = parse_small_integer();
        if (modulus < 1) {
            fail("Pochhammer modulus must be positive", "positive integer");
        }
        expect_symbol(")");
        expect_symbol("_");
        std::optional<ExpPoly> length;
        if (is_ident("inf")) {
            advance();
        } else if (is_symbol("(")) {
            advance();
            length = parse_exppoly();
            expect_symbol(")");
        } else {
            fail("unexpected " + describe(), "'(' or 'inf'");
        }
        return ast::poch(sign, std::move(exponent), modulus, std::move(length));
    }

    std::string parse_binder()
    {
        if (m_tok.kind != TokKind::ident || is_reserved(m_tok.text)) {
            fail("unexpected " + describe(), "index variable name");
        }
        std::string name = m_tok.text;
        advance();
        return name;
    }

    ExpPoly parse_bound()
    {
        ExpPoly b = parse_exppoly();
        if (b.degree() > 1) {
            fail("summation bound must be affine in the enclosing indices", "");
        }
        return b;
    }

    // sum := "sum" "(" ident "=" bound ".." (bound | "inf") "," expr ")"
    Expr parse_sum()
    {
        advance();
        expect_symbol("(");
        std::string var = parse_binder();
        expect_symbol("=");
        ExpPoly lower = parse_bound();
        if (m_tok.kind != TokKind::dots) {
            fail("unexpected " + describe(), "'..'");
        }
        advance();
        std::optional<ExpPoly> upper;
        if (is_ident("inf")) {
            advance();
        } else {
            upper = parse_bound();
        }
        expect_symbol(",");
        m_scope.push_back(var);
        Expr body = parse_expr();
        m_scope.pop_back();
        expect_symbol(")");
        return ast::sum(std::move(var), std::move(lower), std::move(upper), std::move(body));
    }

    // bsum := "bsum" "(" ident "," expr ")"
    Expr parse_bsum()
    {
        advance();
        expect_symbol("(");
        std::string var = parse_binder();
        expect_symbol(",");
        m_scope.push_back(var);
        Expr body = parse_expr();
        m_scope.pop_back();
        expect_symbol(")");
        return ast::bsum(std::move(var), std::move(body));
    }

    static bool is_reserved(std::string_view s)
    {
        return s == "q" || s == "poch" || s == "sum" || s == "bsum" || s == "inf";
    }

    // exppoly := ep_term (("+"|"-") ep_term)*
    ExpPoly parse_exppoly()
    {
        DepthGuard g(*this);
        ExpPoly lhs = parse_ep_term();
        while (is_symbol("+") || is_symbol("-")) {
            const bool plus = is_symbol("+");
            advance();
            ExpPoly rhs = parse_ep_term();
            lhs = plus ? lhs + rhs : lhs - rhs;
        }
        return lhs;
    }

    // ep_term := ep_factor (("*"|"/") ep_factor)*, dividing by constants only
    ExpPoly parse_ep_term()
    {
        ExpPoly lhs = parse_ep_factor();
        while (is_symbol("*") || is_symbol("/")) {
            const bool times = is_symbol("*");
            advance();
            ExpPoly rhs = parse_ep_factor();
            if (times) {
                lhs = lhs * rhs;
            } else {
                const auto c = rhs.constant_value();
                if (!c || *c == 0) {
                    fail("exponent division requires a nonzero constant divisor", "");
                }
                lhs = lhs * ExpPoly::constant(1 / *c);
            }
        }
        return lhs;
    }

    // ep_factor := "-" ep_factor | ep_atom ("^" integer)?
    ExpPoly parse_ep_factor()
    {
        DepthGuard g(*this);
        if (is_symbol("-")) {
            advance();
            return -parse_ep_factor();
        }
        ExpPoly base = parse_ep_atom();
        if (is_symbol("^")) {
            advance();
            const long k = parse_small_integer();
            if (k > 16) {
                fail("exponent power too large", "integer <= 16");
            }
            return base.pow(static_cast<unsigned>(k));
        }
        return base;
    }

    // ep_atom := integer | ident | "(" exppoly ")"
    ExpPoly parse_ep_atom()
    {
        if (m_tok.kind == TokKind::integer) {
            return ExpPoly::constant(Rational(parse_big_integer()));
        }
        if (m_tok.kind == TokKind::ident && !is_reserved(m_tok.text)) {
            if (std::find(m_scope.begin(), m_scope.end(), m_tok.text) == m_scope.end()) {
                fail("index variable '" + m_tok.text + "' is not bound by an enclosing sum", "");
            }
            ExpPoly v = ExpPoly::variable(m_tok.text);
            advance();
            return v;
        }
        if (is_symbol("(")) {
            advance();
            ExpPoly e = parse_exppoly();
            expect_symbol(")");
            return e;
        }
        fail("unexpected " + describe(), "integer, index variable or '('");
    }

    Lexer m_lexer;
    std::size_t m_src_size;
    Token m_tok{TokKind::end, "", 0};
    std::vector<std::string> m_scope;
    int m_depth = 0;
};

} // namespace detail

// Parses the q-series DSL. `free_vars` names index variables that the caller
// binds at evaluation time.
inline ParseResult parse(std::string_view text, std::vector<std::string> free_vars = {})
{
    try {
        detail::Parser p(text, std::move(free_vars));
        return p.parse_all();
    } catch (const detail::ParseFailure& f) {
        return f.error;
    }
}

} // namespace qpp

#endif
