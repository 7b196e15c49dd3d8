#ifndef QPP_CLI_HPP
#define QPP_CLI_HPP

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include <qpp/canonical.hpp>
#include <qpp/catalog.hpp>
#include <qpp/eval.hpp>
#include <qpp/partitions.hpp>
#include <qpp/report.hpp>

namespace qpp::cli
{

enum class Format { plain, csv, json };

inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_usage = 2;

// "1", "-1", "q", "-q", "q^3", "-q^3"
inline std::optional<MonomialArg> parse_monomial_arg(std::string_view text)
{
    MonomialArg a;
    if (!text.empty() && text[0] == '-') {
        a.sign = -1;
        text.remove_prefix(1);
    }
    if (text == "1") {
        return a;
    }
    if (text == "q") {
        a.exponent = 1;
        return a;
    }
    if (text.size() > 2 && text.substr(0, 2) == "q^") {
        const auto digits = text.substr(2);
        if (digits.size() > 9 || digits.find_first_not_of("0123456789") != std::string_view::npos) {
            return std::nullopt;
        }
        a.exponent = std::stol(std::string(digits));
        return a;
    }
    return std::nullopt;
}

// "<tag>:<k>" or "<tag>:<k>:lhs"
inline std::optional<FaultInjection> parse_fault(std::string_view text)
{
    const auto c1 = text.find(':');
    if (c1 == std::string_view::npos) {
        return std::nullopt;
    }
    FaultInjection f;
    f.tag = std::string(text.substr(0, c1));
    const std::string rest(text.substr(c1 + 1));
    const auto c2 = rest.find(':');
    const std::string k = rest.substr(0, c2);
    if (k.empty() || k.size() > 9 || k.find_first_not_of("0123456789") != std::string::npos) {
        return std::nullopt;
    }
    f.perturbation.exponent = std::stol(k);
    if (c2 != std::string::npos) {
        const auto side = rest.substr(c2 + 1);
        if (side == "lhs") {
            f.perturbation.side = Side::lhs;
        } else if (side != "rhs") {
            return std::nullopt;
        }
    }
    if (!parse_identity(f.tag)) {
        return std::nullopt;
    }
    return f;
}

class Runner
{
public:
    Runner(std::ostream& out, std::ostream& err) : m_out(out), m_err(err) {}

    int run(const std::vector<std::string>& args)
    {
        CLI::App app{"Exact q-series engine for partitions with parts separated by parity", "qpp"};
        app.require_subcommand(1);

        const std::map<std::string, Format> formats{{"plain", Format::plain}, {"csv", Format::csv}, {"json", Format::json}};

        auto* coeffs = app.add_subcommand("coeffs", "Coefficients of a family's generating function (sum side)");
        coeffs->add_option("--family", m_family, "Family: ou_eu, od_eu, ou_ed, od_ed, eu_ou, ed_ou, eu_od, ed_od")
            ->required();
        add_common(coeffs, formats);

        auto* oracle = app.add_subcommand("oracle", "Brute-force partition counts for a family");
        oracle->add_option("--family", m_family, "Family name")->required();
        oracle->add_option("--bound", m_bound, "Enumeration bound")->check(CLI::PositiveNumber);
        add_common(oracle, formats);

        auto* verify = app.add_subcommand("verify", "Verify one identity or parameterized check");
        verify->add_option("--id", m_id, "Identity tag")->required();
        verify->add_option("--x", m_x, "eq21: x as +-q^r");
        verify->add_option("--y", m_y, "eq21: y as +-q^r");
        verify->add_option("--m", m_m, "eq21: base q^m")->check(CLI::PositiveNumber);
        verify->add_option("--n-max", m_n_max, "bailey.def / pf.decomp: largest index checked")
            ->check(CLI::NonNegativeNumber);
        verify->add_option("--c", m_c, "s3.degenerate: c")->check(CLI::PositiveNumber);
        verify->add_option("--s", m_s, "s3.degenerate: z = q^s")->check(CLI::PositiveNumber);
        verify->add_option("--t", m_t, "s3.degenerate: w = q^t")->check(CLI::PositiveNumber);
        verify->add_option("--perturb", m_perturb, "Add q^k to the right-hand side (testing aid)")
            ->check(CLI::NonNegativeNumber);
        add_common(verify, formats);

        auto* all = app.add_subcommand("verify-all", "Verify every cataloged identity and check");
        all->add_option("--jobs", m_jobs, "Worker threads")->check(CLI::PositiveNumber);
        all->add_option("--inject", m_inject, "Perturb one identity: <tag>:<k>[:lhs|rhs] (testing aid)");
        all->add_flag("--no-timing", m_no_timing, "Report elapsed_ms as 0 for byte-stable output");
        add_common(all, formats);

        auto* ev = app.add_subcommand("eval", "Evaluate a DSL expression");
        ev->add_option("--expr", m_expr, "Expression text")->required();
        add_common(ev, formats);

        std::vector<const char*> argv{"qpp"};
        for (const auto& a : args) {
            argv.push_back(a.c_str());
        }
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            m_out << app.help();
            return exit_ok;
        } catch (const CLI::ParseError& e) {
            m_err << "qpp: " << e.what() << '\n';
            return exit_usage;
        }

        try {
            if (*coeffs) {
                return run_coeffs(false);
            }
            if (*oracle) {
                return run_coeffs(true);
            }
            if (*verify) {
                return run_verify();
            }
            if (*all) {
                return run_verify_all();
            }
            return run_eval();
        } catch (const UsageError& e) {
            m_err << "qpp: " << e.what() << '\n';
            return exit_usage;
        } catch (const std::exception& e) {
            m_err << "qpp: " << e.what() << '\n';
            return exit_usage;
        }
    }

private:
    struct UsageError : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

    void add_common(CLI::App* sub, const std::map<std::string, Format>& formats)
    {
        sub->add_option("--order", m_order, "Truncation order (default: QPP_DEFAULT_ORDER or per-command)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", m_format, "Output format: plain, csv, json")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    }

    long order_or(long fallback) const
    {
        if (m_order) {
            return *m_order;
        }
        if (const char* env = std::getenv("QPP_DEFAULT_ORDER")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end == env || *end != '\0' || v < 1) {
                throw UsageError("QPP_DEFAULT_ORDER must be a positive integer");
            }
            return v;
        }
        return fallback;
    }

    int run_coeffs(bool brute_force)
    {
        const auto family = parse_family(m_family);
        if (!family) {
            throw UsageError("unknown family '" + m_family + "'");
        }
        const long order = order_or(20);
        QSeries s;
        if (brute_force) {
            if (order > m_bound) {
                throw UsageError("order " + std::to_string(order) + " exceeds the enumeration bound "
                                 + std::to_string(m_bound));
            }
            s = oracle_series(parity_class(*family), order);
        } else {
            s = sum_side(*family, order);
        }
        emit_series(s, "family", m_family);
        return exit_ok;
    }

    int run_eval()
    {
        const auto parsed = parse(m_expr);
        if (const auto* pe = std::get_if<ParseError>(&parsed)) {
            m_err << "qpp: " << pe->to_string() << '\n';
            return exit_usage;
        }
        emit_series(eval(std::get<Expr>(parsed), order_or(20)), "expr", m_expr);
        return exit_ok;
    }

    void emit_series(const QSeries& s, const char* key, const std::string& value)
    {
        switch (m_format) {
            case Format::plain:
                write_coefficients_plain(m_out, s);
                break;
            case Format::csv:
                write_coefficients_csv(m_out, s);
                break;
            case Format::json: {
                nlohmann::ordered_json j;
                j[key] = value;
                j["order"] = s.order();
                j["coefficients"] = coefficients_json(s);
                m_out << j.dump(2) << '\n';
                break;
            }
        }
    }

    VerificationReport verify_one()
    {
        if (const auto id = parse_identity(m_id)) {
            const long order = order_or(default_order(*id));
            if (*id == IdentityId::pf_decomp && m_n_max) {
                return pf_decomp_check(*m_n_max, order);
            }
            std::optional<Perturbation> p;
            if (m_perturb) {
                p = Perturbation{Side::rhs, *m_perturb};
            }
            return verify(*id, order, p);
        }
        if (m_id == "eq21") {
            const auto x = parse_monomial_arg(m_x.value_or("-1"));
            const auto y = parse_monomial_arg(m_y.value_or("-q"));
            if (!x || !y) {
                throw UsageError("--x/--y must look like 1, -1, q, -q, q^r or -q^r");
            }
            return eq21_check(*x, *y, m_m.value_or(2), order_or(100));
        }
        if (m_id == "bailey.def") {
            return bailey_def_check(m_n_max.value_or(25), order_or(150));
        }
        if (m_id == "bailey.lemma") {
            return bailey_lemma_check(order_or(150));
        }
        if (m_id == "s3.degenerate") {
            const long c = m_c.value_or(1);
            const long s = m_s.value_or(1);
            return s3_degenerate_check(c, s, m_t.value_or(c * s + 1), order_or(default_degenerate_order));
        }
        throw UsageError("unknown identity tag '" + m_id + "'");
    }

    int run_verify()
    {
        VerificationReport r;
        try {
            r = verify_one();
        } catch (const invalid_specialization& e) {
            throw UsageError(e.what());
        }
        switch (m_format) {
            case Format::plain:
                m_out << report_plain(r) << '\n';
                break;
            case Format::csv:
                m_out << report_csv_header << '\n' << report_csv_row(r) << '\n';
                break;
            case Format::json:
                m_out << report_json(r) << '\n';
                break;
        }
        return r.verified() ? exit_ok : exit_mismatch;
    }

    int run_verify_all()
    {
        std::optional<FaultInjection> fault;
        if (m_inject) {
            fault = parse_fault(*m_inject);
            if (!fault) {
                throw UsageError("--inject expects <tag>:<k>[:lhs|rhs] with a known tag");
            }
        }
        auto reports = verify_all(order_or(100), m_jobs, fault);
        bool ok = true;
        for (auto& r : reports) {
            ok = ok && r.verified();
            if (m_no_timing) {
                r.elapsed = std::chrono::milliseconds(0);
            }
        }
        switch (m_format) {
            case Format::plain:
                for (const auto& r : reports) {
                    m_out << report_plain(r) << '\n';
                }
                break;
            case Format::csv:
                m_out << report_csv_header << '\n';
                for (const auto& r : reports) {
                    m_out << report_csv_row(r) << '\n';
                }
                break;
            case Format::json:
                m_out << reports_json(reports) << '\n';
                break;
        }
        return ok ? exit_ok : exit_mismatch;
    }

    std::ostream& m_out;
    std::ostream& m_err;

    std::optional<long> m_order;
    Format m_format = Format::plain;
    std::string m_family;
    long m_bound = default_enumeration_bound;
    std::string m_id;
    std::optional<std::string> m_x, m_y;
    std::optional<long> m_m, m_n_max, m_c, m_s, m_t, m_perturb;
    unsigned m_jobs = 1;
    std::optional<std::string> m_inject;
    bool m_no_timing = false;
    std::string m_expr;
};

// Runs the command line (arguments without the program name). Exit codes:
// 0 success / all verified, 1 a mismatch was reported, 2 usage or parse error.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    return Runner(out, err).run(args);
}

} // namespace qpp::cli

#endif
