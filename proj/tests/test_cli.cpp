#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include <catch_amalgamated.hpp>

#include <qpp/cli.hpp>

using namespace qpp;

namespace
{

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Scoped environment variable.
struct EnvVar {
    EnvVar(const char* name, const char* value) : m_name(name)
    {
        ::setenv(name, value, 1);
    }
    ~EnvVar()
    {
        ::unsetenv(m_name);
    }
    const char* m_name;
};

} // namespace

TEST_CASE("eval prints coefficients")
{
    const auto r = run({"eval", "--expr", "1/(1-q^1)", "--order", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "1, 1, 1, 1\n");
}

TEST_CASE("coeffs csv")
{
    const auto r = run({"coeffs", "--family", "od_ed", "--order", "10", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,coefficient\n", 0) == 0);
    CHECK(r.out.find("\n2,1\n") != std::string::npos);
}

TEST_CASE("coeffs and oracle agree")
{
    for (auto f : all_families) {
        const std::string name(family_name(f));
        const auto a = run({"coeffs", "--family", name, "--order", "25", "--format", "json"});
        const auto b = run({"oracle", "--family", name, "--order", "25", "--format", "json"});
        CHECK(a.code == 0);
        CHECK(b.code == 0);
        CHECK(nlohmann::json::parse(a.out)["coefficients"] == nlohmann::json::parse(b.out)["coefficients"]);
    }
    CHECK(run({"oracle", "--family", "ou_eu", "--order", "70"}).code == 2);
    CHECK(run({"oracle", "--family", "ou_eu", "--order", "70", "--bound", "70"}).code == 0);
}

TEST_CASE("verify json report")
{
    const auto r = run({"verify", "--id", "thm1.od_ed", "--order", "200", "--format", "json"});
    CHECK(r.code == 0);
    const auto report = report_from_json(r.out);
    CHECK(report.id == "thm1.od_ed");
    CHECK(report.order == 200);
    CHECK(report.verified());
    CHECK_FALSE(report.first_mismatch.has_value());
}

TEST_CASE("verify exit codes")
{
    const auto bad = run({"verify", "--id", "and2.od_eu", "--order", "40", "--perturb", "9", "--format", "json"});
    CHECK(bad.code == 1);
    const auto report = report_from_json(bad.out);
    REQUIRE(report.first_mismatch);
    CHECK(report.first_mismatch->exponent == 9);
    CHECK(report_from_json(report_json(report)) == report);

    CHECK(run({"verify", "--id", "eq21", "--x", "-q", "--y", "-q^2", "--m", "2", "--order", "50"}).code == 0);
    CHECK(run({"verify", "--id", "eq21", "--x", "q^2", "--y", "q^3", "--m", "1"}).code == 2);
    CHECK(run({"verify", "--id", "eq21", "--x", "2q"}).code == 2);
    CHECK(run({"verify", "--id", "s3.degenerate", "--c", "2", "--s", "1", "--t", "3"}).code == 0);
    CHECK(run({"verify", "--id", "s3.degenerate", "--c", "1", "--s", "1", "--t", "1"}).code == 2);
    CHECK(run({"verify", "--id", "bailey.def", "--n-max", "5", "--order", "40"}).code == 0);
    CHECK(run({"verify", "--id", "pf.decomp", "--n-max", "5", "--order", "40", "--format", "csv"}).code == 0);
    CHECK(run({"verify", "--id", "nonsense"}).code == 2);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"coeffs"}).code == 2);
    CHECK(run({"coeffs", "--family", "zz"}).code == 2);
    CHECK(run({"coeffs", "--family", "od_ed", "--order", "-3"}).code == 2);
    CHECK(run({"coeffs", "--family", "od_ed", "--format", "xml"}).code == 2);
    const auto e = run({"eval", "--expr", "1+"});
    CHECK(e.code == 2);
    CHECK(e.err.find("parse error at byte 2") != std::string::npos);
    CHECK(run({"eval", "--expr", "q^(1/2)"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"verify-all", "--inject", "nope:3"}).code == 2);
}

TEST_CASE("QPP_DEFAULT_ORDER")
{
    {
        EnvVar env("QPP_DEFAULT_ORDER", "4");
        CHECK(run({"eval", "--expr", "1/(1-q)"}).out == "1, 1, 1, 1, 1\n");
        CHECK(run({"eval", "--expr", "1/(1-q)", "--order", "2"}).out == "1, 1, 1\n");
    }
    {
        EnvVar env("QPP_DEFAULT_ORDER", "abc");
        CHECK(run({"eval", "--expr", "1"}).code == 2);
    }
    std::string twenty_zeros = "1";
    for (int i = 0; i < 20; ++i) {
        twenty_zeros += ", 0";
    }
    CHECK(run({"eval", "--expr", "1"}).out == twenty_zeros + "\n");
}

TEST_CASE("verify-all is stable across job counts")
{
    const auto a = run({"verify-all", "--order", "30", "--jobs", "1", "--no-timing", "--format", "json"});
    const auto b = run({"verify-all", "--order", "30", "--jobs", "4", "--no-timing", "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.size() == 27);

    const auto bad = run({"verify-all", "--order", "30", "--inject", "thm1.ed_od:12"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("thm1.ed_od order=30 mismatch at q^12") != std::string::npos);
    CHECK(run({"verify-all", "--order", "30", "--format", "csv"}).out.rfind(report_csv_header, 0) == 0);
}

TEST_CASE("the installed binary behaves the same")
{
    const std::string cmd = std::string(QPP_BINARY) + " eval --expr '1/(1-q^1)' --order 3";
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 256> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) {
        out += buf.data();
    }
    const int status = ::pclose(p);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(out == "1, 1, 1, 1\n");
    CHECK(WEXITSTATUS(std::system((std::string(QPP_BINARY) + " verify --id nope 2>/dev/null").c_str())) == 2);
}
