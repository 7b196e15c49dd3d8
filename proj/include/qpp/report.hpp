#ifndef QPP_REPORT_HPP
#define QPP_REPORT_HPP

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <qpp/catalog.hpp>
#include <qpp/rational.hpp>
#include <qpp/series.hpp>

namespace qpp
{

// Report schema:
//   { "id": string, "order": int, "status": "verified" | "mismatch",
//     "first_mismatch": {"exponent": int, "lhs": "p/q", "rhs": "p/q"} | null,
//     "elapsed_ms": int }
inline void to_json(nlohmann::ordered_json& j, const VerificationReport& r)
{
    j = nlohmann::ordered_json::object();
    j["id"] = r.id;
    j["order"] = r.order;
    j["status"] = std::string(status_name(r.status));
    if (r.first_mismatch) {
        j["first_mismatch"] = {{"exponent", r.first_mismatch->exponent},
                               {"lhs", to_string(r.first_mismatch->lhs)},
                               {"rhs", to_string(r.first_mismatch->rhs)}};
    } else {
        j["first_mismatch"] = nullptr;
    }
    j["elapsed_ms"] = r.elapsed.count();
}

inline Rational rational_from_json(const nlohmann::ordered_json& j)
{
    const auto r = parse_rational(j.get<std::string>());
    if (!r) {
        throw error("malformed rational '" + j.get<std::string>() + "' in report");
    }
    return *r;
}

inline void from_json(const nlohmann::ordered_json& j, VerificationReport& r)
{
    r.id = j.at("id").get<std::string>();
    r.order = j.at("order").get<long>();
    const auto status = j.at("status").get<std::string>();
    if (status == "verified") {
        r.status = Status::verified;
    } else if (status == "mismatch") {
        r.status = Status::mismatch;
    } else {
        throw error("unknown report status '" + status + "'");
    }
    const auto& mm = j.at("first_mismatch");
    if (mm.is_null()) {
        r.first_mismatch.reset();
    } else {
        r.first_mismatch
            = Mismatch{mm.at("exponent").get<long>(), rational_from_json(mm.at("lhs")), rational_from_json(mm.at("rhs"))};
    }
    r.elapsed = std::chrono::milliseconds(j.at("elapsed_ms").get<long>());
}

inline std::string report_json(const VerificationReport& r, int indent = 2)
{
    nlohmann::ordered_json j = r;
    return j.dump(indent);
}

inline std::string reports_json(const std::vector<VerificationReport>& rs, int indent = 2)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rs) {
        j.push_back(r);
    }
    return j.dump(indent);
}

inline VerificationReport report_from_json(const std::string& text)
{
    return nlohmann::ordered_json::parse(text).get<VerificationReport>();
}

inline std::string report_plain(const VerificationReport& r)
{
    std::ostringstream os;
    os << r.id << " order=" << r.order << " " << status_name(r.status);
    if (r.first_mismatch) {
        os << " at q^" << r.first_mismatch->exponent << " (lhs " << r.first_mismatch->lhs << ", rhs "
           << r.first_mismatch->rhs << ")";
    }
    os << " [" << r.elapsed.count() << " ms]";
    return os.str();
}

inline constexpr const char* report_csv_header = "id,order,status,exponent,lhs,rhs,elapsed_ms";

inline std::string report_csv_row(const VerificationReport& r)
{
    std::ostringstream os;
    os << '"' << r.id << "\"," << r.order << ',' << status_name(r.status) << ',';
    if (r.first_mismatch) {
        os << r.first_mismatch->exponent << ',' << r.first_mismatch->lhs << ',' << r.first_mismatch->rhs;
    } else {
        os << ",,";
    }
    os << ',' << r.elapsed.count();
    return os.str();
}

// Coefficient tables: header "n,coefficient", one row per exponent.
inline void write_coefficients_csv(std::ostream& os, const QSeries& s)
{
    os << "n,coefficient\n";
    for (long k = 0; k <= s.order(); ++k) {
        os << k << ',' << to_string(s[k]) << '\n';
    }
}

inline void write_coefficients_plain(std::ostream& os, const QSeries& s)
{
    for (long k = 0; k <= s.order(); ++k) {
        os << (k ? ", " : "") << to_string(s[k]);
    }
    os << '\n';
}

inline nlohmann::ordered_json coefficients_json(const QSeries& s)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (long k = 0; k <= s.order(); ++k) {
        arr.push_back(to_string(s[k]));
    }
    return arr;
}

} // namespace qpp

#endif
