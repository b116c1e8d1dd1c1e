#include "pdm/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "pdm/errors.hpp"

namespace pdm {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

nlohmann::ordered_json num_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

double read_num(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ParameterError(std::string("report field missing: ") + key);
    const auto& v = j.at(key);
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return v.get<double>();
}

}  // namespace

nlohmann::ordered_json to_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["case"] = report.case_id;
    j["grid"] = {{"left", report.grid.left}, {"right", report.grid.right}, {"points", report.grid.points}};
    j["tol"] = report.tol;
    auto levels = nlohmann::ordered_json::array();
    for (const auto& r : report.levels) {
        nlohmann::ordered_json o;
        o["n"] = r.n;
        o["l"] = r.l;
        o["E_construction"] = num_or_null(r.E_construction);
        o["E_printed"] = num_or_null(r.E_printed);
        o["E_numeric"] = num_or_null(r.E_numeric);
        o["abs_err"] = num_or_null(r.abs_err);
        o["rel_err"] = num_or_null(r.rel_err);
        o["residual"] = num_or_null(r.residual);
        o["pass"] = r.pass;
        o["E_reference"] = num_or_null(r.E_reference);
        o["oracle"] = r.oracle;
        levels.push_back(std::move(o));
    }
    j["levels"] = std::move(levels);
    j["notes"] = report.notes;
    j["generated_by"] = report.generated_by;
    return j;
}

VerificationReport report_from_json(const nlohmann::json& j) {
    try {
        VerificationReport rep;
        rep.case_id = j.at("case").get<std::string>();
        const auto& g = j.at("grid");
        rep.grid = Grid{g.at("left").get<double>(), g.at("right").get<double>(), g.at("points").get<int>()};
        rep.tol = j.at("tol").get<double>();
        for (const auto& o : j.at("levels")) {
            LevelRecord r;
            r.n = o.at("n").get<int>();
            r.l = o.at("l").get<int>();
            r.E_construction = read_num(o, "E_construction");
            r.E_printed = read_num(o, "E_printed");
            r.E_numeric = read_num(o, "E_numeric");
            r.abs_err = read_num(o, "abs_err");
            r.rel_err = read_num(o, "rel_err");
            r.residual = read_num(o, "residual");
            r.pass = o.at("pass").get<bool>();
            if (o.contains("E_reference")) r.E_reference = read_num(o, "E_reference");
            if (o.contains("oracle")) r.oracle = o.at("oracle").get<std::string>();
            rep.levels.push_back(r);
        }
        rep.notes = j.at("notes").get<std::vector<std::string>>();
        if (j.contains("generated_by")) rep.generated_by = j.at("generated_by").get<std::string>();
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("malformed report: ") + e.what());
    }
}

std::string csv_header(bool with_case) {
    std::string h = with_case ? "case," : "";
    h += "n,l,E_construction,E_printed,E_numeric,abs_err,rel_err,residual,pass,E_reference,oracle";
    return h;
}

std::string csv_row(const VerificationReport& report, const LevelRecord& r, bool with_case) {
    std::string s = with_case ? report.case_id + "," : "";
    s += std::to_string(r.n) + "," + std::to_string(r.l) + "," + format_number(r.E_construction) + "," +
         format_number(r.E_printed) + "," + format_number(r.E_numeric) + "," + format_number(r.abs_err) + "," +
         format_number(r.rel_err) + "," + format_number(r.residual) + "," + (r.pass ? "1" : "0") + "," +
         format_number(r.E_reference) + "," + r.oracle;
    return s;
}

std::string to_csv(const std::vector<VerificationReport>& reports, bool with_case) {
    std::string out = csv_header(with_case) + "\n";
    for (const auto& rep : reports)
        for (const auto& r : rep.levels) out += csv_row(rep, r, with_case) + "\n";
    return out;
}

ReportSummary summarize(const VerificationReport& report) {
    ReportSummary s;
    s.case_id = report.case_id;
    s.levels = static_cast<int>(report.levels.size());
    for (const auto& r : report.levels)
        if (!r.pass) ++s.failed;
    s.all_pass = s.failed == 0;
    return s;
}

std::vector<ReportSummary> summarize(const std::vector<VerificationReport>& reports) {
    std::vector<ReportSummary> out;
    for (const auto& r : reports) out.push_back(summarize(r));
    return out;
}

}  // namespace pdm
