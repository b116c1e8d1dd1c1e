#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pdm/verifier.hpp"

namespace pdm {

// Shortest text that reads back to the same double with 17 significant digits; "nan" for NaN.
std::string format_number(double v);

nlohmann::ordered_json to_json(const VerificationReport& report);
// NaN fields come back as NaN (stored as null).
VerificationReport report_from_json(const nlohmann::json& j);

std::string csv_header(bool with_case);
std::string csv_row(const VerificationReport& report, const LevelRecord& rec, bool with_case);
std::string to_csv(const std::vector<VerificationReport>& reports, bool with_case);

struct ReportSummary {
    std::string case_id;
    int levels = 0;
    int failed = 0;
    bool all_pass = true;
    bool operator==(const ReportSummary&) const = default;
};

ReportSummary summarize(const VerificationReport& report);
std::vector<ReportSummary> summarize(const std::vector<VerificationReport>& reports);

}  // namespace pdm
