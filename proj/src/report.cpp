#include "isoschatten/report.hpp"

#include <filesystem>
#include <fstream>

#include "isoschatten/version.hpp"

namespace isoschatten {

bool ExperimentReport::all_hold() const {
    for (const auto& v : verdicts)
        if (!v.holds) return false;
    return true;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["config"] = config;
    j["quantities"] = quantities;
    nlohmann::ordered_json vs = nlohmann::ordered_json::array();
    for (const auto& v : verdicts) {
        nlohmann::ordered_json vj;
        vj["claim"] = v.claim;
        vj["holds"] = v.holds;
        vj["margin"] = v.margin;
        vj["error_budget"] = v.error_budget;
        vj["compared"] = v.compared;
        vs.push_back(vj);
    }
    j["verdicts"] = vs;
    j["all_hold"] = all_hold();
    j["errors"] = errors;
    j["runtime"] = runtime;
    return j;
}

int ExperimentReport::exit_code() const {
    if (!errors.empty()) return 3;
    return all_hold() ? 0 : 1;
}

Verdict make_verdict(std::string claim, double margin, double error_budget, int budget_sign,
                     nlohmann::ordered_json compared) {
    Verdict v;
    v.claim = std::move(claim);
    v.margin = margin;
    v.error_budget = error_budget;
    v.holds = margin > -double(budget_sign) * error_budget;
    v.compared = std::move(compared);
    return v;
}

void write_report(const ExperimentReport& report, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / "report.json";
    std::ofstream out(path);
    if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
    out << report.to_json().dump(2) << "\n";
}

}  // namespace isoschatten
