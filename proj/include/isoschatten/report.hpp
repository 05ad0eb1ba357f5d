#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isoschatten/config.hpp"

namespace isoschatten {

// One inequality (or sanity) check. `holds` is always the budgeted test
// margin > -budget_sign * error_budget, so a report is auditable from the
// numbers alone.
struct Verdict {
    std::string claim;
    bool holds = false;
    double margin = 0.0;
    double error_budget = 0.0;
    nlohmann::ordered_json compared;  // the quantities the claim compared
};

struct ExperimentReport {
    nlohmann::ordered_json config;
    nlohmann::ordered_json quantities;
    std::vector<Verdict> verdicts;
    std::vector<std::string> errors;
    // Volatile fields (wall times, output paths); kept in a separate section
    // so the rest of the report is byte-reproducible.
    nlohmann::ordered_json runtime;

    bool all_hold() const;
    nlohmann::ordered_json to_json() const;

    // 0 all verdicts hold, 1 verdict failure, 3 embedded pipeline error.
    int exit_code() const;
};

Verdict make_verdict(std::string claim, double margin, double error_budget, int budget_sign,
                     nlohmann::ordered_json compared = {});

// Serializes `report.to_json()` to `<dir>/report.json` (creating the
// directory), pretty-printed with a trailing newline.
void write_report(const ExperimentReport& report, const std::string& dir);

}  // namespace isoschatten
