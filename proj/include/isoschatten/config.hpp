#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "isoschatten/errors.hpp"

namespace isoschatten {

enum class ExperimentKind { Rfk, Schatten, Triangle, Steiner, Bll, Zeta, Convergence };

const char* to_string(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view name);  // ConfigParseError

// Declarative description of one verification run. JSON schema (all fields
// except `experiment`, `kernel` and `domains` optional):
//
// {
//   "experiment": "rfk" | "schatten" | "triangle" | "steiner" | "bll"
//                 | "zeta" | "convergence",
//   "kernel":  "gauss:s=1",
//   "domains": ["ball:d=2,r=1", "box:d=2,lo=0,0,hi=1,1"],
//   "p_list":  [2, 2.5, "inf"],
//   "resolutions": [32, 64],            // ascending; >= 2 for budgeted runs
//   "t_list": [0.1, 1.0, 10.0],         // heat-sum abscissae
//   "zeta_list": [-0.5, 0.0, 0.5],      // schatten: multiples of mu_1(B);
//                                       // zeta experiment: absolute shifts
//   "shifted_orders": [1, 2, 3],
//   "index_list": [1, 2, 3],            // zeta experiment eigen indices
//   "seed": 1,
//   "mc_samples": 1000000,
//   "steiner_tol": 1e-6,
//   "steiner_max_iter": 60,
//   "budget_sign": 1                    // -1 flips verdict budgets
//                                       // (plumbing self-test knob)
// }
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Rfk;
    std::string kernel;
    std::vector<std::string> domains;
    std::vector<double> p_list{2.0};
    std::vector<int> resolutions{16, 32};
    std::vector<double> t_list;
    std::vector<double> zeta_list;
    std::vector<int> shifted_orders{1, 2, 3};
    std::vector<int> index_list{1, 2, 3};
    std::uint64_t seed = 1;
    long long mc_samples = 1'000'000;
    double steiner_tol = 1e-6;
    int steiner_max_iter = 60;
    int budget_sign = 1;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::string& path);

    // Structural validation (grammar strings, ordering, experiment-specific
    // preconditions). Throws ConfigParseError.
    void validate() const;

    // Deterministic echo for reports; excludes anything run-environment
    // specific (output paths, timestamps).
    nlohmann::ordered_json echo() const;
};

}  // namespace isoschatten
