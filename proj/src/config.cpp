#include "isoschatten/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "isoschatten/geometry.hpp"
#include "isoschatten/kernel.hpp"

namespace isoschatten {

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Rfk: return "rfk";
        case ExperimentKind::Schatten: return "schatten";
        case ExperimentKind::Triangle: return "triangle";
        case ExperimentKind::Steiner: return "steiner";
        case ExperimentKind::Bll: return "bll";
        case ExperimentKind::Zeta: return "zeta";
        case ExperimentKind::Convergence: return "convergence";
    }
    return "?";
}

ExperimentKind parse_experiment(std::string_view name) {
    for (ExperimentKind k :
         {ExperimentKind::Rfk, ExperimentKind::Schatten, ExperimentKind::Triangle,
          ExperimentKind::Steiner, ExperimentKind::Bll, ExperimentKind::Zeta,
          ExperimentKind::Convergence})
        if (name == to_string(k)) return k;
    fail(ErrorCode::ConfigParseError, "unknown experiment '" + std::string(name) + "'");
}

namespace {

std::vector<double> parse_p_list(const nlohmann::json& j) {
    std::vector<double> out;
    for (const auto& item : j) {
        if (item.is_number()) {
            out.push_back(item.get<double>());
        } else if (item.is_string() && item.get<std::string>() == "inf") {
            out.push_back(std::numeric_limits<double>::infinity());
        } else {
            fail(ErrorCode::ConfigParseError, "p_list entries must be numbers or \"inf\"");
        }
    }
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    try {
        if (!j.contains("experiment") || !j.contains("kernel") || !j.contains("domains"))
            fail(ErrorCode::ConfigParseError, "config needs experiment, kernel, domains");
        cfg.experiment = parse_experiment(j.at("experiment").get<std::string>());
        cfg.kernel = j.at("kernel").get<std::string>();
        cfg.domains = j.at("domains").get<std::vector<std::string>>();
        if (j.contains("p_list")) cfg.p_list = parse_p_list(j.at("p_list"));
        if (j.contains("resolutions")) cfg.resolutions = j.at("resolutions").get<std::vector<int>>();
        if (j.contains("t_list")) cfg.t_list = j.at("t_list").get<std::vector<double>>();
        if (j.contains("zeta_list")) cfg.zeta_list = j.at("zeta_list").get<std::vector<double>>();
        if (j.contains("shifted_orders"))
            cfg.shifted_orders = j.at("shifted_orders").get<std::vector<int>>();
        if (j.contains("index_list")) cfg.index_list = j.at("index_list").get<std::vector<int>>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("mc_samples")) cfg.mc_samples = j.at("mc_samples").get<long long>();
        if (j.contains("steiner_tol")) cfg.steiner_tol = j.at("steiner_tol").get<double>();
        if (j.contains("steiner_max_iter"))
            cfg.steiner_max_iter = j.at("steiner_max_iter").get<int>();
        if (j.contains("budget_sign")) cfg.budget_sign = j.at("budget_sign").get<int>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ConfigParseError, std::string("bad config JSON: ") + e.what());
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigParseError, "cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ConfigParseError, "cannot parse '" + path + "': " + e.what());
    }
    return from_json(j);
}

void ExperimentConfig::validate() const {
    if (domains.empty()) fail(ErrorCode::ConfigParseError, "domains must be non-empty");
    if (p_list.empty()) fail(ErrorCode::ConfigParseError, "p_list must be non-empty");
    for (double p : p_list)
        if (!(p >= 1.0)) fail(ErrorCode::ConfigParseError, "p_list entries must be >= 1");
    if (resolutions.empty()) fail(ErrorCode::ConfigParseError, "resolutions must be non-empty");
    for (size_t i = 0; i < resolutions.size(); ++i) {
        if (resolutions[i] < 4) fail(ErrorCode::ConfigParseError, "resolutions must be >= 4");
        if (i > 0 && resolutions[i] <= resolutions[i - 1])
            fail(ErrorCode::ConfigParseError, "resolutions must be strictly ascending");
    }
    if (mc_samples < 10'000) fail(ErrorCode::ConfigParseError, "mc_samples must be >= 1e4");
    if (budget_sign != 1 && budget_sign != -1)
        fail(ErrorCode::ConfigParseError, "budget_sign must be +1 or -1");

    // Parse all domains, check shared dimension, then the kernel against it.
    std::vector<Domain> parsed;
    for (const auto& text : domains) parsed.push_back(parse_domain(text));
    const int d = parsed.front().dimension();
    for (const auto& dom : parsed)
        if (dom.dimension() != d)
            fail(ErrorCode::ConfigParseError, "all domains must share one dimension");
    const KernelSpec k = parse_kernel(kernel, d);

    const bool budgeted = experiment == ExperimentKind::Rfk ||
                          experiment == ExperimentKind::Schatten ||
                          experiment == ExperimentKind::Triangle ||
                          experiment == ExperimentKind::Steiner;
    if (budgeted && resolutions.size() < 2)
        fail(ErrorCode::ConfigParseError, "budgeted experiments need >= 2 resolutions");

    switch (experiment) {
        case ExperimentKind::Rfk: {
            bool non_ball = false;
            for (const auto& dom : parsed) non_ball = non_ball || !dom.is_ball();
            if (!non_ball)
                fail(ErrorCode::ConfigParseError, "rfk needs at least one non-ball domain");
            break;
        }
        case ExperimentKind::Triangle:
            for (const auto& dom : parsed)
                if (!dom.is_triangle())
                    fail(ErrorCode::NotATriangle, "triangle experiment domains must be triangles");
            break;
        case ExperimentKind::Steiner:
            if (!parsed.front().is_triangle())
                fail(ErrorCode::NotATriangle, "steiner experiment needs a triangle domain");
            for (double p : p_list)
                if (!(std::isfinite(p) && p == std::floor(p)))
                    fail(ErrorCode::ConfigParseError, "steiner p_list must be integers");
            if (!(steiner_tol > 0.0))
                fail(ErrorCode::ConfigParseError, "steiner_tol must be > 0");
            break;
        case ExperimentKind::Bll:
            for (double p : p_list)
                if (!(std::isfinite(p) && p == std::floor(p) && p >= 2.0))
                    fail(ErrorCode::ConfigParseError, "bll p_list must be integers >= 2");
            if (k.singular_at_zero())
                fail(ErrorCode::ConfigParseError,
                     "bll needs a bounded kernel (Monte Carlo variance)");
            break;
        case ExperimentKind::Zeta:
            if (k.family() != KernelFamily::Peierls || d != 3)
                fail(ErrorCode::ConfigParseError, "zeta experiment needs the Peierls kernel, d=3");
            for (double z : zeta_list)
                if (z < 0.0)
                    fail(ErrorCode::ConfigParseError, "zeta experiment shifts must be >= 0");
            for (int i : index_list)
                if (i < 1) fail(ErrorCode::ConfigParseError, "index_list entries must be >= 1");
            break;
        default:
            break;
    }
}

nlohmann::ordered_json ExperimentConfig::echo() const {
    nlohmann::ordered_json j;
    j["experiment"] = to_string(experiment);
    j["kernel"] = kernel;
    j["domains"] = domains;
    nlohmann::ordered_json plist = nlohmann::ordered_json::array();
    for (double p : p_list) {
        if (std::isinf(p))
            plist.push_back("inf");
        else
            plist.push_back(p);
    }
    j["p_list"] = plist;
    j["resolutions"] = resolutions;
    j["t_list"] = t_list;
    j["zeta_list"] = zeta_list;
    j["shifted_orders"] = shifted_orders;
    j["index_list"] = index_list;
    j["seed"] = seed;
    j["mc_samples"] = mc_samples;
    j["steiner_tol"] = steiner_tol;
    j["steiner_max_iter"] = steiner_max_iter;
    j["budget_sign"] = budget_sign;
    return j;
}

}  // namespace isoschatten
