// Acceptance suite: runs every pinned verification criterion end to end and
// prints one PASS/FAIL line per criterion. Exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "isoschatten/experiments.hpp"
#include "isoschatten/trace.hpp"
#include "support.hpp"

using namespace isoschatten;
namespace fs = std::filesystem;

namespace {

fs::path g_configs_dir;
fs::path g_out_root;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

ExperimentReport run_config(const std::string& name, Check& check) {
    const ExperimentConfig cfg = ExperimentConfig::load((g_configs_dir / name).string());
    const fs::path out = g_out_root / name;
    fs::remove_all(out);
    const ExperimentReport report = run_experiment(cfg, out.string());
    check.require(report.errors.empty(), name + " had pipeline errors");
    return report;
}

// Margins strictly beyond the Richardson budget.
void require_margins_beyond_budget(Check& check, const ExperimentReport& report,
                                   const std::string& claim_prefix, int& count) {
    for (const auto& v : report.verdicts) {
        if (v.claim.rfind(claim_prefix, 0) != 0) continue;
        ++count;
        check.require(v.margin > v.error_budget,
                      v.claim + " margin " + std::to_string(v.margin) + " not beyond budget " +
                          std::to_string(v.error_budget));
    }
}

void require_all_hold(Check& check, const ExperimentReport& report,
                      const std::string& claim_prefix, int& count) {
    for (const auto& v : report.verdicts) {
        if (v.claim.rfind(claim_prefix, 0) != 0) continue;
        ++count;
        check.require(v.holds, v.claim + " failed");
    }
}

// ---------------------------------------------------------------------------

void criterion_1(Check& check) {
    const auto raster = rasterize(Domain(Box{{0, 0, 0}, {1, 1, 0}, 2}), 32);
    const NystromSystem sys = assemble(raster, KernelSpec::gaussian(1.0, 2));
    const Spectrum spec = eigendecompose(sys, false);
    for (int p : {2, 3, 4, 5}) {
        double eig_sum = 0.0;
        for (double l : spec.eigenvalues()) eig_sum += std::pow(l, p);
        const double tr = matrix_trace_power(sys, p);
        check.require(std::abs(tr - eig_sum) <= 1e-8 * std::abs(eig_sum),
                      "trace identity failed at p=" + std::to_string(p));
    }
}

void criterion_2(Check& check) {
    const Domain box(Box{{0, 0, 0}, {1, 1, 0}, 2});
    const auto kernel = KernelSpec::gaussian(1.0, 2);
    const double matrix_value =
        matrix_trace_power(assemble(rasterize(box, 64), kernel), 2);
    const McEstimate mc = mc_cyclic_trace(box, kernel, 2, 1'000'000, 1);
    const double quad = oracle::gaussian_box_cyclic_p2(1.0, {1.0, 1.0});
    check.detail = "matrix=" + std::to_string(matrix_value) + " mc=" + std::to_string(mc.value) +
                   " quad=" + std::to_string(quad);
    auto close = [&](double a, double b, double se, const std::string& pair) {
        const double tol = std::max(3.0 * se, 0.02 * std::abs(b));
        check.require(std::abs(a - b) <= tol, pair + " disagree");
    };
    close(matrix_value, quad, 0.0, "matrix/quadrature");
    close(mc.value, quad, mc.stderr_, "mc/quadrature");
    close(mc.value, matrix_value, mc.stderr_, "mc/matrix");
}

void criterion_3(Check& check) {
    const ExperimentReport report = run_config("rfk_gauss2d.json", check);
    int count = 0;
    require_margins_beyond_budget(check, report, "mu1(", count);
    check.require(count == 3, "expected 3 mu1 comparisons");
}

void criterion_4(Check& check) {
    const ExperimentReport report = run_config("schatten_gauss2d.json", check);
    int count = 0;
    require_margins_beyond_budget(check, report, "schatten(", count);
    check.require(count == 3 * 6, "expected 18 schatten comparisons, saw " + std::to_string(count));
}

void criterion_5(Check& check) {
    const ExperimentReport report = run_config("rfk_peierls3d.json", check);
    int mu_count = 0;
    require_margins_beyond_budget(check, report, "mu1(", mu_count);
    check.require(mu_count == 1, "expected 1 mu1 comparison");
    int perron_count = 0;
    require_all_hold(check, report, "perron(", perron_count);
    check.require(perron_count == 2, "expected perron checks on ball and cube");
}

void criterion_6(Check& check) {
    const ExperimentReport report = run_config("triangle_gauss2d.json", check);
    int mu_count = 0, norm_count = 0;
    require_margins_beyond_budget(check, report, "mu1(", mu_count);
    require_margins_beyond_budget(check, report, "schatten(", norm_count);
    check.require(mu_count == 2, "expected 2 mu1 comparisons");
    check.require(norm_count == 2 * 3, "expected 6 schatten comparisons");
}

void criterion_7(Check& check) {
    const ExperimentReport report = run_config("steiner_gauss2d.json", check);
    const auto& q = report.quantities["steiner"];
    const int steps = int(q["steps"].size()) - 1;
    check.require(steps >= 10, "expected >= 10 symmetrization steps, got " + std::to_string(steps));
    check.require(q["converged"].get<bool>(), "sequence did not converge");
    check.require(q["final_side_spread"].get<double>() < 1e-6, "final side spread too large");
    const double drift =
        std::abs(q["area_end"].get<double>() - q["area_start"].get<double>()) /
        q["area_start"].get<double>();
    check.require(drift < 1e-10, "area drift too large");
    int count = 0;
    require_all_hold(check, report, "steiner step", count);
    check.require(count >= 10, "expected per-step monotonicity verdicts");
}

void criterion_8(Check& check) {
    const ExperimentReport square = run_config("bll_square.json", check);
    const auto& zj =
        square.quantities["domains"]["1_box"]["bll"]["p=3"]["dominance_z"];
    check.require(zj.get<double>() >= -3.0, "square vs disk dominance_z < -3");

    const ExperimentReport rect = run_config("bll_rect8.json", check);
    const double z = rect.quantities["domains"]["1_box"]["bll"]["p=2"]["dominance_z"].get<double>();
    check.detail = "z(square,p=3)=" + std::to_string(zj.get<double>()) +
                   " z(rect8,p=2)=" + std::to_string(z);
    check.require(z > 3.0, "8:1 rectangle separation not significant");
}

void criterion_9(Check& check) {
    const ExperimentReport report = run_config("functionals_gauss2d.json", check);
    int heat = 0, res = 0, shifted = 0, fn = 0;
    require_all_hold(check, report, "heat_sum(", heat);
    require_all_hold(check, report, "resolvent_sum(", res);
    require_all_hold(check, report, "shifted_sum(", shifted);
    require_all_hold(check, report, "F_n(", fn);
    check.detail = "heat=" + std::to_string(heat) + " resolvent=" + std::to_string(res) +
                   " shifted=" + std::to_string(shifted) + " fn=" + std::to_string(fn);
    check.require(heat == 10, "expected 10 heat verdicts");
    check.require(res >= 20, "expected resolvent grid");
    check.require(shifted >= 3 * 40, "expected shifted grid");
    check.require(fn == shifted, "fn grid should mirror the shifted grid");
}

void criterion_10(Check& check) {
    // Geometric series route to the resolvent.
    const auto box_sys =
        assemble(rasterize(Domain(Box{{0, 0, 0}, {1, 1, 0}, 2}), 24), KernelSpec::gaussian(1.0, 2));
    const Spectrum box_spec = eigendecompose(box_sys, false);
    const double mu1 = box_spec.char_numbers().front();
    for (double f : {0.1, 0.25, 0.5}) {
        const double direct = resolvent_sum(box_spec, 2, f * mu1);
        const double series = oracle::resolvent_series(box_spec, 2, f * mu1, 1e-12);
        check.require(std::abs(direct - series) <= 1e-8 * std::abs(direct),
                      "geometric series identity failed at f=" + std::to_string(f));
    }

    // Finite-difference recurrence F'_n = -n F_{n+1}.
    for (int n : {1, 2, 3}) {
        const double zeta = 0.5 * mu1;
        const double delta = 2e-4 * (mu1 + zeta);
        const double derivative = (shifted_sum(box_spec, 2, n, zeta + delta) -
                                   shifted_sum(box_spec, 2, n, zeta - delta)) /
                                  (2.0 * delta);
        const double expected = -n * shifted_sum(box_spec, 2, n + 1, zeta);
        check.require(std::abs(derivative - expected) <= 1e-6 * std::abs(expected),
                      "finite-difference recurrence failed at n=" + std::to_string(n));
    }

    // Mellin consistency of the heat sum.
    for (double l : {1.5, 2.0}) {
        double target = 0.0;
        for (double mu : box_spec.char_numbers()) target += std::pow(mu, -(2 - 1 + l));
        const double mellin = oracle::mellin_heat(box_spec, 2, l);
        check.require(std::abs(mellin - target) <= 1e-6 * std::abs(target),
                      "mellin consistency failed at l=" + std::to_string(l));
    }

    // Synthetic power laws.
    std::vector<double> third, square;
    for (int n = 1; n <= 400; ++n) {
        third.push_back(std::pow(double(n), -1.0 / 3.0));
        square.push_back(std::pow(double(n), -2.0));
    }
    const double q3 = estimate_schatten_index(Spectrum::from_eigenvalues(third)).q_hat;
    const double q05 = estimate_schatten_index(Spectrum::from_eigenvalues(square)).q_hat;
    check.require(std::abs(q3 - 3.0) <= 0.01, "synthetic n^{-1/3} slope off");
    check.require(std::abs(q05 - 0.5) <= 0.01, "synthetic n^{-2} slope off");

    // Peierls decay on the unit-volume ball brackets the analytic hint 3.
    const double r = std::pow(3.0 / (4.0 * std::numbers::pi), 1.0 / 3.0);
    const auto ball_sys =
        assemble(rasterize(Domain(Ball{{0, 0, 0}, r, 3}), 16), KernelSpec::peierls(1.0));
    const double q_hat = estimate_schatten_index(eigendecompose(ball_sys, false)).q_hat;
    check.detail = "peierls q_hat=" + std::to_string(q_hat);
    check.require(2.5 <= q_hat && q_hat <= 3.5, "peierls index estimate outside [2.5, 3.5]");
}

void criterion_11(Check& check) {
    const ExperimentConfig cfg =
        ExperimentConfig::load((g_configs_dir / "acceptance_default.json").string());
    const fs::path out1 = g_out_root / "det_run1";
    const fs::path out2 = g_out_root / "det_run2";
    fs::remove_all(out1);
    fs::remove_all(out2);
    run_experiment(cfg, out1.string());
    run_experiment(cfg, out2.string());

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    nlohmann::ordered_json a = nlohmann::ordered_json::parse(slurp(out1 / "report.json"));
    nlohmann::ordered_json b = nlohmann::ordered_json::parse(slurp(out2 / "report.json"));
    a.erase("runtime");
    b.erase("runtime");
    check.require(a.dump() == b.dump(), "reports differ outside the runtime section");

    // CSV outputs are byte-identical too.
    for (const auto& entry : fs::directory_iterator(out1)) {
        if (entry.path().extension() != ".csv") continue;
        const fs::path other = out2 / entry.path().filename();
        check.require(fs::exists(other) && slurp(entry.path()) == slurp(other),
                      "csv " + entry.path().filename().string() + " differs");
    }
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Check&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
    g_configs_dir = argc > 1 ? fs::path(argv[1]) : fs::path("configs");
    g_out_root = fs::temp_directory_path() / "isoschatten_acceptance";
    fs::create_directories(g_out_root);

    const std::vector<Criterion> criteria = {
        {1, "trace identity Tr(A^p) = sum lambda^p (Gaussian, box, n=32)", 30, criterion_1},
        {2, "MC / matrix / quadrature cyclic-trace agreement", 120, criterion_2},
        {3, "ball minimizes mu1 (Gaussian d=2, area pi family)", 300, criterion_3},
        {4, "ball maximizes Schatten norms incl. non-integer p", 300, criterion_4},
        {5, "Peierls d=3: ball vs cube mu1 + Perron checks", 600, criterion_5},
        {6, "equilateral triangle dominates equal-area triangles", 300, criterion_6},
        {7, "Steiner symmetrization: norms non-decreasing to the equilateral", 300, criterion_7},
        {8, "Monte Carlo rearrangement dominance (square, 8:1 rectangle)", 180, criterion_8},
        {9, "heat/resolvent/shifted/F_n dominance grids", 600, criterion_9},
        {10, "internal consistency: series, recurrence, Mellin, index fits", 300, criterion_10},
        {11, "byte-identical reports for the pinned config", 300, criterion_11},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Check check;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.fn(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        check.require(secs < c.limit_seconds,
                      "runtime " + std::to_string(secs) + "s over limit");
        std::printf("%s  criterion %2d: %s (%.1fs)%s%s\n", check.ok ? "PASS" : "FAIL", c.id,
                    c.name, secs, check.detail.empty() ? "" : " -- ", check.detail.c_str());
        std::fflush(stdout);
        if (!check.ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
