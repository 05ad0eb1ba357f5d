#include "isoschatten/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>

#include "isoschatten/richardson.hpp"
#include "isoschatten/trace.hpp"

namespace isoschatten {

namespace {

std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

std::string p_label(double p) {
    if (std::isinf(p)) return "inf";
    return fmt("%g", p);
}

struct PreparedDomain {
    std::string spec_text;
    std::string label;
    Domain domain;
};

struct FunctionalRow {
    std::string functional;
    double p = 0.0;
    std::optional<int> n;
    double x = 0.0;  // t or zeta
    double value = 0.0;
};

nlohmann::ordered_json budgeted_json(const Budgeted& b) {
    nlohmann::ordered_json j;
    j["per_resolution"] = {{std::to_string(b.n_coarse), b.coarse},
                           {std::to_string(b.n_fine), b.fine}};
    j["value"] = b.value;
    j["budget"] = b.budget;
    return j;
}

class Workspace {
public:
    Workspace(const ExperimentConfig& cfg, std::string out_dir)
        : cfg_(cfg),
          out_dir_(std::move(out_dir)),
          dimension_(parse_domain(cfg.domains.front()).dimension()),
          kernel_(parse_kernel(cfg.kernel, dimension_)) {
        std::vector<Domain> raw;
        for (const auto& text : cfg.domains) raw.push_back(parse_domain(text));
        ref_measure_ = raw.front().measure();
        for (size_t i = 0; i < raw.size(); ++i) {
            const Domain scaled = raw[i].scaled_to_measure(ref_measure_);
            domains_.push_back(
                {cfg.domains[i], std::to_string(i + 1) + "_" + scaled.kind(), scaled});
        }
        std::filesystem::create_directories(out_dir_);
        report_.config = cfg.echo();
        report_.quantities["kernel"] = kernel_.spec_string();
        report_.quantities["dimension"] = dimension_;
        report_.quantities["reference_measure"] = ref_measure_;
        if (auto hint = schatten_index_hint(kernel_, dimension_)) {
            report_.quantities["schatten_hint"] = *hint;
            report_.quantities["p0"] = *schatten_p0(kernel_, dimension_);
        }
        report_.quantities["domains"] = nlohmann::ordered_json::object();
    }

    const ExperimentConfig& cfg() const { return cfg_; }
    const KernelSpec& kernel() const { return kernel_; }
    int dimension() const { return dimension_; }
    double ref_measure() const { return ref_measure_; }
    const std::vector<PreparedDomain>& domains() const { return domains_; }
    ExperimentReport& report() { return report_; }

    // Reference ball: the first ball among the domains, else the equimeasure
    // ball of the first domain.
    PreparedDomain reference_ball() {
        for (const auto& pd : domains_)
            if (pd.domain.is_ball()) return pd;
        return {"(equimeasure ball)", "ref_ball", Domain(equimeasure_ball(domains_[0].domain))};
    }

    PreparedDomain reference_triangle() {
        return {"(equilateral)", "ref_triangle", Domain(equilateral_triangle(ref_measure_))};
    }

    const Spectrum& spectrum(const PreparedDomain& pd, int n, bool want_vectors) {
        const auto key = std::make_pair(pd.label, n);
        auto it = cache_.find(key);
        if (it != cache_.end() && (!want_vectors || it->second.has_vectors()))
            return it->second;
        RasterDomain raster = rasterize(pd.domain, n);
        raster.label = pd.label;
        Spectrum spec = eigendecompose(assemble(raster, kernel_), want_vectors);
        const bool fresh = it == cache_.end();
        auto pos = cache_.insert_or_assign(key, std::move(spec)).first;
        if (fresh) {
            std::ofstream out(std::filesystem::path(out_dir_) /
                              fmt("spectrum_%s_%d.csv", pd.label.c_str(), n));
            write_spectrum_csv(pos->second, out);
        }
        return pos->second;
    }

    // Richardson over the last two configured resolutions.
    Budgeted budgeted(const PreparedDomain& pd, const std::function<double(const Spectrum&)>& q) {
        const auto& res = cfg_.resolutions;
        const int n1 = res[res.size() - 2];
        const int n2 = res.back();
        return richardson(q(spectrum(pd, n1, false)), n1, q(spectrum(pd, n2, false)), n2);
    }

    nlohmann::ordered_json& domain_json(const PreparedDomain& pd) {
        auto& j = report_.quantities["domains"][pd.label];
        if (j.is_null()) {
            j = nlohmann::ordered_json::object();
            j["spec"] = pd.spec_text;
            j["kind"] = pd.domain.kind();
            j["measure"] = pd.domain.measure();
        }
        return j;
    }

    void add_verdict(std::string claim, double margin, double budget,
                     nlohmann::ordered_json compared = {}) {
        report_.verdicts.push_back(make_verdict(std::move(claim), margin, budget,
                                                cfg_.budget_sign, std::move(compared)));
    }

    void add_functional_row(const std::string& label, FunctionalRow row) {
        functionals_[label].push_back(std::move(row));
    }

    void flush_functionals() {
        for (const auto& [label, rows] : functionals_) {
            std::ofstream out(std::filesystem::path(out_dir_) /
                              fmt("functionals_%s.csv", label.c_str()));
            out << "functional,p,n,x,value\n";
            for (const auto& r : rows) {
                out << r.functional << "," << fmt("%.17g", r.p) << ","
                    << (r.n ? std::to_string(*r.n) : std::string()) << ","
                    << fmt("%.17g,%.17g\n", r.x, r.value);
            }
        }
    }

    const std::string& out_dir() const { return out_dir_; }

private:
    ExperimentConfig cfg_;
    std::string out_dir_;
    int dimension_;
    KernelSpec kernel_;
    double ref_measure_ = 0.0;
    std::vector<PreparedDomain> domains_;
    std::map<std::pair<std::string, int>, Spectrum> cache_;
    std::map<std::string, std::vector<FunctionalRow>> functionals_;
    ExperimentReport report_;
};

double mu1_of(const Spectrum& s) {
    if (s.char_numbers().empty())
        fail(ErrorCode::NonPositiveSpectrum, "no positive eigenvalues retained");
    return s.char_numbers().front();
}

void record_mu1(Workspace& ws, const PreparedDomain& pd, const Budgeted& b) {
    ws.domain_json(pd)["mu1"] = budgeted_json(b);
}

void perron_verdict(Workspace& ws, const PreparedDomain& pd) {
    const Spectrum& spec = ws.spectrum(pd, ws.cfg().resolutions.back(), true);
    const PerronDiagnosis diag = perron_check(spec);
    ws.domain_json(pd)["perron"] = {{"simple", diag.simple},
                                    {"gap", diag.gap},
                                    {"sign_consistent", diag.sign_consistent}};
    const double margin = diag.sign_consistent ? diag.gap - 1e-10 : -1.0;
    ws.add_verdict(fmt("perron(%s): lambda_1 simple, u_1 sign-constant", pd.label.c_str()),
                   margin, 0.0,
                   {{"gap", diag.gap}, {"sign_consistent", diag.sign_consistent}});
}

// ---------------------------------------------------------------- rfk ------

void run_rfk(Workspace& ws) {
    const PreparedDomain ref = ws.reference_ball();
    const Budgeted mu_ref = ws.budgeted(ref, mu1_of);
    record_mu1(ws, ref, mu_ref);
    ws.report().quantities["reference"] = ref.label;

    for (const auto& pd : ws.domains()) {
        if (pd.label == ref.label) continue;
        const Budgeted mu = ws.budgeted(pd, mu1_of);
        record_mu1(ws, pd, mu);
        ws.add_verdict(fmt("mu1(%s) <= mu1(%s)", ref.label.c_str(), pd.label.c_str()),
                       mu.value - mu_ref.value, mu.budget + mu_ref.budget,
                       {{"mu1_ball", mu_ref.value},
                        {"mu1_domain", mu.value},
                        {"ball_budget", mu_ref.budget},
                        {"domain_budget", mu.budget}});
    }

    perron_verdict(ws, ref);
    for (const auto& pd : ws.domains())
        if (pd.label != ref.label) perron_verdict(ws, pd);
}

// ----------------------------------------------------------- schatten ------

void schatten_norm_verdicts(Workspace& ws, const PreparedDomain& ref) {
    for (double p : ws.cfg().p_list) {
        auto norm_p = [p](const Spectrum& s) { return schatten_norm(s, p).value; };
        const Budgeted ref_norm = ws.budgeted(ref, norm_p);
        const bool caveat =
            schatten_norm(ws.spectrum(ref, ws.cfg().resolutions.back(), false), p)
                .divergence_caveat;
        auto record = [&](const PreparedDomain& pd, const Budgeted& b) {
            auto& j = ws.domain_json(pd)["schatten"][fmt("p=%s", p_label(p).c_str())];
            j = budgeted_json(b);
            j["divergence_caveat"] = caveat;
        };
        record(ref, ref_norm);
        for (const auto& pd : ws.domains()) {
            if (pd.label == ref.label) continue;
            const Budgeted norm = ws.budgeted(pd, norm_p);
            record(pd, norm);
            ws.add_verdict(fmt("schatten(%s, p=%s) <= schatten(%s, p=%s)", pd.label.c_str(),
                               p_label(p).c_str(), ref.label.c_str(), p_label(p).c_str()),
                           ref_norm.value - norm.value, ref_norm.budget + norm.budget,
                           {{"reference_norm", ref_norm.value},
                            {"domain_norm", norm.value},
                            {"reference_budget", ref_norm.budget},
                            {"domain_budget", norm.budget},
                            {"divergence_caveat", caveat}});
        }
    }
}

// Heat, resolvent and shifted sums and F_n over the configured grids, as
// budgeted differences reference-minus-domain.
void functional_verdicts(Workspace& ws, const PreparedDomain& ref) {
    const auto& cfg = ws.cfg();
    std::vector<int> int_p;
    for (double p : cfg.p_list)
        if (std::isfinite(p) && p == std::floor(p)) int_p.push_back(int(p));
    if (int_p.empty() || (cfg.t_list.empty() && cfg.zeta_list.empty())) return;

    // Scale for the zeta grids: the smallest mu_1(B) seen over the two
    // budgeted resolutions, so every grid point stays valid at both.
    const auto& res = cfg.resolutions;
    const double mu_scale =
        std::min(mu1_of(ws.spectrum(ref, res[res.size() - 2], false)),
                 mu1_of(ws.spectrum(ref, res.back(), false)));

    auto diff_verdict = [&](const PreparedDomain& pd, const std::string& name, double p,
                            std::optional<int> n, double x,
                            const std::function<double(const Spectrum&)>& q) {
        auto diff = [&](const Spectrum& sref, const Spectrum& sdom) {
            return q(sref) - q(sdom);
        };
        const int n1 = res[res.size() - 2];
        const int n2 = res.back();
        const Budgeted b = richardson(
            diff(ws.spectrum(ref, n1, false), ws.spectrum(pd, n1, false)), n1,
            diff(ws.spectrum(ref, n2, false), ws.spectrum(pd, n2, false)), n2);
        const std::string tag =
            n ? fmt("%s(p=%d,n=%d,x=%.6g)", name.c_str(), int(p), *n, x)
              : fmt("%s(p=%d,x=%.6g)", name.c_str(), int(p), x);
        ws.add_verdict(fmt("%s: %s >= 0 for %s", tag.c_str(), name.c_str(), pd.label.c_str()),
                       b.value, b.budget,
                       {{"difference", b.value}, {"budget", b.budget}, {"x", x}});
        FunctionalRow row{name + "_diff", p, n, x, b.value};
        ws.add_functional_row(pd.label, row);
    };

    for (int p : int_p) {
        for (const auto& pd : ws.domains()) {
            if (pd.label == ref.label) continue;
            for (double t : cfg.t_list) {
                diff_verdict(pd, "heat_sum", p, std::nullopt, t,
                             [p, t](const Spectrum& s) { return heat_sum(s, p, t); });
                for (const auto& target : {ref, pd})
                    ws.add_functional_row(
                        target.label,
                        {"heat_sum", double(p), std::nullopt, t,
                         heat_sum(ws.spectrum(target, res.back(), false), p, t)});
            }
            for (double zhat : cfg.zeta_list) {
                if (std::abs(zhat) <= 0.95) {
                    const double zeta = zhat * mu_scale;
                    diff_verdict(pd, "resolvent_sum", p, std::nullopt, zeta,
                                 [p, zeta](const Spectrum& s) {
                                     return resolvent_sum(s, p, zeta);
                                 });
                }
                if (zhat >= -0.95) {
                    const double zeta = zhat * mu_scale;
                    for (int order : cfg.shifted_orders) {
                        diff_verdict(pd, "shifted_sum", p, order, zeta,
                                     [p, order, zeta](const Spectrum& s) {
                                         return shifted_sum(s, p, order, zeta);
                                     });
                        // Same quantity through the F_n route.
                        const int n1 = res[res.size() - 2];
                        const int n2 = res.back();
                        const Budgeted fn = richardson(
                            fn_difference(ws.spectrum(ref, n1, false), ws.spectrum(pd, n1, false),
                                          p, order, zeta),
                            n1,
                            fn_difference(ws.spectrum(ref, n2, false), ws.spectrum(pd, n2, false),
                                          p, order, zeta),
                            n2);
                        ws.add_verdict(
                            fmt("F_n(zeta) >= 0 (p=%d, n=%d, zeta=%.6g, %s)", p, order, zeta,
                                pd.label.c_str()),
                            fn.value, fn.budget, {{"fn", fn.value}, {"budget", fn.budget}});
                        ws.add_functional_row(pd.label,
                                              {"fn_difference", double(p), order, zeta, fn.value});
                    }
                }
            }
        }
    }
}

void run_schatten(Workspace& ws) {
    const PreparedDomain ref = ws.reference_ball();
    ws.report().quantities["reference"] = ref.label;
    const Budgeted mu_ref = ws.budgeted(ref, mu1_of);
    record_mu1(ws, ref, mu_ref);
    for (const auto& pd : ws.domains()) {
        if (pd.label == ref.label) continue;
        record_mu1(ws, pd, ws.budgeted(pd, mu1_of));
    }
    schatten_norm_verdicts(ws, ref);
    functional_verdicts(ws, ref);
}

// ----------------------------------------------------------- triangle ------

void run_triangle(Workspace& ws) {
    for (const auto& pd : ws.domains())
        if (!pd.domain.is_triangle())
            fail(ErrorCode::NotATriangle, "domain '" + pd.spec_text + "' is not a triangle");
    const PreparedDomain ref = ws.reference_triangle();
    ws.report().quantities["reference"] = ref.label;

    const Budgeted mu_ref = ws.budgeted(ref, mu1_of);
    record_mu1(ws, ref, mu_ref);
    for (const auto& pd : ws.domains()) {
        const Budgeted mu = ws.budgeted(pd, mu1_of);
        record_mu1(ws, pd, mu);
        ws.add_verdict(fmt("mu1(%s) <= mu1(%s)", ref.label.c_str(), pd.label.c_str()),
                       mu.value - mu_ref.value, mu.budget + mu_ref.budget,
                       {{"mu1_equilateral", mu_ref.value}, {"mu1_triangle", mu.value}});
    }
    schatten_norm_verdicts(ws, ref);
}

// ------------------------------------------------------------- steiner -----

void run_steiner(Workspace& ws) {
    const auto& cfg = ws.cfg();
    const Triangle start = std::get<Triangle>(ws.domains().front().domain.shape());
    const SymmetrizationSequence seq =
        symmetrization_sequence(start, cfg.steiner_tol, cfg.steiner_max_iter);

    const double area0 = triangle_area(seq.steps.front());
    const double area_end = triangle_area(seq.steps.back());
    const auto sides = triangle_side_lengths(seq.steps.back());
    const double spread =
        *std::max_element(sides.begin(), sides.end()) - *std::min_element(sides.begin(), sides.end());

    nlohmann::ordered_json steps_json = nlohmann::ordered_json::array();

    // Norms per step at the two budgeted resolutions.
    std::map<double, std::vector<Budgeted>> norms;  // p -> per-step
    for (size_t k = 0; k < seq.steps.size(); ++k) {
        const Triangle& tri = seq.steps[k];
        PreparedDomain pd{fmt("(step %zu)", k), fmt("step%02zu", k), Domain(tri)};
        nlohmann::ordered_json sj;
        sj["vertices"] = {{tri.v[0][0], tri.v[0][1]},
                          {tri.v[1][0], tri.v[1][1]},
                          {tri.v[2][0], tri.v[2][1]}};
        sj["area"] = triangle_area(tri);
        sj["sides"] = triangle_side_lengths(tri);
        for (double p : cfg.p_list) {
            auto norm_p = [p](const Spectrum& s) { return schatten_norm(s, p).value; };
            const Budgeted b = ws.budgeted(pd, norm_p);
            norms[p].push_back(b);
            sj["schatten"][fmt("p=%s", p_label(p).c_str())] = budgeted_json(b);
        }
        steps_json.push_back(sj);
    }

    for (double p : cfg.p_list) {
        const auto& series = norms[p];
        for (size_t k = 0; k + 1 < series.size(); ++k) {
            ws.add_verdict(
                fmt("steiner step %zu -> %zu: schatten p=%s non-decreasing", k, k + 1,
                    p_label(p).c_str()),
                series[k + 1].value - series[k].value, series[k].budget + series[k + 1].budget,
                {{"before", series[k].value}, {"after", series[k + 1].value}});
        }
    }

    ws.report().quantities["steiner"] = {{"steps", steps_json},
                                         {"converged", seq.converged},
                                         {"iterations", seq.iterations},
                                         {"area_start", area0},
                                         {"area_end", area_end},
                                         {"final_side_spread", spread}};

    ws.add_verdict("steiner sequence converged to equilateral", seq.converged ? 1.0 : -1.0, 0.0,
                   {{"iterations", seq.iterations}});
    ws.add_verdict(fmt("final side spread < %g", cfg.steiner_tol), cfg.steiner_tol - spread, 0.0,
                   {{"spread", spread}});
    const double drift = std::abs(area_end - area0) / area0;
    ws.add_verdict("area drift <= 1e-10 relative", 1e-10 - drift, 0.0, {{"drift", drift}});
}

// ----------------------------------------------------------------- bll -----

void run_bll(Workspace& ws) {
    const auto& cfg = ws.cfg();
    for (const auto& pd : ws.domains()) {
        for (double p_real : cfg.p_list) {
            const int p = int(p_real);
            const BllComparison cmp =
                bll_compare(pd.domain, ws.kernel(), p, cfg.mc_samples, cfg.seed);
            auto& j = ws.domain_json(pd)["bll"][fmt("p=%d", p)];
            j["omega"] = to_json(cmp.omega);
            j["ball"] = to_json(cmp.ball);
            j["dominance_z"] = cmp.dominance_z;
            ws.add_verdict(
                fmt("cyclic integral over %s <= over ball (p=%d), z >= -3", pd.label.c_str(), p),
                cmp.dominance_z + 3.0, 0.0,
                {{"dominance_z", cmp.dominance_z},
                 {"omega", cmp.omega.value},
                 {"ball", cmp.ball.value},
                 {"omega_stderr", cmp.omega.stderr_},
                 {"ball_stderr", cmp.ball.stderr_}});
        }
    }
}

// ---------------------------------------------------------------- zeta -----

void run_zeta(Workspace& ws) {
    const auto& cfg = ws.cfg();
    const double b = ws.kernel().parameter();

    std::vector<double> zetas = cfg.zeta_list;
    if (std::find(zetas.begin(), zetas.end(), 0.0) == zetas.end())
        zetas.insert(zetas.begin(), 0.0);

    for (const auto& pd : ws.domains()) {
        nlohmann::ordered_json tables = nlohmann::ordered_json::array();
        std::vector<ZetaResidualTable> per_res;
        const size_t n_res = cfg.resolutions.size();
        const size_t first = n_res >= 2 ? n_res - 2 : 0;
        for (size_t r = first; r < n_res; ++r) {
            const int n = cfg.resolutions[r];
            RasterDomain raster = rasterize(pd.domain, n);
            raster.label = pd.label;
            per_res.push_back(zeta_residual_table(raster, b, zetas, cfg.index_list));
            nlohmann::ordered_json tj;
            tj["resolution"] = n;
            tj["zetas"] = per_res.back().zetas;
            tj["indices"] = per_res.back().indices;
            tj["char_numbers"] = per_res.back().char_numbers;
            tj["residuals"] = per_res.back().residuals;
            tables.push_back(tj);
            for (size_t zi = 0; zi < zetas.size(); ++zi)
                for (size_t ii = 0; ii < cfg.index_list.size(); ++ii)
                    ws.add_functional_row(pd.label,
                                          {"zeta_residual", double(cfg.index_list[ii]),
                                           std::optional<int>(n), zetas[zi],
                                           per_res.back().residuals[zi][ii]});
        }
        ws.domain_json(pd)["zeta_residuals"] = tables;

        // The zeta = 0 column must reproduce the eigen-residuals: the bound
        // 1e-8 ||A|| on ||A v - lambda v|| becomes 1e-8 mu_i / mu_1 here.
        const ZetaResidualTable& finest = per_res.back();
        double margin = std::numeric_limits<double>::infinity();
        for (size_t ii = 0; ii < finest.indices.size(); ++ii) {
            const double bound =
                1e-8 * finest.char_numbers[ii] / finest.char_numbers.front();
            margin = std::min(margin, bound - finest.residuals[0][ii]);
        }
        ws.add_verdict(fmt("zeta=0 residuals of %s meet the eigen-residual bound",
                           pd.label.c_str()),
                       margin, 0.0, {{"min_margin", margin}});
    }
}

// --------------------------------------------------------- convergence -----

void run_convergence(Workspace& ws) {
    const auto& cfg = ws.cfg();
    for (const auto& pd : ws.domains()) {
        nlohmann::ordered_json series = nlohmann::ordered_json::array();
        std::vector<double> mu1s, norms;
        for (int n : cfg.resolutions) {
            const Spectrum& s = ws.spectrum(pd, n, false);
            mu1s.push_back(mu1_of(s));
            norms.push_back(schatten_norm(s, cfg.p_list.front()).value);
            series.push_back({{"resolution", n},
                              {"mu1", mu1s.back()},
                              {"schatten", norms.back()},
                              {"retained", s.retained()},
                              {"excluded", s.excluded_count()}});
        }
        nlohmann::ordered_json ratios = nlohmann::ordered_json::array();
        for (size_t i = 0; i + 2 < mu1s.size(); ++i) {
            const double d1 = std::abs(mu1s[i + 1] - mu1s[i]);
            const double d2 = std::abs(mu1s[i + 2] - mu1s[i + 1]);
            ratios.push_back({{"pair", fmt("%d/%d", cfg.resolutions[i + 1], cfg.resolutions[i + 2])},
                              {"mu1_error_ratio", d1 > 0 ? d2 / d1 : 0.0}});
        }
        ws.domain_json(pd)["convergence"] = {{"series", series}, {"error_ratios", ratios}};
    }
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const std::string& output_dir) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    Workspace ws(config, output_dir);
    try {
        switch (config.experiment) {
            case ExperimentKind::Rfk: run_rfk(ws); break;
            case ExperimentKind::Schatten: run_schatten(ws); break;
            case ExperimentKind::Triangle: run_triangle(ws); break;
            case ExperimentKind::Steiner: run_steiner(ws); break;
            case ExperimentKind::Bll: run_bll(ws); break;
            case ExperimentKind::Zeta: run_zeta(ws); break;
            case ExperimentKind::Convergence: run_convergence(ws); break;
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigParseError || e.code() == ErrorCode::NotATriangle) throw;
        ws.report().errors.push_back(e.what());
    } catch (const std::exception& e) {
        ws.report().errors.push_back(e.what());
    }
    ws.flush_functionals();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ws.report().runtime["started_utc"] = utc_now();
    ws.report().runtime["seconds"] = seconds;
    ws.report().runtime["output_dir"] = output_dir;
    write_report(ws.report(), output_dir);
    return ws.report();
}

int run(const ExperimentConfig& config, const std::string& output_dir) {
    try {
        return run_experiment(config, output_dir).exit_code();
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        if (e.code() == ErrorCode::ConfigParseError || e.code() == ErrorCode::NotATriangle)
            return 2;
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 3;
    }
}

}  // namespace isoschatten
