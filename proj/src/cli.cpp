#include "isoschatten/cli.hpp"

#include <charconv>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isoschatten/experiments.hpp"
#include "isoschatten/version.hpp"

namespace isoschatten {

namespace {

std::vector<double> parse_p_tokens(const std::vector<std::string>& tokens) {
    std::vector<double> out;
    for (const auto& tok : tokens) {
        if (tok == "inf") {
            out.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            fail(ErrorCode::ConfigParseError, "bad p value '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{std::string(kToolName) + " " + kToolVersion +
                 " - spectral inequalities of convolution operators at desk scale"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = "out";
    std::vector<std::string> domain_flags;
    std::vector<std::string> p_tokens;
    std::vector<int> resolution_flags;
    std::string kernel_flag;
    std::uint64_t seed_flag = 0;
    bool seed_given = false;
    long long mc_samples_flag = 0;

    std::vector<CLI::App*> subs;
    for (const char* name :
         {"rfk", "schatten", "triangle", "steiner", "bll", "zeta", "convergence"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--output", output_dir, "output directory (default: out)");
        sub->add_option("--seed", seed_flag, "RNG seed")->each([&](const std::string&) {
            seed_given = true;
        });
        sub->add_option("--resolution", resolution_flags, "raster resolutions, ascending")
            ->delimiter(',');
        sub->add_option("--p-list", p_tokens, "Schatten exponents (numbers or inf)")
            ->delimiter(',');
        sub->add_option("--kernel", kernel_flag, "kernel spec, e.g. gauss:s=1");
        sub->add_option("--domain", domain_flags, "domain spec (repeatable)");
        sub->add_option("--mc-samples", mc_samples_flag, "Monte Carlo sample count");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // --help exits 0
    }

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = ExperimentConfig::load(config_path);
        cfg.experiment = parse_experiment(app.get_subcommands().front()->get_name());
        if (!kernel_flag.empty()) cfg.kernel = kernel_flag;
        if (!domain_flags.empty()) cfg.domains = domain_flags;
        if (!p_tokens.empty()) cfg.p_list = parse_p_tokens(p_tokens);
        if (!resolution_flags.empty()) cfg.resolutions = resolution_flags;
        if (seed_given) cfg.seed = seed_flag;
        if (mc_samples_flag > 0) cfg.mc_samples = mc_samples_flag;
        if (cfg.kernel.empty() || cfg.domains.empty())
            fail(ErrorCode::ConfigParseError, "kernel and domains required (config or flags)");
        return run(cfg, output_dir);
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return e.code() == ErrorCode::ConfigParseError || e.code() == ErrorCode::NotATriangle ? 2
                                                                                              : 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 3;
    }
}

}  // namespace isoschatten
