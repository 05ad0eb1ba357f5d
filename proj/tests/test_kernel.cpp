#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isoschatten/kernel.hpp"
#include "support.hpp"

using namespace isoschatten;

namespace {

template <typename F>
ErrorCode error_code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an isoschatten::Error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("kernel eval closed formulas") {
    const auto peierls = KernelSpec::peierls(1.0);
    CHECK(peierls.eval(1.0) == doctest::Approx(std::exp(-1.0) / (4.0 * std::numbers::pi))
                                   .epsilon(1e-12));

    const auto riesz = KernelSpec::riesz(1.0, 3);
    CHECK(riesz.eval(2.0) == doctest::Approx(0.5).epsilon(1e-15));

    const auto gauss = KernelSpec::gaussian(1.0, 2);
    CHECK(gauss.eval(0.0) == doctest::Approx(1.0));
    CHECK(gauss.eval(1.0) >= gauss.eval(2.0));

    const auto expk = KernelSpec::exponential(0.5, 2);
    CHECK(expk.eval(2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("kernel eval error paths") {
    const auto peierls = KernelSpec::peierls(1.0);
    CHECK(error_code_of([&] { peierls.eval(0.0); }) == ErrorCode::SingularAtZero);
    CHECK(error_code_of([&] { peierls.eval(-1.0); }) == ErrorCode::NegativeRadius);
    const auto riesz = KernelSpec::riesz(0.5, 2);
    CHECK(error_code_of([&] { riesz.eval(0.0); }) == ErrorCode::SingularAtZero);
    CHECK_NOTHROW(KernelSpec::gaussian(1.0, 1).eval(0.0));
}

TEST_CASE("kernel factory validation") {
    CHECK(error_code_of([] { KernelSpec::peierls(-1.0); }) == ErrorCode::InvalidKernel);
    CHECK(error_code_of([] { KernelSpec::riesz(2.0, 2); }) == ErrorCode::InvalidKernel);
    CHECK(error_code_of([] { KernelSpec::gaussian(0.0, 2); }) == ErrorCode::InvalidKernel);
    CHECK(KernelSpec::peierls(2.0).dimension() == 3);
}

TEST_CASE("radial mass closed forms") {
    // Peierls: surface factor cancels the kernel singularity.
    CHECK(radial_mass(KernelSpec::peierls(1.0), 3, 0.1) ==
          doctest::Approx(1.0 - std::exp(-0.1)).epsilon(1e-14));
    // Riesz alpha=1, d=3: 4*pi*r0^2/2.
    CHECK(radial_mass(KernelSpec::riesz(1.0, 3), 3, 1.0) ==
          doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("radial mass quadrature agrees with independent oracles") {
    // Gaussian d=1, r0=10 is an infinite-domain proxy: integral -> sqrt(pi).
    const double mass = radial_mass(KernelSpec::gaussian(1.0, 1), 1, 10.0);
    CHECK(mass == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
    // erf identity at finite radius.
    const double m05 = radial_mass(KernelSpec::gaussian(1.0, 1), 1, 0.5);
    CHECK(m05 == doctest::Approx(std::sqrt(std::numbers::pi) * std::erf(0.5)).epsilon(1e-12));

    // Closed forms vs the test-side quadrature for Peierls and Riesz.
    for (double r0 : {0.01, 0.1, 1.0}) {
        const auto peierls = KernelSpec::peierls(1.0);
        const double quad = oracle::adaptive_simpson(
            [&](double r) { return r <= 0.0 ? 0.0 : peierls.eval(r) * 4.0 * std::numbers::pi * r * r; },
            0.0, r0, 1e-15);
        CHECK(radial_mass(peierls, 3, r0) == doctest::Approx(quad).epsilon(1e-10));

        const auto riesz = KernelSpec::riesz(1.5, 3);
        const double quad2 = oracle::adaptive_simpson(
            [&](double r) {
                return r <= 0.0 ? 0.0 : riesz.eval(r) * 4.0 * std::numbers::pi * r * r;
            },
            1e-12, r0, 1e-15);
        CHECK(radial_mass(riesz, 3, r0) == doctest::Approx(quad2).epsilon(1e-6));
    }
}

TEST_CASE("radial mass shell additivity and monotonicity") {
    const auto kernel = KernelSpec::exponential(0.7, 2);
    double prev = 0.0;
    for (double r : {0.1, 0.2, 0.5, 1.0, 2.0}) {
        const double m = radial_mass(kernel, 2, r);
        CHECK(m > prev);
        prev = m;
    }
    const double shell = radial_mass(kernel, 2, 2.0) - radial_mass(kernel, 2, 1.0);
    const double direct = 2.0 * std::numbers::pi *
                          oracle::adaptive_simpson(
                              [&](double r) { return kernel.eval(r) * r; }, 1.0, 2.0, 1e-15);
    CHECK(shell == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("radial mass divergence") {
    CHECK(error_code_of([] { radial_mass(KernelSpec::riesz(2.5, 3), 2, 1.0); }) ==
          ErrorCode::DivergentMass);
    CHECK(error_code_of([] { radial_mass(KernelSpec::peierls(1.0), 2, 1.0); }) ==
          ErrorCode::DivergentMass);
}

TEST_CASE("admissibility diagnosis") {
    const auto p = is_admissible(KernelSpec::peierls(1.0), 3);
    CHECK(p.positive);
    CHECK(p.monotone);
    CHECK(p.locally_integrable);

    // Riesz alpha=2.5 built in d=3, diagnosed in d=2: mass diverges.
    const auto r = is_admissible(KernelSpec::riesz(2.5, 3), 2);
    CHECK(r.positive);
    CHECK(r.monotone);
    CHECK_FALSE(r.locally_integrable);

    const auto e = is_admissible(KernelSpec::exponential(0.5, 2), 2);
    CHECK(e.positive);
    CHECK(e.monotone);
    CHECK(e.locally_integrable);
}

TEST_CASE("kernel positivity and monotonicity on a dense grid") {
    // Grid capped at rho = 10 so exponential tails stay above the underflow
    // threshold; positivity at larger rho is an underflow question, not a
    // kernel one.
    const KernelSpec kernels[] = {
        KernelSpec::peierls(0.5), KernelSpec::riesz(0.8, 2),
        KernelSpec::exponential(2.0, 2), KernelSpec::gaussian(3.0, 2)};
    for (const auto& k : kernels) {
        double rho = 1e-6;
        double prev = k.eval(rho);
        const double ratio = std::pow(10.0 / 1e-6, 1.0 / 200.0);
        for (int i = 0; i < 200; ++i) {
            rho *= ratio;
            const double cur = k.eval(rho);
            CHECK(cur > 0.0);
            CHECK(prev >= cur * (1.0 - 1e-12));
            prev = cur;
        }
    }
}

TEST_CASE("schatten index hints") {
    CHECK(*schatten_index_hint(KernelSpec::riesz(1.0, 3), 3) == doctest::Approx(1.5));
    CHECK(*schatten_p0(KernelSpec::riesz(1.0, 3), 3) == 2);
    CHECK(*schatten_index_hint(KernelSpec::peierls(1.0), 3) == doctest::Approx(3.0));
    CHECK(*schatten_p0(KernelSpec::peierls(1.0), 3) == 4);
    CHECK(*schatten_index_hint(KernelSpec::gaussian(1.0, 2), 2) == doctest::Approx(1.0));
    CHECK(*schatten_p0(KernelSpec::gaussian(1.0, 2), 2) == 1);
    CHECK(*schatten_index_hint(KernelSpec::exponential(1.0, 2), 2) == doctest::Approx(1.0));
    // No derivation cases.
    CHECK_FALSE(schatten_index_hint(KernelSpec::peierls(1.0), 2).has_value());
    CHECK_FALSE(schatten_index_hint(KernelSpec::riesz(2.5, 3), 2).has_value());
}

TEST_CASE("kernel grammar") {
    const auto k1 = parse_kernel("peierls:b=1.0", 3);
    CHECK(k1.family() == KernelFamily::Peierls);
    CHECK(k1.parameter() == doctest::Approx(1.0));
    const auto k2 = parse_kernel("RIESZ:alpha=0.5", 2);
    CHECK(k2.family() == KernelFamily::Riesz);
    const auto k3 = parse_kernel("exp:a=2.5", 1);
    CHECK(k3.parameter() == doctest::Approx(2.5));
    const auto k4 = parse_kernel("gauss:s=1", 2);
    CHECK(k4.spec_string() == "gauss:s=1");

    CHECK(error_code_of([] { parse_kernel("peierls:b=-1", 3); }) == ErrorCode::ConfigParseError);
    CHECK(error_code_of([] { parse_kernel("peierls:b=1", 2); }) == ErrorCode::ConfigParseError);
    CHECK(error_code_of([] { parse_kernel("log:c=1", 2); }) == ErrorCode::ConfigParseError);
    CHECK(error_code_of([] { parse_kernel("gauss:s=abc", 2); }) == ErrorCode::ConfigParseError);
    CHECK(error_code_of([] { parse_kernel("gauss", 2); }) == ErrorCode::ConfigParseError);
}
