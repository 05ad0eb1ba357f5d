#pragma once

// Test-side oracles, kept independent of the library code paths they check.

#include <cmath>
#include <functional>
#include <vector>

#include "isoschatten/geometry.hpp"
#include "isoschatten/spectral.hpp"

namespace oracle {

// Composite Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / (2 * panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Adaptive Simpson with absolute tolerance.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Separable reduction of the p = 2 cyclic integral of exp(-s r^2) over an
// axis-aligned box: per axis int_0^L int_0^L e^{-2 s (x-y)^2} dx dy
// = 2 int_0^L (L - t) e^{-2 s t^2} dt, and the full integral is the product.
inline double gaussian_box_cyclic_p2(double s, const std::vector<double>& extents) {
    double prod = 1.0;
    for (double len : extents) {
        auto f = [s, len](double t) { return (len - t) * std::exp(-2.0 * s * t * t); };
        prod *= 2.0 * adaptive_simpson(f, 0.0, len, 1e-14);
    }
    return prod;
}

// Horizontal chord of a triangle at height y: [x_left, x_right], empty if y
// is outside. Brute-force edge intersection, used to cross-check the closed
// form of the Steiner symmetrization.
inline bool triangle_chord(const isoschatten::Triangle& t, double y, double& xl, double& xr) {
    std::vector<double> xs;
    for (int i = 0; i < 3; ++i) {
        const auto& a = t.v[i];
        const auto& b = t.v[(i + 1) % 3];
        if ((a[1] <= y && y <= b[1]) || (b[1] <= y && y <= a[1])) {
            if (a[1] == b[1]) {
                if (a[1] == y) {
                    xs.push_back(a[0]);
                    xs.push_back(b[0]);
                }
                continue;
            }
            xs.push_back(a[0] + (y - a[1]) / (b[1] - a[1]) * (b[0] - a[0]));
        }
    }
    if (xs.size() < 2) return false;
    xl = *std::min_element(xs.begin(), xs.end());
    xr = *std::max_element(xs.begin(), xs.end());
    return true;
}

// Mellin transform of the heat sum on a log grid:
// (1/Gamma(l)) int_0^inf heat_sum(p, t) t^{l-1} dt, which should reproduce
// sum mu^{-(p-1+l)}.
inline double mellin_heat(const isoschatten::Spectrum& spectrum, int p, double l) {
    const double mu1 = spectrum.char_numbers().front();
    const double u_lo = std::log(1e-10 / mu1);
    const double u_hi = std::log(60.0 / mu1);
    auto integrand = [&](double u) {
        const double t = std::exp(u);
        return isoschatten::heat_sum(spectrum, p, t) * std::pow(t, l);
    };
    return simpson(integrand, u_lo, u_hi, 4096) / std::tgamma(l);
}

// Truncated geometric-series route to the resolvent sum:
// sum_{k=0}^{K} 2 zeta^{2k} sum_i mu_i^{-(p+2k)}.
inline double resolvent_series(const isoschatten::Spectrum& spectrum, int p, double zeta,
                               double tol = 1e-12) {
    const auto& mu = spectrum.char_numbers();
    const double mu1 = mu.front();
    const double q = (zeta * zeta) / (mu1 * mu1);
    double acc = 0.0;
    double zpow = 1.0;
    for (int k = 0;; ++k) {
        double inner = 0.0;
        for (double m : mu) inner += std::pow(m, -(p + 2 * k));
        acc += 2.0 * zpow * inner;
        zpow *= zeta * zeta;
        // Tail bound of the remaining geometric series.
        if (2.0 * std::pow(q, k + 1) / (1.0 - q) * inner < tol * acc) break;
        if (k > 200) break;
    }
    return acc;
}

}  // namespace oracle
