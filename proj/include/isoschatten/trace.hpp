#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "isoschatten/geometry.hpp"
#include "isoschatten/kernel.hpp"
#include "isoschatten/spectral.hpp"

namespace isoschatten {

// Tr(A^p) by repeated matrix products plus a dot-trace; no eigendecomposition.
double matrix_trace_power(const NystromSystem& system, int p);

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long long n_samples = 0;
    std::uint64_t seed = 0;
    int p = 0;
    std::string kernel;
    std::string domain;
};

nlohmann::json to_json(const McEstimate& estimate);

// Monte Carlo estimate of the p-fold cyclic integral
//   int_{Omega^p} K(|y_1-y_2|) ... K(|y_p-y_1|) dy_1 ... dy_p
// by uniform rejection sampling from the bounding box. Bounded kernels only
// (singular ones have unbounded variance under uniform sampling). Samples are
// drawn in fixed 2^16-sample chunks, each chunk's stream derived from
// (seed, chunk index), and reduced in chunk order, so estimates are
// bit-identical for a fixed seed regardless of scheduling.
McEstimate mc_cyclic_trace(const Domain& domain, const KernelSpec& kernel, int p,
                           long long n_samples, std::uint64_t seed);

struct BllComparison {
    McEstimate omega;
    McEstimate ball;
    double dominance_z = 0.0;  // (ball - omega) / combined stderr
};

// Cyclic integrals over the domain and its equimeasure ball; the rearrangement
// inequality predicts ball >= omega. The two estimates use seed streams
// derived from (seed, 0) and (seed, 1).
BllComparison bll_compare(const Domain& domain, const KernelSpec& kernel, int p,
                          long long n_samples, std::uint64_t seed);

}  // namespace isoschatten
