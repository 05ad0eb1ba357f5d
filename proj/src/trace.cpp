#include "isoschatten/trace.hpp"

#include <cmath>
#include <random>

#include <cblas.h>
#include <nlohmann/json.hpp>

namespace isoschatten {

double matrix_trace_power(const NystromSystem& system, int p) {
    if (p < 1) fail(ErrorCode::InvalidArgument, "p must be >= 1");
    const Eigen::MatrixXd& a = system.matrix;
    if (p == 1) return a.trace();

    const auto n = a.rows();
    Eigen::MatrixXd power = a;
    Eigen::MatrixXd next(n, n);
    for (int k = 2; k < p; ++k) {
        cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, int(n), int(n), int(n), 1.0,
                    power.data(), int(n), a.data(), int(n), 0.0, next.data(), int(n));
        power.swap(next);
    }
    // Tr(A^p) = <A^{p-1}, A> elementwise, A symmetric.
    return power.cwiseProduct(a).sum();
}

namespace {

// SplitMix64, used only to key per-chunk engines.
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed ^ mix64(tag));
}

// Uniform double in [0,1) from the engine's raw 64 bits; avoids the
// implementation-defined std::uniform_real_distribution.
double uniform01(std::mt19937_64& eng) { return double(eng() >> 11) * 0x1.0p-53; }

constexpr long long kChunk = 1 << 16;
constexpr long long kMaxAttemptsPerPoint = 10'000'000;

}  // namespace

McEstimate mc_cyclic_trace(const Domain& domain, const KernelSpec& kernel, int p,
                           long long n_samples, std::uint64_t seed) {
    if (p < 2) fail(ErrorCode::InvalidArgument, "cycle length p must be >= 2");
    if (n_samples < 10'000) fail(ErrorCode::InvalidArgument, "need at least 1e4 samples");
    if (kernel.singular_at_zero())
        fail(ErrorCode::SingularKernelRejected,
             "unbounded variance under uniform sampling for " + kernel.spec_string());
    const int d = domain.dimension();
    if (kernel.dimension() != d)
        fail(ErrorCode::DimensionMismatch, "kernel and domain dimensions differ");

    const auto [lo, hi] = domain.bounding_box();
    const double measure = domain.measure();

    double sum = 0.0;
    double sumsq = 0.0;
    long long drawn = 0;
    long long accepted = 0;

    std::vector<Point> pts(p, Point{0, 0, 0});
    const long long chunks = (n_samples + kChunk - 1) / kChunk;
    for (long long chunk = 0; chunk < chunks; ++chunk) {
        std::mt19937_64 eng(derive_stream(seed, std::uint64_t(chunk)));
        const long long begin = chunk * kChunk;
        const long long end = std::min(n_samples, begin + kChunk);
        double chunk_sum = 0.0;
        double chunk_sumsq = 0.0;
        for (long long s = begin; s < end; ++s) {
            for (int k = 0; k < p; ++k) {
                long long attempts = 0;
                while (true) {
                    ++drawn;
                    if (++attempts > kMaxAttemptsPerPoint)
                        fail(ErrorCode::RejectionInefficiency, "rejection loop stalled");
                    Point y{0, 0, 0};
                    for (int a = 0; a < d; ++a)
                        y[a] = lo[a] + (hi[a] - lo[a]) * uniform01(eng);
                    if (domain.contains(y)) {
                        pts[k] = y;
                        ++accepted;
                        break;
                    }
                }
            }
            double prod = 1.0;
            for (int k = 0; k < p; ++k)
                prod *= kernel.eval(distance(pts[k], pts[(k + 1) % p], d));
            chunk_sum += prod;
            chunk_sumsq += prod * prod;
        }
        sum += chunk_sum;
        sumsq += chunk_sumsq;
        if (drawn >= 100'000 && double(accepted) < 0.01 * double(drawn))
            fail(ErrorCode::RejectionInefficiency,
                 "bounding-box acceptance below 1%; domain degenerate for rejection sampling");
    }

    const double n = double(n_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    const double scale = std::pow(measure, p);

    McEstimate est;
    est.value = scale * mean;
    est.stderr_ = scale * std::sqrt(var / n);
    est.n_samples = n_samples;
    est.seed = seed;
    est.p = p;
    est.kernel = kernel.spec_string();
    est.domain = domain.kind();
    return est;
}

BllComparison bll_compare(const Domain& domain, const KernelSpec& kernel, int p,
                          long long n_samples, std::uint64_t seed) {
    const Domain ball_domain{Domain(equimeasure_ball(domain))};
    BllComparison out;
    out.omega = mc_cyclic_trace(domain, kernel, p, n_samples, derive_stream(seed, 0));
    out.ball = mc_cyclic_trace(ball_domain, kernel, p, n_samples, derive_stream(seed, 1));
    const double denom =
        std::sqrt(out.ball.stderr_ * out.ball.stderr_ + out.omega.stderr_ * out.omega.stderr_);
    out.dominance_z = denom > 0.0 ? (out.ball.value - out.omega.value) / denom : 0.0;
    return out;
}

nlohmann::json to_json(const McEstimate& estimate) {
    return nlohmann::json{{"value", estimate.value},   {"stderr", estimate.stderr_},
                          {"n_samples", estimate.n_samples}, {"seed", estimate.seed},
                          {"p", estimate.p},           {"kernel", estimate.kernel},
                          {"domain", estimate.domain}};
}

}  // namespace isoschatten
