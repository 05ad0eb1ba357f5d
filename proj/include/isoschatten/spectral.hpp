#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "isoschatten/kernel.hpp"
#include "isoschatten/raster.hpp"

namespace isoschatten {

// Dense Nystrom discretization of the operator f -> int_Omega K(|x-y|) f(y) dy
// on the raster's cell centers. Off-diagonal entries are w*K(|x_i-x_j|) with
// w = c*h^d and calibration c = |Omega|/(N h^d); the diagonal carries the
// radial mass of K over the equal-volume ball of a cell, scaled by c.
struct NystromSystem {
    Eigen::MatrixXd matrix;
    std::vector<Point> nodes;
    double weight = 0.0;       // c * h^d
    double calibration = 0.0;  // c
    double h = 0.0;
    int dimension = 0;
    int grid_resolution = 0;  // max raster grid extent, metadata only
    KernelSpec kernel;
    double analytic_measure = 0.0;
    std::string domain_label;
};

NystromSystem assemble(const RasterDomain& raster, const KernelSpec& kernel);

// Spectrum of a NystromSystem: eigenvalues sorted descending; characteristic
// numbers mu_i = 1/lambda_i over eigenvalues above eps_pos = 1e-12*lambda_1,
// ascending. Eigenvalues at or below eps_pos are discretization noise and only
// counted; a tail below -1e-4*lambda_1 (far beyond the O(h^4) truncation scale
// of the diagonal correction) flags the spectrum as not positive.
class Spectrum {
public:
    const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
    const std::vector<double>& char_numbers() const noexcept { return char_numbers_; }
    size_t retained() const noexcept { return char_numbers_.size(); }
    double eps_pos() const noexcept { return eps_pos_; }
    int excluded_count() const noexcept { return excluded_count_; }
    bool has_genuine_negative() const noexcept { return has_genuine_negative_; }

    bool has_vectors() const noexcept { return vectors_.size() > 0; }
    // Columns follow the descending eigenvalue order.
    const Eigen::MatrixXd& vectors() const;
    // Max over retained eigenpairs of ||A v - lambda v|| / ||A||; 0 when
    // vectors were not requested.
    double max_residual() const noexcept { return max_residual_; }

    const std::optional<KernelSpec>& kernel() const noexcept { return kernel_; }
    const std::string& domain_label() const noexcept { return domain_label_; }
    int resolution() const noexcept { return resolution_; }

    // Synthetic spectrum for tests and oracle constructions.
    static Spectrum from_eigenvalues(std::vector<double> eigenvalues,
                                     std::optional<KernelSpec> kernel = std::nullopt,
                                     std::string domain_label = "synthetic");

private:
    friend Spectrum eigendecompose(const NystromSystem&, bool);

    void classify();

    std::vector<double> eigenvalues_;
    std::vector<double> char_numbers_;
    Eigen::MatrixXd vectors_;
    double eps_pos_ = 0.0;
    int excluded_count_ = 0;
    bool has_genuine_negative_ = false;
    double max_residual_ = 0.0;
    std::optional<KernelSpec> kernel_;
    std::string domain_label_;
    int resolution_ = 0;
};

// Full dense symmetric eigendecomposition (LAPACK dsyevd). With vectors the
// residuals ||A v - lambda v|| <= 1e-8 ||A|| are verified for every retained
// pair; violation raises ConvergenceFailure.
Spectrum eigendecompose(const NystromSystem& system, bool want_vectors);

struct SchattenNorm {
    double value = 0.0;
    // Set when p lies below the kernel's Schatten index hint: the discrete sum
    // is finite but the continuum norm diverges.
    bool divergence_caveat = false;
};

// (sum_n s_n^p)^{1/p} with s_n = |lambda_n|; p = infinity gives the operator
// norm s_1. Throws InvalidExponent for p < 1.
SchattenNorm schatten_norm(const Spectrum& spectrum, double p);

// sum_i exp(-mu_i t) / mu_i^{p-1}, t > 0.
double heat_sum(const Spectrum& spectrum, int p, double t);

// sum_i 2 mu_i / (mu_i^{p-1} (mu_i^2 - zeta^2)), valid for |zeta| < mu_1.
double resolvent_sum(const Spectrum& spectrum, int p, double zeta);

// sum_j 1 / (mu_j^{p-1} (mu_j + zeta)^n), valid for zeta > -mu_1.
double shifted_sum(const Spectrum& spectrum, int p, int n, double zeta);

// F_n(zeta) = shifted_sum(ball) - shifted_sum(omega).
double fn_difference(const Spectrum& ball, const Spectrum& omega, int p, int n, double zeta);

struct SchattenIndexEstimate {
    double q_hat = 0.0;
    double slope = 0.0;         // least-squares slope of log s_n vs log n
    double fit_residual = 0.0;  // rms residual of the fit
};

// Fits the resolved band (n in [max(8, N/32), ~N/8]) of the retained
// eigenvalue decay; q_hat = -1/slope. Requires >= 50 retained eigenvalues.
SchattenIndexEstimate estimate_schatten_index(const Spectrum& spectrum);

struct PerronDiagnosis {
    bool simple = false;
    double gap = 0.0;  // (lambda_1 - lambda_2)/lambda_1
    bool sign_consistent = false;
};

PerronDiagnosis perron_check(const Spectrum& spectrum);

// Relative residual ||u_i - (mu_i + zeta) A_{b+zeta} u_i|| / ||u_i|| of the
// shifted-Peierls zeta-kernel identity, for the i-th (1-based) retained
// eigenpair of the Peierls(b) operator on the raster. zeta = 0 reproduces the
// plain eigen-residual.
double zeta_residual(const RasterDomain& raster, double b, double zeta, int i);

struct ZetaResidualTable {
    std::vector<double> zetas;
    std::vector<int> indices;                       // 1-based eigen indices
    std::vector<std::vector<double>> residuals;     // [zeta][index]
    std::vector<double> char_numbers;               // mu_i for the indices
};

// Batch variant sharing one eigendecomposition and one shifted assembly per
// zeta value.
ZetaResidualTable zeta_residual_table(const RasterDomain& raster, double b,
                                      const std::vector<double>& zetas,
                                      const std::vector<int>& indices);

// CSV with columns index,eigenvalue,char_number (char_number blank for
// excluded eigenvalues).
void write_spectrum_csv(const Spectrum& spectrum, std::ostream& os);

// Debug binary dump: 16-byte little-endian header (magic "NYST", u32 N,
// u32 d, u32 reserved 0) followed by N*N row-major doubles.
void write_matrix_binary(const NystromSystem& system, std::ostream& os);

}  // namespace isoschatten
