// Shared numerical utilities: Hermitian linear algebra helpers, quadrature,
// 1-d and simplex minimizers, a symmetric tridiagonal top-eigenpair solver,
// log-binomials and a bounded thread pool helper.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace qmetro {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

// ---- error types ------------------------------------------------------

struct truncation_error : std::runtime_error {
    double discarded_norm;
    explicit truncation_error(double d)
        : std::runtime_error("grid truncation discards too much norm"),
          discarded_norm(d) {}
};

struct empty_sector_error : std::runtime_error {
    empty_sector_error() : std::runtime_error("requested photon-number sector has zero weight") {}
};

struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct singular_model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct infeasible_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct inconsistent_derivative_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- Hermitian linear algebra ------------------------------------------

struct EigH {
    RVec values;   // ascending
    Mat vectors;   // columns
};

EigH hermitian_eig(const Mat& h);

// exp(scale * h) for Hermitian h, by eigendecomposition.
Mat matrix_exp_hermitian(const Mat& h, cxd scale);

// Positive-semidefinite square root; eigenvalues clipped at zero.
Mat psd_sqrt(const Mat& rho);

double min_eigenvalue(const Mat& h);

bool is_hermitian(const Mat& m, double tol = 1e-10);

// Phase e^{i t} maximizing Re(e^{i t} tr(A^dag B)); returns B * e^{i t}.
Mat align_global_phase(const Mat& reference, const Mat& candidate);

// ---- quadrature ---------------------------------------------------------

// Composite adaptive Simpson rule with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 48);

// Gauss-Hermite nodes/weights for integrals against e^{-x^2}.
void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights);

// ---- minimizers ----------------------------------------------------------

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10);

struct NelderMeadResult {
    RVec x;
    double value = 0.0;
    int iterations = 0;
};

NelderMeadResult nelder_mead(const std::function<double(const RVec&)>& f, const RVec& x0,
                             double step, double tol = 1e-10, int max_iter = 4000);

// ---- symmetric tridiagonal top eigenpair ---------------------------------

struct TopEigenPair {
    double value;
    RVec vector;   // normalized, sign fixed so the largest-magnitude entry is positive
};

// diag has size n, offdiag size n-1. Sturm-sequence bisection for the largest
// eigenvalue plus inverse iteration for its vector.
TopEigenPair tridiagonal_top_eigenpair(const RVec& diag, const RVec& offdiag);

// ---- combinatorics --------------------------------------------------------

double log_factorial(int n);
double log_binomial(int n, int k);   // -inf if k<0 or k>n

// ---- parallel helper -------------------------------------------------------

// Runs fn(i) for i in [0,n). Thread count limited by QMETRO_THREADS when set.
void parallel_for(int n, const std::function<void(int)>& fn);

int max_threads();

}  // namespace qmetro
