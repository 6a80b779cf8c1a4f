// Quantum Fisher information for pure and mixed states, the symmetric
// logarithmic derivative, Uhlmann fidelity, and the parametric purification
// bound for phase diffusion.
#pragma once

#include "qmetro/channels.hpp"
#include "qmetro/numerics.hpp"

#include <optional>

namespace qmetro {

struct QfiResult {
    double value = 0.0;
    std::optional<Mat> sld;
    // smallest eigenvalue pair sum lambda_i + lambda_j kept in the SLD sum
    double spectrum_condition = 0.0;
};

// Eigenvalue-pair retention threshold for mixed-state formulas.
inline constexpr double kSpectrumCut = 1e-12;

// 4(<dpsi|dpsi> - |<dpsi|psi>|^2). Requires <psi|dpsi> purely imaginary
// within 1e-8 (norm preservation), else throws inconsistent_derivative_error.
double qfi_pure(const Vec& psi, const Vec& dpsi);

QfiResult qfi_mixed(const Mat& rho, const Mat& drho);

// Unitary-encoding form: sum_ij 2 |<e_i|H|e_j>|^2 (l_i - l_j)^2 / (l_i + l_j).
double qfi_unitary(const Mat& rho, const Mat& generator);

// (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2
double fidelity(const Mat& rho1, const Mat& rho2);

// QFI of a loss-type block mixture under the photon-number phase generator;
// block weights carry no phase dependence so the block QFIs just add.
double block_phase_qfi(const BlockDiagonalState& state);

// Purification-family bound 2 lambda^2 + 4 (1 - sqrt(2 Gamma) lambda)^2 Var(Jz).
// With no lambda given returns the minimized value 4V / (1 + 4 Gamma V).
double phase_diffusion_purification_bound(double var_jz, double gamma,
                                          std::optional<double> lambda = std::nullopt);

}  // namespace qmetro
