// Asymptotic precision bounds and the two channel-geometry bound engines:
// classical simulation (Choi-positivity tangent distances) and quantum
// simulation (minimization over Kraus representations), plus the particle
// entanglement witness.
#pragma once

#include "qmetro/channels.hpp"
#include "qmetro/numerics.hpp"

#include <optional>
#include <string>

namespace qmetro {

enum class BoundMethod {
    asymptotic_loss,
    asymptotic_dephasing,
    phase_diffusion_exact,
    phase_diffusion_purification,
    classical_simulation,
    quantum_simulation,
};

struct BoundResult {
    BoundMethod method;
    int n_photons = 0;
    double delta_phi = 0.0;        // precision bound
    double qfi_equivalent = 0.0;   // 1/delta_phi^2 when finite
    bool infinite = false;         // flagged when the bound diverges (eta = 0)
};

// (sqrt((1-eta_a)/eta_a) + sqrt((1-eta_b)/eta_b)) / (2 sqrt(N))
BoundResult asymptotic_loss_bound(int n_photons, double eta_a, double eta_b);

// sqrt((1-eta^2)/eta^2) / sqrt(N)
BoundResult asymptotic_dephasing_bound(int n_photons, double eta);

struct PhaseDiffusionBounds {
    double exact = 0.0;          // sqrt(Gamma + pi^2/N^2)
    double purification = 0.0;   // sqrt(Gamma + 1/N^2)
};

PhaseDiffusionBounds phase_diffusion_bounds(int n_photons, double gamma);

// Channel at phi0 together with the Kraus derivatives dK_i/dphi.
struct ChannelFamily {
    KrausChannel channel;
    std::vector<Mat> kraus_dot;
};

// K_i(phi) = K_i e^{-i phi H} differentiated at phi = 0.
ChannelFamily phase_encoded_family(const KrausChannel& channel, const Mat& generator);

struct CsResult {
    double eps_plus = 0.0;
    double eps_minus = 0.0;
    double fi_bound_per_photon = 0.0;   // 1/(eps+ eps-)
    bool trivial = false;               // some eps vanished; no constraint
    bool unbounded_direction = false;   // Choi stays PSD out to the bracket edge
};

// Largest t >= 0 with Choi(Lambda) +- t Choi(dLambda) >= 0, by bisection on
// the minimum eigenvalue (tolerance 1e-10, bracket [0, 1e3]).
CsResult cs_epsilons(const ChannelFamily& family);

struct QsResult {
    double f_qs = 0.0;
    Mat h_opt;                        // Hermitian, dimension = #Kraus operators
    bool infeasible = false;
    double constraint_residual = 0.0;
};

// Minimize 4 || sum K~dot_i^dag K~dot_i || over Hermitian h with
// K~dot_i = Kdot_i + i sum_j h_ij K_j, subject to sum K~dot_i^dag K_i = 0.
// The constraint is linear in h and eliminated exactly when the linear
// system is solvable; otherwise (or when forced) a quadratic penalty with
// weight ramped 1e3 -> 1e9 takes over. The remaining directions are
// searched with multi-start Nelder-Mead.
QsResult qs_optimize(const ChannelFamily& family, int starts = 20, unsigned seed = 7,
                     bool force_penalty = false);

// Analytic optimal h for the lossy channel under the e^{-i phi sigma_z/2}
// encoding; satisfies both qs constraints exactly.
struct LossQsSolution {
    double f_qs = 0.0;
    Mat h;   // diagonal 3x3
};
LossQsSolution loss_qs_analytic(double eta_a, double eta_b);

// Residuals of the two quantum-simulation constraints for a given h.
struct QsConstraintCheck {
    double zero_constraint = 0.0;     // || sum K~dot^dag K ||_max
    double identity_constraint = 0.0; // || sum K~dot^dag K~dot - (s/4) I ||_max
    double s_value = 0.0;
};
QsConstraintCheck qs_check(const ChannelFamily& family, const Mat& h);

// F_Q > N signals particle entanglement (strict, with a 1e-9 guard).
bool entanglement_witness(double f_q, int n_photons);

}  // namespace qmetro
