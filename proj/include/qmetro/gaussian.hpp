// Gaussian two-mode optics in the x = a^dag + a, p = i(a^dag - a) convention
// (vacuum covariance = identity): symplectic elements, mean photon number,
// the pure-state covariance QFI, and Fock-basis expansion bridges.
#pragma once

#include "qmetro/fock.hpp"
#include "qmetro/numerics.hpp"

namespace qmetro {

struct GaussianState {
    int modes = 0;
    RVec mean;   // (x1, p1, ..., xM, pM)
    RMat cov;

    static GaussianState vacuum(int modes);
};

struct SqueezeParams {
    double r = 0.0;       // squeezing factor >= 0
    double theta = 0.0;   // squeezing angle
    cxd alpha{0.0, 0.0};  // displacement
};

// symplectic building blocks (Heisenberg transport matrices)
RMat phase_shift_symplectic(double phi);                    // single mode
RMat squeeze_symplectic(double r, double theta);            // single mode
RMat beam_splitter_symplectic(double transmission);         // modes (0,1)

GaussianState apply_phase_shift(const GaussianState& in, double phi, int mode);
GaussianState apply_squeeze(const GaussianState& in, double r, double theta, int mode);
GaussianState apply_displace(const GaussianState& in, cxd alpha, int mode);
// Mach-Zehnder input splitter convention: a' = (a - i b)/sqrt(2) at T = 1/2.
GaussianState apply_beam_splitter(const GaussianState& in, double transmission,
                                  int mode_1, int mode_2);

double mean_photon_number(const GaussianState& state);

// F = dz^T sigma^-1 dz + (1/4) tr((dsigma sigma^-1)^2) for pure states.
// The trace coefficient is pinned by the coherent/squeezed limits and the
// Fock-truncation cross-check.
double gaussian_pure_qfi(const GaussianState& state, const RVec& dmean, const RMat& dcov);

// Generator G of the differential phase e^{-i phi Jz} on two modes:
// dmean = G mean, dcov = G cov + cov G^T.
RMat differential_phase_generator();
// Generator of e^{-i phi Jy} (the full Mach-Zehnder rotation).
RMat mz_phase_generator();

double gaussian_pure_qfi_for_generator(const GaussianState& state, const RMat& generator);

// --- Fock expansions -------------------------------------------------------

struct FockAmplitudes {
    Vec amplitudes;
    double discarded_norm = 0.0;
};

// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!)
FockAmplitudes coherent_fock_amplitudes(cxd alpha, int cutoff);
// Even components only; H_n(0) values enter through (2m)!/m! factors.
FockAmplitudes squeezed_vacuum_fock_amplitudes(double r, double theta, int cutoff);
// |n,n> amplitudes (-e^{i theta} tanh xi)^n / cosh xi on the diagonal grid.
TwoModeGrid twin_beam_fock_grid(double xi, double theta, int cutoff);

// Cutoffs large enough to keep the discarded norm below 1e-10.
int coherent_auto_cutoff(cxd alpha);
int squeezed_auto_cutoff(double r);

}  // namespace qmetro
