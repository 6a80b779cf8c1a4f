// Decoherence models: photonic loss in the mode and particle pictures, local
// dephasing (imperfect visibility), Gaussian phase diffusion, and Kraus/Choi
// utilities.
#pragma once

#include "qmetro/fock.hpp"
#include "qmetro/numerics.hpp"

#include <vector>

namespace qmetro {

struct KrausChannel {
    std::vector<Mat> ops;

    int in_dim() const { return ops.empty() ? 0 : static_cast<int>(ops.front().cols()); }
    int out_dim() const { return ops.empty() ? 0 : static_cast<int>(ops.front().rows()); }
    // max |sum K^dag K - 1|
    double completeness_residual() const;
};

Mat apply_channel(const KrausChannel& channel, const Mat& rho);

struct LossParams {
    double eta_a = 1.0;
    double eta_b = 1.0;

    LossParams(double a, double b) : eta_a(a), eta_b(b) {
        if (a < 0 || a > 1 || b < 0 || b > 1)
            throw std::invalid_argument("transmissions must lie in [0,1]");
    }
};

struct PhaseDiffusionParams {
    double gamma = 0.0;   // phase variance
    double phi = 0.0;     // mean phase

    PhaseDiffusionParams(double g, double p) : gamma(g), phi(p) {
        if (g < 0) throw std::invalid_argument("phase variance must be nonnegative");
    }
};

// Mixture of orthogonal surviving-photon-number blocks after loss.
struct BlockDiagonalState {
    struct Block {
        int n_surviving = 0;
        double weight = 0.0;
        Mat rho;   // unit trace, dimension n_surviving + 1
    };
    std::vector<Block> blocks;
    double dropped_weight = 0.0;   // total weight of blocks below the 1e-14 cut

    double total_weight() const;
};

// Output of the lossy interferometer on an N-photon pure input with phase phi
// already imprinted (c_n picks up e^{-i n phi}).
BlockDiagonalState loss_output_state(const FockStateN& state, double phi,
                                     const LossParams& params);

// Same loss map acting on an arbitrary N-photon density matrix.
BlockDiagonalState loss_apply_density(const Mat& rho, int n_photons,
                                      const LossParams& params);

// Single-photon loss channel in the particle picture: qubit {a,b} into
// qutrit {a,b,vac}; three Kraus operators.
KrausChannel loss_kraus_particle(const LossParams& params);

// Local dephasing with visibility eta: K1 = sqrt((1+eta)/2) 1, K2 = sqrt((1-eta)/2) sigma_z.
KrausChannel dephasing_kraus(double eta);

// rho_nm = c_n conj(c_m) exp(-Gamma (n-m)^2 / 2) exp(-i (n-m) phi)
Mat phase_diffusion_apply(const FockStateN& state, const PhaseDiffusionParams& params);

// Choi operator (Lambda x Id)|I><I| with unnormalized |I>; trace = input dim.
Mat choi_matrix(const KrausChannel& channel);

}  // namespace qmetro
