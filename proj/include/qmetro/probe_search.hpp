// Numeric optimization of N-photon probe states for the lossy interferometer:
// QFI maximization over real nonnegative coefficient vectors, seeded from the
// Bayesian optimum, the sine and the balanced states plus coarse simplex
// samples, refined with Nelder-Mead.
#pragma once

#include "qmetro/channels.hpp"
#include "qmetro/fock.hpp"

namespace qmetro {

struct LossProbeResult {
    FockStateN state;
    double qfi = 0.0;
    double delta_phi = 0.0;
};

double loss_probe_qfi(const FockStateN& state, const LossParams& params);

LossProbeResult optimal_loss_probe(int n_photons, const LossParams& params,
                                   unsigned seed = 11);

}  // namespace qmetro
