// Brute-force reference in the distinguishable-particle picture: symmetrized
// states, tensor-power channels, and the exact QFI on the full d^N space.
// Oracle code path only; density matrices are stored dense.
#pragma once

#include "qmetro/channels.hpp"
#include "qmetro/fock.hpp"
#include "qmetro/numerics.hpp"

namespace qmetro {

struct ParticleState {
    int n_particles = 0;
    int local_dim = 2;
    Mat rho;   // dimension local_dim^n_particles

    int dim() const { return static_cast<int>(rho.rows()); }
};

inline constexpr int kParticleCapQubit = 10;
inline constexpr int kParticleCapQutrit = 6;

// Pure symmetrized state of a two-mode N-photon input (local dimension 2;
// |a> = mode a occupation).
ParticleState symmetrize(const FockStateN& state);

// Symmetrized amplitude vector, for pure-state checks.
Vec symmetrize_vector(const FockStateN& state);

// channel^(tensor N); output local dimension follows the channel.
ParticleState apply_iid(const KrausChannel& channel, const ParticleState& state);

// e^{-i phi/2 sigma_z} per particle on {a la b} (identity on any extra levels).
ParticleState apply_phase_rotation(const ParticleState& state, double phi);

// Exact QFI of a particle-picture family from the state and its derivative.
double oracle_qfi(const ParticleState& state, const Mat& drho);

// QFI of Lambda^(x)N (e^{-i phi Jz} rho e^{i phi Jz}) at phi = 0 computed
// entirely in the particle picture. The channel may be 2->2 or 2->3.
double particle_channel_qfi(const FockStateN& input, const KrausChannel& channel);

// Exhaustive maximization of eval over real nonnegative coefficient vectors
// on the simplex grid (resolution steps per unit), refined locally.
struct ProbeSearchResult {
    FockStateN state;
    double value = 0.0;
};
ProbeSearchResult best_real_probe(int n_photons,
                                  const std::function<double(const FockStateN&)>& eval,
                                  int grid_steps = 50);

}  // namespace qmetro
