// Bayesian covariant-measurement optimization for the 4sin^2 cost with a flat
// prior: first-off-diagonal cost matrices for the ideal, lossy and
// phase-diffused interferometer, the minimal average cost 2 - lambda_max, the
// analytic lossy lower bound, and a direct quadrature oracle.
#pragma once

#include "qmetro/channels.hpp"
#include "qmetro/fock.hpp"
#include "qmetro/numerics.hpp"

namespace qmetro {

enum class CostModel { ideal, loss, phase_diffusion };

struct CovariantCostMatrix {
    int n_photons = 0;
    RVec offdiag;          // A_{n,n-1}, n = 1..N
    CostModel model = CostModel::ideal;
    double eta_a = 1.0, eta_b = 1.0;
    double gamma = 0.0;

    int dim() const { return n_photons + 1; }
};

CovariantCostMatrix build_cost_matrix_ideal(int n_photons);
CovariantCostMatrix build_cost_matrix_loss(int n_photons, const LossParams& params);
CovariantCostMatrix build_cost_matrix_phase_diffusion(int n_photons, double gamma);

struct OptimalBayesState {
    FockStateN state;
    double min_cost = 0.0;
    double lambda_max = 0.0;
};

// Top eigenpair of the tridiagonal A; eigenvector sign-normalized nonnegative.
OptimalBayesState optimal_state_and_cost(const CovariantCostMatrix& a);

// 2 - c^T A c with |c_n| moduli (measurement phases absorbed).
double cost_for_state(const CovariantCostMatrix& a, const FockStateN& state);

// 2 [1 - A_max cos(pi/(N+2))]; requires loss provenance.
double lossy_lower_bound(const CovariantCostMatrix& a);

// Quadrature of the covariant average cost with the photon-number-block seed;
// independent oracle for cost_for_state.
double direct_cost_integral(const FockStateN& state, const CovariantCostMatrix& model);

}  // namespace qmetro
