#include "qmetro/bayes.hpp"

#include <cmath>

namespace qmetro {

CovariantCostMatrix build_cost_matrix_ideal(int n) {
    if (n < 1) throw std::invalid_argument("cost matrix needs N >= 1");
    CovariantCostMatrix a;
    a.n_photons = n;
    a.offdiag = RVec::Ones(n);
    a.model = CostModel::ideal;
    return a;
}

namespace {

// sum_l sqrt(b(m,l) b(m',l)) for one arm with binomial deletion weights,
// b(m,l) = C(m,l) eta^(m-l) (1-eta)^l; log-space for large photon numbers.
double arm_overlap(int m, int m_prime, double eta) {
    if (eta >= 1.0) return 1.0;
    if (eta <= 0.0) return 0.0;
    const int lmax = std::min(m, m_prime);
    const double log_eta = std::log(eta), log_loss = std::log1p(-eta);
    double total = 0.0;
    for (int l = 0; l <= lmax; ++l) {
        double lg = 0.5 * (log_binomial(m, l) + log_binomial(m_prime, l)) +
                    0.5 * ((m - l) + (m_prime - l)) * log_eta + l * log_loss;
        total += std::exp(lg);
    }
    return total;
}

}  // namespace

CovariantCostMatrix build_cost_matrix_loss(int n, const LossParams& params) {
    if (n < 1) throw std::invalid_argument("cost matrix needs N >= 1");
    CovariantCostMatrix a;
    a.n_photons = n;
    a.model = CostModel::loss;
    a.eta_a = params.eta_a;
    a.eta_b = params.eta_b;
    a.offdiag = RVec::Zero(n);
    // A_{n,n-1} factorizes into independent per-arm deletion overlaps
    std::vector<double> entries(n);
    parallel_for(n, [&](int i) {
        int k = i + 1;   // row index n = 1..N
        entries[i] = arm_overlap(k, k - 1, params.eta_a) *
                     arm_overlap(n - k, n - k + 1, params.eta_b);
    });
    for (int i = 0; i < n; ++i) a.offdiag(i) = entries[i];
    return a;
}

CovariantCostMatrix build_cost_matrix_phase_diffusion(int n, double gamma) {
    if (n < 1) throw std::invalid_argument("cost matrix needs N >= 1");
    if (gamma < 0) throw std::invalid_argument("phase variance must be nonnegative");
    CovariantCostMatrix a;
    a.n_photons = n;
    a.model = CostModel::phase_diffusion;
    a.gamma = gamma;
    a.offdiag = RVec::Constant(n, std::exp(-0.5 * gamma));
    return a;
}

OptimalBayesState optimal_state_and_cost(const CovariantCostMatrix& a) {
    RVec diag = RVec::Zero(a.dim());
    auto pair = tridiagonal_top_eigenpair(diag, a.offdiag);
    RVec v = pair.vector;
    for (int i = 0; i < v.size(); ++i) v(i) = std::abs(v(i));
    v /= v.norm();
    Vec c = v.cast<cxd>();
    return {FockStateN(a.n_photons, std::move(c)), 2.0 - pair.value, pair.value};
}

double cost_for_state(const CovariantCostMatrix& a, const FockStateN& state) {
    if (state.n_total != a.n_photons)
        throw std::invalid_argument("state and cost matrix photon numbers differ");
    double overlap = 0.0;
    for (int n = 1; n <= a.n_photons; ++n)
        overlap += 2.0 * a.offdiag(n - 1) * std::abs(state.coeffs(n)) *
                   std::abs(state.coeffs(n - 1));
    return 2.0 - overlap;
}

double lossy_lower_bound(const CovariantCostMatrix& a) {
    if (a.model != CostModel::loss)
        throw std::invalid_argument("lower bound needs a loss-tagged cost matrix");
    double a_max = a.offdiag.maxCoeff();
    return 2.0 * (1.0 - a_max * std::cos(kPi / (a.n_photons + 2)));
}

namespace {

// <e|rho|e> with |e> = sum_n exp(i xi_n)|n>, phases matched to the state
// (for the loss blocks the plain all-ones seed is used).
double seed_overlap(const Mat& rho, const Vec& seed) {
    return (seed.adjoint() * rho * seed)(0, 0).real();
}

Vec plain_seed(int dim) { return Vec::Ones(dim); }

Vec phase_matched_seed(const FockStateN& state) {
    Vec seed(state.dim());
    for (int n = 0; n < state.dim(); ++n) {
        cxd c = state.coeffs(n);
        seed(n) = (std::abs(c) > 1e-15) ? c / std::abs(c) : cxd(1.0, 0.0);
    }
    return seed;
}

}  // namespace

double direct_cost_integral(const FockStateN& state, const CovariantCostMatrix& model) {
    if (state.n_total != model.n_photons)
        throw std::invalid_argument("state and model photon numbers differ");
    const int n = state.n_total;
    // integrands are trigonometric polynomials of degree <= N+1, so a uniform
    // grid with > 2N+2 points integrates them exactly
    const int points = 2 * n + 8;
    double acc = 0.0;
    for (int k = 0; k < points; ++k) {
        double phi = 2.0 * kPi * k / points;
        double s = std::sin(0.5 * phi);
        double cost_weight = 4.0 * s * s;
        double overlap = 0.0;
        switch (model.model) {
            case CostModel::ideal: {
                Vec rotated(state.dim());
                for (int m = 0; m <= n; ++m)
                    rotated(m) = state.coeffs(m) * std::exp(cxd(0.0, -phi * m));
                Vec seed = phase_matched_seed(state);
                overlap = std::norm(seed.dot(rotated));
                break;
            }
            case CostModel::loss: {
                auto blocks = loss_output_state(state, phi, LossParams(model.eta_a, model.eta_b));
                for (const auto& block : blocks.blocks)
                    overlap += block.weight *
                               seed_overlap(block.rho, plain_seed(block.n_surviving + 1));
                break;
            }
            case CostModel::phase_diffusion: {
                Mat rho = phase_diffusion_apply(state, PhaseDiffusionParams(model.gamma, phi));
                overlap = seed_overlap(rho, phase_matched_seed(state));
                break;
            }
        }
        acc += cost_weight * overlap;
    }
    return acc / points;
}

}  // namespace qmetro
