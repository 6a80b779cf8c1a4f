#include "qmetro/probe_search.hpp"

#include "qmetro/bayes.hpp"
#include "qmetro/qfi.hpp"

#include <cmath>
#include <random>

namespace qmetro {

double loss_probe_qfi(const FockStateN& state, const LossParams& params) {
    return block_phase_qfi(loss_output_state(state, 0.0, params));
}

LossProbeResult optimal_loss_probe(int n_photons, const LossParams& params, unsigned seed) {
    const int slots = n_photons + 1;
    auto eval_coeffs = [&](const RVec& x) {
        double norm = x.norm();
        if (norm < 1e-12) return -1e9;
        Vec c(slots);
        for (int i = 0; i < slots; ++i) c(i) = std::abs(x(i)) / norm;
        return loss_probe_qfi(FockStateN(n_photons, c), params);
    };

    std::vector<RVec> seeds;
    auto push_state = [&](const FockStateN& s) {
        RVec x(slots);
        for (int i = 0; i < slots; ++i) x(i) = std::abs(s.coeffs(i));
        seeds.push_back(x);
    };
    push_state(optimal_state_and_cost(build_cost_matrix_loss(n_photons, params)).state);
    push_state(make_named_state(NamedState::sine, n_photons));
    if (n_photons <= 12) {
        push_state(make_named_state(NamedState::balanced, n_photons));
        push_state(make_named_state(NamedState::noon, n_photons));
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int s = 0; s < 4; ++s) {
            RVec x(slots);
            for (int i = 0; i < slots; ++i) x(i) = uni(rng);
            seeds.push_back(x);
        }
    }

    const int budget = (n_photons <= 12) ? 2200 : 3200;
    RVec best_x = seeds.front();
    double best = eval_coeffs(best_x);
    for (const auto& s : seeds) {
        auto res = nelder_mead([&](const RVec& x) { return -eval_coeffs(x); }, s, 0.08,
                               1e-11, budget);
        // polish pass with a tighter simplex
        res = nelder_mead([&](const RVec& x) { return -eval_coeffs(x); }, res.x, 0.01,
                          1e-12, budget / 2);
        if (-res.value > best) {
            best = -res.value;
            best_x = res.x;
        }
    }

    double norm = best_x.norm();
    Vec c(slots);
    for (int i = 0; i < slots; ++i) c(i) = std::abs(best_x(i)) / norm;
    FockStateN state(n_photons, c);
    double qfi = loss_probe_qfi(state, params);
    return {state, qfi, qfi > 0 ? 1.0 / std::sqrt(qfi) : std::numeric_limits<double>::infinity()};
}

}  // namespace qmetro
