// Classical estimation layer over finite-outcome probability models: Fisher
// information, Cramer-Rao bounds, maximum likelihood, locally unbiased
// estimators, Bayesian posterior-mean and circular-cost estimators, and the
// beam-splitter transmission worked example.
#pragma once

#include "qmetro/numerics.hpp"

#include <functional>
#include <vector>

namespace qmetro {

// Finite-outcome model p_phi(x); prob and dprob must be re-entrant.
struct ProbModel {
    int outcomes = 0;
    std::function<RVec(double)> prob;
    std::function<RVec(double)> dprob;
    double param_lo = 0.0;
    double param_hi = 0.0;
    bool periodic = false;
};

// n out of N transmissions, parametrized by the transmission p in [0,1].
ProbModel binomial_p_model(int trials);
// Same data, parametrized by phase with p = sin^2(phi/2); domain (-pi, pi].
ProbModel binomial_phi_model(int trials);
// Joint model of two independent models (outcome index x2 * K1 + x1).
ProbModel product_model(const ProbModel& first, const ProbModel& second);

struct PriorSpec {
    double lo = 0.0;
    double hi = 1.0;
    std::function<double(double)> density;

    static PriorSpec flat(double lo, double hi);
};

inline double circular_cost(double estimate, double truth) {
    double s = std::sin(0.5 * (estimate - truth));
    return 4.0 * s * s;
}

// F = sum_x (dp/dphi)^2 / p. Outcomes with p and dp both below 1e-15 are
// skipped; p ~ 0 with dp != 0 throws singular_model_error.
double fisher_information(const ProbModel& model, double phi0);

// 1/(nu F); returns +inf when F == 0.
double crb(const ProbModel& model, double phi0, int repetitions = 1);

// All global maximizers of the log likelihood given per-outcome counts.
// Dense scan (2001 points) plus golden-section refinement.
std::vector<double> ml_estimate(const ProbModel& model, const std::vector<int>& counts);

// phi0 + (1/F) dln p/dphi per outcome.
RVec locally_unbiased_estimator(const ProbModel& model, double phi0);

struct MmseResult {
    double estimate = 0.0;
    double variance = 0.0;
};

// Posterior mean and variance given i.i.d. observed outcomes (may be empty).
MmseResult bayes_mmse(const ProbModel& model, const PriorSpec& prior,
                      const std::vector<int>& observations);

struct CircularEstimator {
    RVec estimates;               // one entry per outcome
    std::vector<bool> degenerate; // posterior circular mean undefined
    double average_cost = 0.0;
};

// Per-outcome posterior circular means and the prior-averaged cost for the
// 4 sin^2((est-phi)/2) cost function.
CircularEstimator bayes_circular(const ProbModel& model, const PriorSpec& prior);

// Nonzero off-diagonal factor of the optimal transmission-phase estimator:
// f(N,n) = (N-2n) (n-1/2)! (N-n-1/2)! / (n! (N-n)!), via log-gamma.
double transmission_estimator_f(int trials, int successes);

}  // namespace qmetro
