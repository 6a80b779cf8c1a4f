#include "qmetro/classical.hpp"

#include <algorithm>
#include <cmath>

namespace qmetro {

namespace {

RVec binomial_probs(int trials, double p) {
    RVec out(trials + 1);
    for (int n = 0; n <= trials; ++n) {
        double logp = log_binomial(trials, n);
        if (p > 0) logp += n * std::log(p);
        else if (n > 0) { out(n) = 0.0; continue; }
        if (p < 1) logp += (trials - n) * std::log1p(-p);
        else if (n < trials) { out(n) = 0.0; continue; }
        out(n) = std::exp(logp);
    }
    return out;
}

}  // namespace

ProbModel binomial_p_model(int trials) {
    ProbModel m;
    m.outcomes = trials + 1;
    m.param_lo = 0.0;
    m.param_hi = 1.0;
    m.prob = [trials](double p) { return binomial_probs(trials, p); };
    m.dprob = [trials](double p) {
        // product rule on C p^n (1-p)^(N-n), assembled term by term so the
        // p -> 0, 1 edges stay finite
        auto power = [](double base, int expo) {
            if (expo == 0) return 1.0;
            if (base <= 0.0) return 0.0;
            return std::exp(expo * std::log(base));
        };
        RVec out(trials + 1);
        for (int n = 0; n <= trials; ++n) {
            double coeff = std::exp(log_binomial(trials, n));
            double a = (n >= 1) ? coeff * n * power(p, n - 1) * power(1.0 - p, trials - n) : 0.0;
            double b = (n <= trials - 1)
                           ? coeff * (trials - n) * power(p, n) * power(1.0 - p, trials - n - 1)
                           : 0.0;
            out(n) = a - b;
        }
        return out;
    };
    return m;
}

ProbModel binomial_phi_model(int trials) {
    ProbModel m;
    m.outcomes = trials + 1;
    m.param_lo = -kPi;
    m.param_hi = kPi;
    m.periodic = true;
    m.prob = [trials](double phi) {
        double p = std::sin(0.5 * phi);
        return binomial_probs(trials, p * p);
    };
    m.dprob = [trials](double phi) {
        // chain rule through p = sin^2(phi/2), dp/dphi = sin(phi)/2
        double s = std::sin(0.5 * phi);
        double p = s * s;
        auto base = binomial_p_model(trials);
        RVec dp = base.dprob(p);
        return RVec(dp * (0.5 * std::sin(phi)));
    };
    return m;
}

ProbModel product_model(const ProbModel& first, const ProbModel& second) {
    ProbModel m;
    m.outcomes = first.outcomes * second.outcomes;
    m.param_lo = std::max(first.param_lo, second.param_lo);
    m.param_hi = std::min(first.param_hi, second.param_hi);
    m.periodic = first.periodic && second.periodic;
    const int k1 = first.outcomes;
    m.prob = [first, second, k1](double phi) {
        RVec p1 = first.prob(phi), p2 = second.prob(phi);
        RVec out(p1.size() * p2.size());
        for (Eigen::Index j = 0; j < p2.size(); ++j)
            for (Eigen::Index i = 0; i < p1.size(); ++i)
                out(j * k1 + i) = p1(i) * p2(j);
        return out;
    };
    m.dprob = [first, second, k1](double phi) {
        RVec p1 = first.prob(phi), p2 = second.prob(phi);
        RVec d1 = first.dprob(phi), d2 = second.dprob(phi);
        RVec out(p1.size() * p2.size());
        for (Eigen::Index j = 0; j < p2.size(); ++j)
            for (Eigen::Index i = 0; i < p1.size(); ++i)
                out(j * k1 + i) = d1(i) * p2(j) + p1(i) * d2(j);
        return out;
    };
    return m;
}

PriorSpec PriorSpec::flat(double lo, double hi) {
    PriorSpec spec;
    spec.lo = lo;
    spec.hi = hi;
    double density = 1.0 / (hi - lo);
    spec.density = [density](double) { return density; };
    return spec;
}

double fisher_information(const ProbModel& model, double phi0) {
    RVec p = model.prob(phi0);
    RVec dp = model.dprob(phi0);
    double f = 0.0;
    for (int x = 0; x < model.outcomes; ++x) {
        if (p(x) < 1e-15 && std::abs(dp(x)) < 1e-15) continue;
        if (p(x) <= 0.0)
            throw singular_model_error("outcome with zero probability but nonzero derivative");
        f += dp(x) * dp(x) / p(x);
    }
    return f;
}

double crb(const ProbModel& model, double phi0, int repetitions) {
    double f = fisher_information(model, phi0);
    if (f <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (repetitions * f);
}

namespace {

double log_likelihood(const ProbModel& model, const std::vector<int>& counts, double phi) {
    RVec p = model.prob(phi);
    double ll = 0.0;
    for (size_t x = 0; x < counts.size(); ++x) {
        if (counts[x] == 0) continue;
        if (p(static_cast<Eigen::Index>(x)) <= 0.0) return -std::numeric_limits<double>::infinity();
        ll += counts[x] * std::log(p(static_cast<Eigen::Index>(x)));
    }
    return ll;
}

}  // namespace

std::vector<double> ml_estimate(const ProbModel& model, const std::vector<int>& counts) {
    if (counts.size() != static_cast<size_t>(model.outcomes))
        throw std::invalid_argument("counts size must equal outcome count");
    long total = 0;
    for (int c : counts) {
        if (c < 0) throw std::invalid_argument("counts must be nonnegative");
        total += c;
    }
    if (total == 0) throw std::invalid_argument("need at least one observation");

    const int grid = 2001;
    const double lo = model.param_lo, hi = model.param_hi;
    std::vector<double> ll(grid);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        double phi = lo + (hi - lo) * i / (grid - 1);
        ll[i] = log_likelihood(model, counts, phi);
        best = std::max(best, ll[i]);
    }
    if (!std::isfinite(best))
        throw infeasible_data_error("likelihood vanishes on the whole parameter domain");

    // refine every local maximum near the global level, then deduplicate
    auto score = [&](double phi) {
        RVec p = model.prob(phi);
        RVec dp = model.dprob(phi);
        double g = 0.0;
        for (size_t x = 0; x < counts.size(); ++x) {
            if (counts[x] == 0) continue;
            auto xi = static_cast<Eigen::Index>(x);
            if (p(xi) <= 0.0) return std::numeric_limits<double>::quiet_NaN();
            g += counts[x] * dp(xi) / p(xi);
        }
        return g;
    };
    std::vector<double> maximizers;
    for (int i = 0; i < grid; ++i) {
        bool local_max = (i == 0 || ll[i] >= ll[i - 1]) && (i == grid - 1 || ll[i] >= ll[i + 1]);
        if (!local_max || ll[i] < best - 1e-6 * std::max(1.0, std::abs(best)) - 1e-9) continue;
        double a = lo + (hi - lo) * std::max(0, i - 1) / (grid - 1);
        double b = lo + (hi - lo) * std::min(grid - 1, i + 1) / (grid - 1);
        double x = golden_section_min(
            [&](double phi) { return -log_likelihood(model, counts, phi); }, a, b, 1e-12);
        // the likelihood is numerically flat at machine precision around the
        // peak; a sign change of the score pins the maximizer much tighter
        double ga = score(a), gb = score(b);
        if (std::isfinite(ga) && std::isfinite(gb) && ga > 0 && gb < 0) {
            double la = a, lb = b;
            for (int it = 0; it < 100 && lb - la > 1e-15 * std::max(1.0, std::abs(lb)); ++it) {
                double mid = 0.5 * (la + lb);
                double gm = score(mid);
                if (!std::isfinite(gm)) break;
                if (gm > 0) la = mid;
                else lb = mid;
            }
            x = 0.5 * (la + lb);
        }
        maximizers.push_back(x);
    }
    double best_refined = -std::numeric_limits<double>::infinity();
    for (double x : maximizers)
        best_refined = std::max(best_refined, log_likelihood(model, counts, x));
    std::vector<double> out;
    for (double x : maximizers) {
        if (log_likelihood(model, counts, x) < best_refined - 1e-9) continue;
        bool dup = false;
        for (double y : out)
            if (std::abs(x - y) < 1e-7 * std::max(1.0, hi - lo)) dup = true;
        if (!dup) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

RVec locally_unbiased_estimator(const ProbModel& model, double phi0) {
    double f = fisher_information(model, phi0);
    if (f <= 0.0) throw singular_model_error("Fisher information vanishes at phi0");
    RVec p = model.prob(phi0);
    RVec dp = model.dprob(phi0);
    RVec est(model.outcomes);
    for (int x = 0; x < model.outcomes; ++x) {
        double score = (p(x) > 1e-15) ? dp(x) / p(x) : 0.0;
        est(x) = phi0 + score / f;
    }
    return est;
}

MmseResult bayes_mmse(const ProbModel& model, const PriorSpec& prior,
                      const std::vector<int>& observations) {
    auto posterior_unnorm = [&](double phi) {
        double val = prior.density(phi);
        if (val <= 0.0) return 0.0;
        if (!observations.empty()) {
            RVec p = model.prob(phi);
            for (int x : observations) {
                val *= p(x);
                if (val == 0.0) break;
            }
        }
        return val;
    };
    double z = adaptive_simpson(posterior_unnorm, prior.lo, prior.hi, 1e-13);
    if (z <= 0.0) throw infeasible_data_error("posterior has zero mass");
    double mean = adaptive_simpson([&](double phi) { return phi * posterior_unnorm(phi); },
                                   prior.lo, prior.hi, 1e-13) / z;
    double second = adaptive_simpson(
        [&](double phi) { return (phi - mean) * (phi - mean) * posterior_unnorm(phi); },
        prior.lo, prior.hi, 1e-13) / z;
    return {mean, second};
}

CircularEstimator bayes_circular(const ProbModel& model, const PriorSpec& prior) {
    CircularEstimator result;
    result.estimates = RVec::Zero(model.outcomes);
    result.degenerate.assign(model.outcomes, false);

    std::vector<double> joint(model.outcomes, 0.0);
    for (int x = 0; x < model.outcomes; ++x) {
        auto px = [&](double phi) { return prior.density(phi) * model.prob(phi)(x); };
        double s = adaptive_simpson([&](double phi) { return px(phi) * std::sin(phi); },
                                    prior.lo, prior.hi, 1e-13);
        double c = adaptive_simpson([&](double phi) { return px(phi) * std::cos(phi); },
                                    prior.lo, prior.hi, 1e-13);
        joint[x] = adaptive_simpson(px, prior.lo, prior.hi, 1e-13);
        double resultant = std::hypot(s, c);
        if (resultant < 1e-12 * std::max(joint[x], 1e-30)) {
            result.degenerate[x] = true;
            result.estimates(x) = 0.0;
        } else {
            result.estimates(x) = std::atan2(s, c);
        }
    }
    double cost = 0.0;
    for (int x = 0; x < model.outcomes; ++x) {
        double est = result.estimates(x);
        cost += adaptive_simpson(
            [&](double phi) {
                return prior.density(phi) * model.prob(phi)(x) * circular_cost(est, phi);
            },
            prior.lo, prior.hi, 1e-13);
    }
    result.average_cost = cost;
    return result;
}

double transmission_estimator_f(int trials, int successes) {
    return (trials - 2.0 * successes) *
           std::exp(std::lgamma(successes + 0.5) + std::lgamma(trials - successes + 0.5) -
                    log_factorial(successes) - log_factorial(trials - successes));
}

}  // namespace qmetro
