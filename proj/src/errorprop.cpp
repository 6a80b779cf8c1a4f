#include "qmetro/errorprop.hpp"

#include <cmath>

namespace qmetro {

void InputMoments::validate() const {
    if (var_jx < 0 || var_jz < 0) throw std::invalid_argument("variances must be nonnegative");
    if (cov_xz * cov_xz > var_jx * var_jz * (1.0 + 1e-12))
        throw std::invalid_argument("covariance violates Cauchy-Schwarz");
}

InputMoments coherent_vacuum_moments(double alpha_sq) {
    if (alpha_sq < 0) throw std::invalid_argument("intensity must be nonnegative");
    InputMoments m;
    m.jz_mean = 0.5 * alpha_sq;
    m.jx_mean = 0.0;
    m.var_jz = 0.25 * alpha_sq;
    m.var_jx = 0.25 * alpha_sq;
    m.cov_xz = 0.0;
    m.n_mean = alpha_sq;
    return m;
}

InputMoments fock_moments(int n) {
    if (n < 0) throw std::invalid_argument("photon number must be nonnegative");
    InputMoments m;
    m.jz_mean = 0.5 * n;
    m.jx_mean = 0.0;
    m.var_jz = 0.0;
    m.var_jx = 0.25 * n;
    m.cov_xz = 0.0;
    m.n_mean = n;
    return m;
}

InputMoments coherent_squeezed_moments(cxd alpha, double r) {
    InputMoments m;
    double asq = std::norm(alpha);
    double sh = std::sinh(r), sh2 = sh * sh;
    m.n_mean = asq + sh2;
    m.jz_mean = 0.5 * (asq - sh2);
    m.jx_mean = 0.0;
    m.var_jz = 0.25 * (asq + 0.5 * std::sinh(2.0 * r) * std::sinh(2.0 * r));
    m.var_jx = 0.25 * (asq * std::cosh(2.0 * r) -
                       (alpha * alpha).real() * std::sinh(2.0 * r) + sh2);
    m.cov_xz = 0.0;
    return m;
}

InputMoments half_noon_like_moments(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("needs an even photon number >= 2");
    double j = 0.5 * n;
    double jj = j * (j + 1.0);
    InputMoments m;
    m.jz_mean = 0.5;
    m.jx_mean = 0.5 * std::sqrt(jj);
    m.var_jz = 0.25;
    m.var_jx = 0.25 * (jj - 1.0);
    m.cov_xz = 0.0;
    m.n_mean = n;
    return m;
}

DecoherencePenalty DecoherencePenalty::loss(double eta) {
    if (eta <= 0 || eta > 1) throw std::invalid_argument("transmission must lie in (0,1]");
    return {Kind::loss, eta};
}

DecoherencePenalty DecoherencePenalty::dephasing(double eta) {
    if (eta <= 0 || eta > 1) throw std::invalid_argument("visibility must lie in (0,1]");
    return {Kind::dephasing, eta};
}

double DecoherencePenalty::f() const {
    switch (kind) {
        case Kind::none: return 0.0;
        case Kind::loss: return (1.0 - eta) / eta;
        case Kind::dephasing: return (1.0 - eta * eta) / (eta * eta);
    }
    return 0.0;
}

double precision(const InputMoments& m, double phi, const DecoherencePenalty& penalty) {
    m.validate();
    double s = std::sin(phi), c = std::cos(phi);
    // signal and noise rescale by the same eta, which cancels in the ratio;
    // decoherence survives only as the f(eta) <N>/4 noise floor
    double signal = std::abs(s * m.jz_mean + c * m.jx_mean);
    if (signal < 1e-300)
        throw std::invalid_argument("signal derivative vanishes at this operating point");
    double variance = penalty.f() * m.n_mean / 4.0 + c * c * m.var_jz + s * s * m.var_jx -
                      2.0 * s * c * m.cov_xz;
    return std::sqrt(std::max(variance, 0.0)) / signal;
}

double coherent_squeezed_precision(double alpha, double r, double phi,
                                   const DecoherencePenalty& penalty) {
    double asq = alpha * alpha;
    double sh2 = std::sinh(r) * std::sinh(r);
    if (std::abs(asq - sh2) < 1e-300)
        throw std::invalid_argument("signal vanishes when the two beams carry equal energy");
    return precision(coherent_squeezed_moments(alpha, r), phi, penalty);
}

double coherent_squeezed_asymptotic(double r, const DecoherencePenalty& penalty, double nbar) {
    if (nbar <= 0) throw std::invalid_argument("mean photon number must be positive");
    return std::sqrt(std::exp(-2.0 * r) + penalty.f()) / std::sqrt(nbar);
}

EnergySplit optimal_coherent_squeezed_split(double nbar, const DecoherencePenalty& penalty) {
    if (nbar <= 0) throw std::invalid_argument("mean photon number must be positive");
    // parametrize by sinh^2 r in (0, nbar); seed near sqrt(nbar)/2
    auto eval = [&](double sh2) {
        double r = std::asinh(std::sqrt(sh2));
        double alpha = std::sqrt(nbar - sh2);
        return coherent_squeezed_precision(alpha, r, kPi / 2.0, penalty);
    };
    double guess = std::min(0.5 * std::sqrt(nbar), 0.49 * nbar);
    double lo = std::max(1e-9, 0.01 * guess);
    double hi = std::min(0.999 * nbar, std::max(10.0 * guess, 1e-6));
    double best = golden_section_min(eval, lo, hi, 1e-10 * nbar);
    EnergySplit split;
    split.alpha_sq = nbar - best;
    split.r = std::asinh(std::sqrt(best));
    split.precision = eval(best);
    return split;
}

FabryPerotMap fabry_perot_map(double t, double theta) {
    if (t <= 0 || t > 1) throw std::invalid_argument("mirror transmission must lie in (0,1]");
    FabryPerotMap map;
    double s = std::sin(theta), c = std::cos(theta);
    double denom_sq = t * t + 4.0 * (1.0 - t) * s * s;
    map.phi_effective = 2.0 * std::asin(t / std::sqrt(denom_sq));
    if (std::abs(c) < 1e-14 || t == 1.0) {
        map.diverging = true;
        map.conversion = std::numeric_limits<double>::infinity();
        return map;
    }
    map.conversion = denom_sq / (4.0 * t * std::sqrt(1.0 - t) * std::abs(c));
    return map;
}

}  // namespace qmetro
