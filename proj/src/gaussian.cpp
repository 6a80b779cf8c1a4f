#include "qmetro/gaussian.hpp"

#include <cmath>

namespace qmetro {

GaussianState GaussianState::vacuum(int modes) {
    GaussianState s;
    s.modes = modes;
    s.mean = RVec::Zero(2 * modes);
    s.cov = RMat::Identity(2 * modes, 2 * modes);
    return s;
}

RMat phase_shift_symplectic(double phi) {
    RMat s(2, 2);
    s << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    return s;
}

RMat squeeze_symplectic(double r, double theta) {
    // minimal variance e^{-2r} along the quadrature direction theta/2
    RMat rot_half = phase_shift_symplectic(-0.5 * theta);
    RMat diag = RMat::Zero(2, 2);
    diag(0, 0) = std::exp(-r);
    diag(1, 1) = std::exp(r);
    return rot_half * diag * rot_half.transpose();
}

RMat beam_splitter_symplectic(double t_power) {
    if (t_power < 0 || t_power > 1)
        throw std::invalid_argument("transmission must lie in [0,1]");
    double t = std::sqrt(t_power), r = std::sqrt(1.0 - t_power);
    RMat s = RMat::Zero(4, 4);
    // a' = sqrt(T) a - i sqrt(1-T) b, b' = -i sqrt(1-T) a + sqrt(T) b
    s(0, 0) = t; s(0, 3) = r;
    s(1, 1) = t; s(1, 2) = -r;
    s(2, 1) = r; s(2, 2) = t;
    s(3, 0) = -r; s(3, 3) = t;
    return s;
}

namespace {

void check_mode(const GaussianState& state, int mode) {
    if (mode < 0 || mode >= state.modes) throw std::invalid_argument("mode index out of range");
}

GaussianState apply_single_mode(const GaussianState& in, const RMat& s2, int mode) {
    check_mode(in, mode);
    RMat s = RMat::Identity(2 * in.modes, 2 * in.modes);
    s.block(2 * mode, 2 * mode, 2, 2) = s2;
    GaussianState out = in;
    out.mean = s * in.mean;
    out.cov = s * in.cov * s.transpose();
    return out;
}

}  // namespace

GaussianState apply_phase_shift(const GaussianState& in, double phi, int mode) {
    return apply_single_mode(in, phase_shift_symplectic(phi), mode);
}

GaussianState apply_squeeze(const GaussianState& in, double r, double theta, int mode) {
    return apply_single_mode(in, squeeze_symplectic(r, theta), mode);
}

GaussianState apply_displace(const GaussianState& in, cxd alpha, int mode) {
    check_mode(in, mode);
    GaussianState out = in;
    out.mean(2 * mode) += 2.0 * alpha.real();
    out.mean(2 * mode + 1) += 2.0 * alpha.imag();
    return out;
}

GaussianState apply_beam_splitter(const GaussianState& in, double transmission,
                                  int mode_1, int mode_2) {
    check_mode(in, mode_1);
    check_mode(in, mode_2);
    if (mode_1 == mode_2) throw std::invalid_argument("beam splitter needs two distinct modes");
    RMat s4 = beam_splitter_symplectic(transmission);
    RMat s = RMat::Identity(2 * in.modes, 2 * in.modes);
    int idx[2] = {mode_1, mode_2};
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj)
            s.block(2 * idx[bi], 2 * idx[bj], 2, 2) = s4.block(2 * bi, 2 * bj, 2, 2);
    GaussianState out = in;
    out.mean = s * in.mean;
    out.cov = s * in.cov * s.transpose();
    return out;
}

double mean_photon_number(const GaussianState& state) {
    double total = 0.0;
    for (int m = 0; m < state.modes; ++m) {
        double mean_sq = state.mean(2 * m) * state.mean(2 * m) +
                         state.mean(2 * m + 1) * state.mean(2 * m + 1);
        double tr = state.cov(2 * m, 2 * m) + state.cov(2 * m + 1, 2 * m + 1);
        total += mean_sq / 4.0 + (tr - 2.0) / 4.0;
    }
    return total;
}

double gaussian_pure_qfi(const GaussianState& state, const RVec& dmean, const RMat& dcov) {
    Eigen::FullPivLU<RMat> lu(state.cov);
    if (!lu.isInvertible()) throw std::invalid_argument("singular covariance matrix");
    RMat inv = lu.inverse();
    double mean_term = dmean.dot(inv * dmean);
    RMat m = dcov * inv;
    double trace_term = 0.25 * (m * m).trace();
    return mean_term + trace_term;
}

RMat differential_phase_generator() {
    // d/dphi at 0 of the per-mode rotations (+phi/2 on a, -phi/2 on b)
    RMat g = RMat::Zero(4, 4);
    g(0, 1) = 0.5; g(1, 0) = -0.5;
    g(2, 3) = -0.5; g(3, 2) = 0.5;
    return g;
}

RMat mz_phase_generator() {
    // d/dphi of the Jy rotation: a -> a cos(phi/2) - b sin(phi/2), identical on x and p
    RMat g = RMat::Zero(4, 4);
    g(0, 2) = -0.5; g(1, 3) = -0.5;
    g(2, 0) = 0.5; g(3, 1) = 0.5;
    return g;
}

double gaussian_pure_qfi_for_generator(const GaussianState& state, const RMat& g) {
    RVec dmean = g * state.mean;
    RMat dcov = g * state.cov + state.cov * g.transpose();
    return gaussian_pure_qfi(state, dmean, dcov);
}

FockAmplitudes coherent_fock_amplitudes(cxd alpha, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    FockAmplitudes out;
    out.amplitudes = Vec::Zero(cutoff + 1);
    double log_norm = -0.5 * std::norm(alpha);
    double mod = std::abs(alpha);
    double arg = std::arg(alpha);
    double captured = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        double log_mod = log_norm + n * std::log(std::max(mod, 1e-300)) - 0.5 * log_factorial(n);
        if (mod == 0.0) log_mod = (n == 0) ? 0.0 : -std::numeric_limits<double>::infinity();
        double amp = std::exp(log_mod);
        out.amplitudes(n) = amp * std::exp(cxd(0.0, n * arg));
        captured += amp * amp;
    }
    out.discarded_norm = std::max(0.0, 1.0 - captured);
    return out;
}

FockAmplitudes squeezed_vacuum_fock_amplitudes(double r, double theta, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    FockAmplitudes out;
    out.amplitudes = Vec::Zero(cutoff + 1);
    double t = std::tanh(std::abs(r));
    double captured = 0.0;
    for (int m = 0; 2 * m <= cutoff; ++m) {
        // c_{2m} = (-1)^m sqrt((2m)!)/m! (tanh r / 2)^m e^{i m theta} / sqrt(cosh r)
        double log_mod = 0.5 * log_factorial(2 * m) - log_factorial(m) +
                         m * std::log(std::max(t / 2.0, 1e-300)) -
                         0.5 * std::log(std::cosh(r));
        if (t == 0.0) log_mod = (m == 0) ? 0.0 : -std::numeric_limits<double>::infinity();
        double amp = std::exp(log_mod);
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        out.amplitudes(2 * m) = sign * amp * std::exp(cxd(0.0, m * theta));
        captured += amp * amp;
    }
    out.discarded_norm = std::max(0.0, 1.0 - captured);
    return out;
}

TwoModeGrid twin_beam_fock_grid(double xi, double theta, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    TwoModeGrid grid;
    grid.amp = Mat::Zero(cutoff + 1, cutoff + 1);
    double t = std::tanh(xi);
    double captured = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        double mod = std::exp(n * std::log(std::max(std::abs(t), 1e-300))) / std::cosh(xi);
        if (t == 0.0 && n > 0) mod = 0.0;
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        grid.amp(n, n) = sign * mod * std::exp(cxd(0.0, n * theta));
        captured += mod * mod;
    }
    grid.discarded_norm = std::max(0.0, 1.0 - captured);
    return grid;
}

int coherent_auto_cutoff(cxd alpha) {
    double mean = std::norm(alpha);
    int cutoff = static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean + 1.0) + 20.0));
    for (;;) {
        auto amp = coherent_fock_amplitudes(alpha, cutoff);
        if (amp.discarded_norm < 1e-10) return cutoff;
        cutoff *= 2;
        if (cutoff > 100000) throw truncation_error(amp.discarded_norm);
    }
}

int squeezed_auto_cutoff(double r) {
    int cutoff = static_cast<int>(std::ceil(40 + 30 * std::abs(r) * std::abs(r) + 60 * std::abs(r)));
    for (;;) {
        auto amp = squeezed_vacuum_fock_amplitudes(r, 0.0, cutoff);
        if (amp.discarded_norm < 1e-10) return cutoff;
        cutoff *= 2;
        if (cutoff > 100000) throw truncation_error(amp.discarded_norm);
    }
}

}  // namespace qmetro
