#include "qmetro/fock.hpp"

#include <cmath>

namespace qmetro {

FockStateN::FockStateN(int n, Vec c) : n_total(n), coeffs(std::move(c)) {
    if (n_total < 0) throw std::invalid_argument("photon number must be nonnegative");
    if (coeffs.size() != n_total + 1)
        throw std::invalid_argument("coefficient vector must have length N+1");
    double norm = coeffs.squaredNorm();
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("state coefficients must be normalized");
}

FockStateN make_named_state(NamedState kind, int n) {
    if (n < 0) throw std::invalid_argument("photon number must be nonnegative");
    Vec c = Vec::Zero(n + 1);
    switch (kind) {
        case NamedState::noon:
            c(0) = 1.0 / std::sqrt(2.0);
            c(n) = 1.0 / std::sqrt(2.0);
            if (n == 0) c(0) = 1.0;
            break;
        case NamedState::sine: {
            for (int k = 0; k <= n; ++k)
                c(k) = std::sqrt(2.0 / (2.0 + n)) * std::sin((k + 1) * kPi / (n + 2));
            c /= std::sqrt(c.squaredNorm());
            break;
        }
        case NamedState::balanced:
            for (int k = 0; k <= n; ++k)
                c(k) = std::exp(0.5 * (log_binomial(n, k) - n * std::log(2.0)));
            break;
        case NamedState::twin_fock:
            if (n % 2 != 0)
                throw std::invalid_argument("twin Fock state needs an even photon number");
            c(n / 2) = 1.0;
            break;
    }
    return FockStateN(n, c);
}

AngularMomentumRep build_j_operators(int n) {
    if (n < 0) throw std::invalid_argument("photon number must be nonnegative");
    const int d = n + 1;
    AngularMomentumRep rep;
    rep.n_total = n;
    rep.jx = Mat::Zero(d, d);
    rep.jy = Mat::Zero(d, d);
    rep.jz = Mat::Zero(d, d);
    // On |n_a, N-n_a>: a^dag b |k> = sqrt((k+1)(N-k)) |k+1>, b^dag a |k> = sqrt(k(N-k+1)) |k-1>.
    for (int k = 0; k < d; ++k) {
        rep.jz(k, k) = k - n / 2.0;
        if (k + 1 < d) {
            double amp = 0.5 * std::sqrt(double(k + 1) * double(n - k));
            rep.jx(k + 1, k) = amp;
            rep.jx(k, k + 1) = amp;
            rep.jy(k + 1, k) = cxd(0.0, -amp);   // Jx + iJy raises n_a here
            rep.jy(k, k + 1) = cxd(0.0, amp);
        }
    }
    rep.j2_eigenvalue = (n / 2.0) * (n / 2.0 + 1.0);
    return rep;
}

Mat mz_unitary(int n, double phi) {
    auto rep = build_j_operators(n);
    Mat bs_in = matrix_exp_hermitian(rep.jx, cxd(0.0, -kPi / 2.0));
    Mat bs_out = matrix_exp_hermitian(rep.jx, cxd(0.0, kPi / 2.0));
    Mat phase = matrix_exp_hermitian(rep.jz, cxd(0.0, -phi));
    return bs_out * phase * bs_in;
}

Mat hadamard_beam_splitter(int n) {
    if (n < 0) throw std::invalid_argument("photon number must be nonnegative");
    const int d = n + 1;
    // exact homomorphism of a^dag -> (a^dag + b^dag)/sqrt2,
    // b^dag -> (a^dag - b^dag)/sqrt2 on the N-photon sector:
    // U[k, m] = 2^{-N/2} sqrt(k!(N-k)!/(m!(N-m)!)) sum_j C(m,j) C(N-m,k-j) (-1)^{N-m-k+j}
    Mat u = Mat::Zero(d, d);
    for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k) {
            double prefactor = std::exp(0.5 * (log_factorial(k) + log_factorial(n - k) -
                                               log_factorial(m) - log_factorial(n - m)) -
                                        0.5 * n * std::log(2.0));
            double sum = 0.0;
            for (int j = std::max(0, k - (n - m)); j <= std::min(m, k); ++j) {
                double term = std::exp(log_binomial(m, j) + log_binomial(n - m, k - j));
                sum += ((n - m - k + j) % 2 == 0) ? term : -term;
            }
            u(k, m) = prefactor * sum;
        }
    return u;
}

TwoModeGrid product_grid(const Vec& mode_a, double discarded_a,
                         const Vec& mode_b, double discarded_b) {
    TwoModeGrid grid;
    grid.amp = mode_a * mode_b.transpose();
    grid.discarded_norm = 1.0 - (1.0 - discarded_a) * (1.0 - discarded_b);
    return grid;
}

void check_grid_truncation(const TwoModeGrid& grid, bool allow_truncation) {
    if (!allow_truncation && grid.discarded_norm > 1e-6)
        throw truncation_error(grid.discarded_norm);
}

SectorProjection project_sector(const TwoModeGrid& grid, int n, bool allow_truncation) {
    check_grid_truncation(grid, allow_truncation);
    if (n < 0) throw std::invalid_argument("sector photon number must be nonnegative");
    Vec c = Vec::Zero(n + 1);
    double weight = 0.0;
    for (int k = 0; k <= n; ++k) {
        if (k < grid.dim_a() && n - k < grid.dim_b()) {
            c(k) = grid.amp(k, n - k);
            weight += std::norm(c(k));
        }
    }
    if (weight <= 0.0) throw empty_sector_error();
    c /= std::sqrt(weight);
    return {FockStateN(n, std::move(c)), weight};
}

IndefinitePhotonState phase_average(const TwoModeGrid& grid, bool allow_truncation) {
    check_grid_truncation(grid, allow_truncation);
    IndefinitePhotonState out;
    for (int n = 0; n <= grid.max_total(); ++n) {
        double weight = 0.0;
        for (int k = 0; k <= n; ++k)
            if (k < grid.dim_a() && n - k < grid.dim_b())
                weight += std::norm(grid.amp(k, n - k));
        if (weight < 1e-14) {
            out.dropped_weight += weight;
            continue;
        }
        auto proj = project_sector(grid, n, allow_truncation);
        out.sectors.push_back({n, proj.weight, proj.state});
    }
    return out;
}

IndefinitePhotonState phase_average(const IndefinitePhotonState& state) {
    IndefinitePhotonState out = state;
    double total = 0.0;
    for (const auto& s : out.sectors) total += s.weight;
    if (total > 0)
        for (auto& s : out.sectors) s.weight /= total;
    return out;
}

}  // namespace qmetro
