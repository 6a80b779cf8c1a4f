#include "qmetro/channels.hpp"

#include <cmath>

namespace qmetro {

double KrausChannel::completeness_residual() const {
    if (ops.empty()) return 1.0;
    Mat sum = Mat::Zero(in_dim(), in_dim());
    for (const auto& k : ops) sum += k.adjoint() * k;
    return (sum - Mat::Identity(in_dim(), in_dim())).cwiseAbs().maxCoeff();
}

Mat apply_channel(const KrausChannel& channel, const Mat& rho) {
    Mat out = Mat::Zero(channel.out_dim(), channel.out_dim());
    for (const auto& k : channel.ops) out += k * rho * k.adjoint();
    return out;
}

double BlockDiagonalState::total_weight() const {
    double w = 0.0;
    for (const auto& b : blocks) w += b.weight;
    return w;
}

namespace {

// log of b_n^{(l_a, l_b)}: binomial deletion probabilities for each arm.
double log_loss_coeff(int n, int n_total, int la, int lb, const LossParams& p) {
    if (la > n || lb > n_total - n) return -std::numeric_limits<double>::infinity();
    auto arm = [](int photons, int lost, double eta) {
        if (eta == 1.0) return lost == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
        if (eta == 0.0) return lost == photons ? 0.0 : -std::numeric_limits<double>::infinity();
        return log_binomial(photons, lost) + (photons - lost) * std::log(eta) +
               lost * std::log1p(-eta);
    };
    return arm(n, la, p.eta_a) + arm(n_total - n, lb, p.eta_b);
}

}  // namespace

BlockDiagonalState loss_output_state(const FockStateN& state, double phi,
                                     const LossParams& params) {
    const int n_total = state.n_total;
    BlockDiagonalState out;
    for (int n_surv = n_total; n_surv >= 0; --n_surv) {
        const int lost = n_total - n_surv;
        Mat block = Mat::Zero(n_surv + 1, n_surv + 1);
        double weight = 0.0;
        for (int la = 0; la <= lost; ++la) {
            const int lb = lost - la;
            // conditional pure state |xi_{la,lb}> over |n - la, N - n - lb>
            Vec xi = Vec::Zero(n_surv + 1);
            double prob = 0.0;
            for (int n = la; n <= n_total - lb; ++n) {
                double lc = log_loss_coeff(n, n_total, la, lb, params);
                if (!std::isfinite(lc)) continue;
                double amp = std::exp(0.5 * lc);
                cxd phase = std::exp(cxd(0.0, -phi * n));
                xi(n - la) += state.coeffs(n) * phase * amp;
                prob += std::norm(state.coeffs(n)) * std::exp(lc);
            }
            if (prob < 1e-300) continue;
            block += xi * xi.adjoint();
            weight += prob;
        }
        if (weight < 1e-14) {
            out.dropped_weight += weight;
            continue;
        }
        block /= weight;
        out.blocks.push_back({n_surv, weight, std::move(block)});
    }
    return out;
}

BlockDiagonalState loss_apply_density(const Mat& rho, int n_total,
                                      const LossParams& params) {
    if (rho.rows() != n_total + 1 || rho.cols() != n_total + 1)
        throw std::invalid_argument("density matrix dimension must be N+1");
    BlockDiagonalState out;
    for (int n_surv = n_total; n_surv >= 0; --n_surv) {
        const int lost = n_total - n_surv;
        Mat block = Mat::Zero(n_surv + 1, n_surv + 1);
        for (int la = 0; la <= lost; ++la) {
            const int lb = lost - la;
            // Kraus K_{la,lb}: |n, N-n> -> sqrt(b_n) |n-la, N-n-lb>
            Mat kraus = Mat::Zero(n_surv + 1, n_total + 1);
            for (int n = la; n <= n_total - lb; ++n) {
                double lc = log_loss_coeff(n, n_total, la, lb, params);
                if (std::isfinite(lc)) kraus(n - la, n) = std::exp(0.5 * lc);
            }
            block += kraus * rho * kraus.adjoint();
        }
        double weight = block.trace().real();
        if (weight < 1e-14) {
            out.dropped_weight += weight;
            continue;
        }
        block /= weight;
        out.blocks.push_back({n_surv, weight, std::move(block)});
    }
    return out;
}

KrausChannel loss_kraus_particle(const LossParams& p) {
    Mat k1 = Mat::Zero(3, 2), k2 = Mat::Zero(3, 2), k3 = Mat::Zero(3, 2);
    k1(0, 0) = std::sqrt(p.eta_a);
    k1(1, 1) = std::sqrt(p.eta_b);
    k2(2, 0) = std::sqrt(1.0 - p.eta_a);
    k3(2, 1) = std::sqrt(1.0 - p.eta_b);
    return {{k1, k2, k3}};
}

KrausChannel dephasing_kraus(double eta) {
    if (eta < 0 || eta > 1) throw std::invalid_argument("visibility must lie in [0,1]");
    Mat k1 = std::sqrt((1.0 + eta) / 2.0) * Mat::Identity(2, 2);
    Mat k2 = Mat::Zero(2, 2);
    k2(0, 0) = std::sqrt((1.0 - eta) / 2.0);
    k2(1, 1) = -std::sqrt((1.0 - eta) / 2.0);
    return {{k1, k2}};
}

Mat phase_diffusion_apply(const FockStateN& state, const PhaseDiffusionParams& params) {
    const int d = state.dim();
    Mat rho(d, d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) {
            double k = n - m;
            rho(n, m) = state.coeffs(n) * std::conj(state.coeffs(m)) *
                        std::exp(-0.5 * params.gamma * k * k) *
                        std::exp(cxd(0.0, -k * params.phi));
        }
    return rho;
}

Mat choi_matrix(const KrausChannel& channel) {
    const int din = channel.in_dim();
    const int dout = channel.out_dim();
    Mat omega = Mat::Zero(dout * din, dout * din);
    for (const auto& k : channel.ops) {
        // |vec(K)> with row index (j_out * din + i_in)
        Vec v(dout * din);
        for (int j = 0; j < dout; ++j)
            for (int i = 0; i < din; ++i) v(j * din + i) = k(j, i);
        omega += v * v.adjoint();
    }
    return omega;
}

}  // namespace qmetro
