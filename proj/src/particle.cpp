#include "qmetro/particle.hpp"

#include "qmetro/qfi.hpp"

#include <algorithm>
#include <cmath>

namespace qmetro {

namespace {

void check_cap(int n, int local_dim) {
    int cap = (local_dim >= 3) ? kParticleCapQutrit : kParticleCapQubit;
    if (n > cap)
        throw resource_limit_error("particle-picture computation above the configured cap");
}

// basis index -> digits (most significant particle first)
inline int digit(int index, int particle, int n, int base) {
    for (int p = n - 1; p > particle; --p) index /= base;
    return index % base;
}

}  // namespace

Vec symmetrize_vector(const FockStateN& state) {
    const int n = state.n_total;
    check_cap(n, 2);
    const int dim = 1 << n;
    Vec out = Vec::Zero(dim);
    // each bitstring with k zeros (mode a) contributes c_k / sqrt(C(N,k))
    for (int idx = 0; idx < dim; ++idx) {
        int ones = 0;
        for (int p = 0; p < n; ++p)
            if (idx & (1 << p)) ++ones;
        int in_a = n - ones;
        out(idx) = state.coeffs(in_a) * std::exp(-0.5 * log_binomial(n, in_a));
    }
    return out;
}

ParticleState symmetrize(const FockStateN& state) {
    Vec v = symmetrize_vector(state);
    ParticleState p;
    p.n_particles = state.n_total;
    p.local_dim = 2;
    p.rho = v * v.adjoint();
    return p;
}

namespace {

// rho -> sum_i (1 x K_i x 1) rho (1 x K_i x 1)^dag acting on one site of a
// mixed-radix register; dims[site] is updated in place.
Mat apply_local_channel(const Mat& rho, std::vector<int>& dims, int site,
                        const std::vector<Mat>& ops) {
    const int n = static_cast<int>(dims.size());
    const int din = static_cast<int>(ops.front().cols());
    const int dout = static_cast<int>(ops.front().rows());
    if (dims[site] != din) throw std::invalid_argument("local dimension mismatch");

    int left = 1, right = 1;
    for (int q = 0; q < site; ++q) left *= dims[q];
    for (int q = site + 1; q < n; ++q) right *= dims[q];
    const Eigen::Index rows_in = rho.rows();
    const Eigen::Index rows_out = static_cast<Eigen::Index>(left) * dout * right;

    Mat result = Mat::Zero(rows_out, rows_out);
    Mat half(rows_out, rows_in);
    for (const auto& k : ops) {
        half.setZero();
        for (int l = 0; l < left; ++l)
            for (int o = 0; o < dout; ++o)
                for (int c = 0; c < din; ++c) {
                    cxd amp = k(o, c);
                    if (amp == cxd(0.0, 0.0)) continue;
                    Eigen::Index dst = (static_cast<Eigen::Index>(l) * dout + o) * right;
                    Eigen::Index src = (static_cast<Eigen::Index>(l) * din + c) * right;
                    half.middleRows(dst, right) += amp * rho.middleRows(src, right);
                }
        // right-multiply by K^dag on the same site
        for (int l = 0; l < left; ++l)
            for (int o = 0; o < dout; ++o)
                for (int c = 0; c < din; ++c) {
                    cxd amp = std::conj(k(o, c));
                    if (amp == cxd(0.0, 0.0)) continue;
                    Eigen::Index dst = (static_cast<Eigen::Index>(l) * dout + o) * right;
                    Eigen::Index src = (static_cast<Eigen::Index>(l) * din + c) * right;
                    result.middleCols(dst, right) += amp * half.middleCols(src, right);
                }
    }
    dims[site] = dout;
    return result;
}

}  // namespace

ParticleState apply_iid(const KrausChannel& channel, const ParticleState& state) {
    const int n = state.n_particles;
    const int din = channel.in_dim();
    const int dout = channel.out_dim();
    if (din != state.local_dim)
        throw std::invalid_argument("channel input dimension does not match the state");
    check_cap(n, dout);

    std::vector<int> dims(n, din);
    Mat rho = state.rho;
    if (rho.rows() != static_cast<Eigen::Index>(std::pow(din, n) + 0.5))
        throw std::invalid_argument("state dimension mismatch");
    for (int site = 0; site < n; ++site)
        rho = apply_local_channel(rho, dims, site, channel.ops);

    ParticleState result;
    result.n_particles = n;
    result.local_dim = dout;
    result.rho = std::move(rho);
    return result;
}

ParticleState apply_phase_rotation(const ParticleState& state, double phi) {
    const int n = state.n_particles;
    const int d = state.local_dim;
    Vec local(d);
    local(0) = std::exp(cxd(0.0, -0.5 * phi));
    local(1) = std::exp(cxd(0.0, +0.5 * phi));
    for (int l = 2; l < d; ++l) local(l) = 1.0;

    const int total = state.dim();
    Vec diag(total);
    for (int idx = 0; idx < total; ++idx) {
        cxd amp = 1.0;
        for (int p = 0; p < n; ++p) amp *= local(digit(idx, p, n, d));
        diag(idx) = amp;
    }
    ParticleState out = state;
    out.rho = diag.asDiagonal() * state.rho * diag.conjugate().asDiagonal();
    return out;
}

double oracle_qfi(const ParticleState& state, const Mat& drho) {
    return qfi_mixed(state.rho, drho).value;
}

double particle_channel_qfi(const FockStateN& input, const KrausChannel& channel) {
    ParticleState sym = symmetrize(input);
    const int n = sym.n_particles;
    const int total = sym.dim();

    // d rho / d phi at 0 in the input picture: -i [Jz, rho]
    Vec half_z(total);
    for (int idx = 0; idx < total; ++idx) {
        int ones = 0;
        for (int p = 0; p < n; ++p) ones += digit(idx, p, n, 2);
        half_z(idx) = 0.5 * (n - 2 * ones);   // +1/2 per a, -1/2 per b
    }
    Mat commutator(total, total);
    for (int r = 0; r < total; ++r)
        for (int c = 0; c < total; ++c)
            commutator(r, c) = cxd(0.0, -1.0) * (half_z(r) - half_z(c)) * sym.rho(r, c);

    ParticleState rho_out = apply_iid(channel, sym);
    ParticleState drho_in = sym;
    drho_in.rho = commutator;
    ParticleState drho_out = apply_iid(channel, drho_in);
    return qfi_mixed(rho_out.rho, drho_out.rho).value;
}

namespace {

void enumerate_simplex(int slots, int steps, std::vector<int>& current,
                       const std::function<void(const std::vector<int>&)>& visit) {
    if (slots == 1) {
        current.push_back(steps);
        visit(current);
        current.pop_back();
        return;
    }
    for (int k = steps; k >= 0; --k) {
        current.push_back(k);
        enumerate_simplex(slots - 1, steps - k, current, visit);
        current.pop_back();
    }
}

}  // namespace

ProbeSearchResult best_real_probe(int n_photons,
                                  const std::function<double(const FockStateN&)>& eval,
                                  int grid_steps) {
    const int slots = n_photons + 1;
    // split the enumeration on the first simplex coordinate
    std::vector<double> thread_best(grid_steps + 1,
                                    -std::numeric_limits<double>::infinity());
    std::vector<RVec> thread_weights(grid_steps + 1, RVec::Zero(slots));
    parallel_for(grid_steps + 1, [&](int k0) {
        std::vector<int> scratch{k0};
        enumerate_simplex(slots - 1, grid_steps - k0, scratch,
                          [&](const std::vector<int>& point) {
            Vec c(slots);
            for (int i = 0; i < slots; ++i) c(i) = std::sqrt(double(point[i]) / grid_steps);
            double value = eval(FockStateN(n_photons, c));
            if (value > thread_best[k0]) {
                thread_best[k0] = value;
                for (int i = 0; i < slots; ++i)
                    thread_weights[k0](i) = double(point[i]) / grid_steps;
            }
        });
    });
    double best = -std::numeric_limits<double>::infinity();
    RVec best_weights = RVec::Zero(slots);
    for (int k0 = 0; k0 <= grid_steps; ++k0)
        if (thread_best[k0] > best) {
            best = thread_best[k0];
            best_weights = thread_weights[k0];
        }

    // local refinement over unconstrained square-root coordinates
    RVec x0(slots);
    for (int i = 0; i < slots; ++i) x0(i) = std::sqrt(best_weights(i));
    auto objective = [&](const RVec& x) {
        double norm = x.norm();
        if (norm < 1e-12) return 1e9;
        Vec c(slots);
        for (int i = 0; i < slots; ++i) c(i) = std::abs(x(i)) / norm;
        return -eval(FockStateN(n_photons, c));
    };
    auto refined = nelder_mead(objective, x0, 0.05, 1e-12, 2000);
    double norm = refined.x.norm();
    Vec c(slots);
    for (int i = 0; i < slots; ++i) c(i) = std::abs(refined.x(i)) / norm;
    FockStateN best_state(n_photons, c);
    return {best_state, -refined.value};
}

}  // namespace qmetro
