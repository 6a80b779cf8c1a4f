#include "qmetro/qfi.hpp"

#include <cmath>

namespace qmetro {

double qfi_pure(const Vec& psi, const Vec& dpsi) {
    if (psi.size() != dpsi.size())
        throw std::invalid_argument("state and derivative dimensions differ");
    cxd overlap = psi.dot(dpsi);   // <psi|dpsi>
    if (std::abs(overlap.real()) > 1e-8)
        throw inconsistent_derivative_error(
            "derivative does not preserve the norm: Re<psi|dpsi> != 0");
    double dd = dpsi.squaredNorm();
    return 4.0 * (dd - std::norm(overlap));
}

QfiResult qfi_mixed(const Mat& rho, const Mat& drho) {
    if (!is_hermitian(rho) || !is_hermitian(drho))
        throw std::invalid_argument("qfi_mixed needs Hermitian rho and drho");
    if (std::abs(drho.trace().real()) > 1e-10)
        throw std::invalid_argument("drho must be traceless");
    auto eig = hermitian_eig(rho);
    const int d = static_cast<int>(eig.values.size());
    Mat drho_eig = eig.vectors.adjoint() * drho * eig.vectors;

    Mat sld_eig = Mat::Zero(d, d);
    double smallest_kept = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double denom = eig.values(i) + eig.values(j);
            if (denom <= kSpectrumCut) continue;
            sld_eig(i, j) = 2.0 * drho_eig(i, j) / denom;
            smallest_kept = std::min(smallest_kept, denom);
        }
    double value = 0.0;
    for (int i = 0; i < d; ++i) {
        double li = std::max(eig.values(i), 0.0);
        value += li * (sld_eig.row(i) * sld_eig.col(i))(0, 0).real();
    }
    QfiResult res;
    res.value = value;
    res.sld = eig.vectors * sld_eig * eig.vectors.adjoint();
    res.spectrum_condition = std::isfinite(smallest_kept) ? smallest_kept : 0.0;
    return res;
}

double qfi_unitary(const Mat& rho, const Mat& generator) {
    if (!is_hermitian(rho) || !is_hermitian(generator))
        throw std::invalid_argument("qfi_unitary needs Hermitian inputs");
    auto eig = hermitian_eig(rho);
    const int d = static_cast<int>(eig.values.size());
    Mat h_eig = eig.vectors.adjoint() * generator * eig.vectors;
    double value = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            double denom = eig.values(i) + eig.values(j);
            if (denom <= kSpectrumCut) continue;
            double diff = eig.values(i) - eig.values(j);
            value += 2.0 * std::norm(h_eig(i, j)) * diff * diff / denom;
        }
    return value;
}

double fidelity(const Mat& rho1, const Mat& rho2) {
    Mat root = psd_sqrt(rho1);
    Mat inner = root * rho2 * root;
    auto eig = hermitian_eig(inner);
    double tr = 0.0;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        tr += std::sqrt(std::max(0.0, eig.values(i)));
    return tr * tr;
}

double block_phase_qfi(const BlockDiagonalState& state) {
    double total = 0.0;
    for (const auto& block : state.blocks) {
        const int d = static_cast<int>(block.rho.rows());
        Mat number = Mat::Zero(d, d);
        for (int k = 0; k < d; ++k) number(k, k) = k;
        total += block.weight * qfi_unitary(block.rho, number);
    }
    return total;
}

double phase_diffusion_purification_bound(double var_jz, double gamma,
                                          std::optional<double> lambda) {
    if (var_jz < 0 || gamma < 0)
        throw std::invalid_argument("variance and phase variance must be nonnegative");
    if (lambda) {
        double l = *lambda;
        double shift = 1.0 - std::sqrt(2.0 * gamma) * l;
        return 2.0 * l * l + 4.0 * shift * shift * var_jz;
    }
    return 4.0 * var_jz / (1.0 + 4.0 * gamma * var_jz);
}

}  // namespace qmetro
