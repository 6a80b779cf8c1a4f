#include "qmetro/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace qmetro {

EigH hermitian_eig(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian eigendecomposition failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Mat matrix_exp_hermitian(const Mat& h, cxd scale) {
    auto eig = hermitian_eig(h);
    Vec phases(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        phases(i) = std::exp(scale * eig.values(i));
    return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Mat psd_sqrt(const Mat& rho) {
    auto eig = hermitian_eig(rho);
    Vec roots(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        roots(i) = std::sqrt(std::max(0.0, eig.values(i)));
    return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

double min_eigenvalue(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

bool is_hermitian(const Mat& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Mat align_global_phase(const Mat& reference, const Mat& candidate) {
    cxd overlap = (reference.adjoint() * candidate).trace();
    if (std::abs(overlap) < 1e-300) return candidate;
    return candidate * (std::conj(overlap) / std::abs(overlap));
}

namespace {

double simpson_segment(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double fa,
                            double b, double fb, double fm, double whole, double tol,
                            int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_segment(a, fa, m, fm, flm);
    double right = simpson_segment(m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, fa, m, fm, flm, left, tol / 2, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, frm, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson_segment(a, fa, b, fb, fm);
    return adaptive_simpson_rec(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    // Golub-Welsch on the Hermite Jacobi matrix.
    RMat j = RMat::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        double b = std::sqrt(i / 2.0);
        j(i, i - 1) = b;
        j(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<RMat> solver(j);
    nodes.resize(n);
    weights.resize(n);
    const double sqrt_pi = std::sqrt(kPi);
    for (int i = 0; i < n; ++i) {
        nodes[i] = solver.eigenvalues()(i);
        double v0 = solver.eigenvectors()(0, i);
        weights[i] = sqrt_pi * v0 * v0;
    }
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

NelderMeadResult nelder_mead(const std::function<double(const RVec&)>& f, const RVec& x0,
                             double step, double tol, int max_iter) {
    const int n = static_cast<int>(x0.size());
    std::vector<RVec> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1](i) += step;
    for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    int iter = 0;
    while (iter++ < max_iter) {
        std::vector<int> order(n + 1);
        for (int i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        int best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(vals[worst] - vals[best]) <= tol * (std::abs(vals[best]) + tol)) break;

        RVec centroid = RVec::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += pts[i];
        centroid /= n;

        RVec refl = centroid + (centroid - pts[worst]);
        double frefl = f(refl);
        if (frefl < vals[best]) {
            RVec expand = centroid + 2.0 * (centroid - pts[worst]);
            double fexp = f(expand);
            if (fexp < frefl) { pts[worst] = expand; vals[worst] = fexp; }
            else { pts[worst] = refl; vals[worst] = frefl; }
        } else if (frefl < vals[second]) {
            pts[worst] = refl; vals[worst] = frefl;
        } else {
            RVec contr = centroid + 0.5 * (pts[worst] - centroid);
            double fcon = f(contr);
            if (fcon < vals[worst]) { pts[worst] = contr; vals[worst] = fcon; }
            else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (vals[i] < vals[best]) best = i;
    return {pts[best], vals[best], iter};
}

namespace {

// Number of eigenvalues of the tridiagonal matrix strictly less than x.
int sturm_count(const RVec& diag, const RVec& off, double x) {
    const int n = static_cast<int>(diag.size());
    int count = 0;
    double q = diag(0) - x;
    if (q < 0) ++count;
    for (int i = 1; i < n; ++i) {
        double denom = (std::abs(q) < 1e-300) ? std::copysign(1e-300, q == 0 ? -1.0 : q) : q;
        q = diag(i) - x - off(i - 1) * off(i - 1) / denom;
        if (q < 0) ++count;
    }
    return count;
}

}  // namespace

TopEigenPair tridiagonal_top_eigenpair(const RVec& diag, const RVec& off) {
    const int n = static_cast<int>(diag.size());
    if (n == 1) {
        RVec v(1); v(0) = 1.0;
        return {diag(0), v};
    }
    // Gershgorin bracket.
    double lo = diag(0), hi = diag(0);
    for (int i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(off(i - 1)) : 0.0) + (i + 1 < n ? std::abs(off(i)) : 0.0);
        lo = std::min(lo, diag(i) - r);
        hi = std::max(hi, diag(i) + r);
    }
    double a = lo, b = hi + 1e-12;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
        double mid = 0.5 * (a + b);
        if (sturm_count(diag, off, mid) >= n) b = mid;
        else a = mid;
    }
    double lambda = 0.5 * (a + b);

    // Inverse iteration with the Thomas algorithm on (T - sigma I).
    double sigma = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
    RVec v = RVec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int sweep = 0; sweep < 6; ++sweep) {
        RVec c(n), d(n), x(n);
        // forward elimination
        double beta = diag(0) - sigma;
        if (std::abs(beta) < 1e-300) beta = 1e-300;
        c(0) = (n > 1 ? off(0) / beta : 0.0);
        d(0) = v(0) / beta;
        for (int i = 1; i < n; ++i) {
            double m = diag(i) - sigma - off(i - 1) * c(i - 1);
            if (std::abs(m) < 1e-300) m = 1e-300;
            if (i + 1 < n) c(i) = off(i) / m;
            d(i) = (v(i) - off(i - 1) * d(i - 1)) / m;
        }
        x(n - 1) = d(n - 1);
        for (int i = n - 2; i >= 0; --i) x(i) = d(i) - c(i) * x(i + 1);
        v = x / x.norm();
    }
    // Rayleigh quotient refinement of the eigenvalue.
    double num = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = diag(i) * v(i);
        if (i > 0) t += off(i - 1) * v(i - 1);
        if (i + 1 < n) t += off(i) * v(i + 1);
        num += v(i) * t;
    }
    lambda = num;

    int imax = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    if (v(imax) < 0) v = -v;
    return {lambda, v};
}

double log_factorial(int n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

int max_threads() {
    if (const char* env = std::getenv("QMETRO_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int threads = std::min(max_threads(), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace qmetro
