#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmetro/numerics.hpp"

#include <cmath>

using namespace qmetro;

TEST_CASE("hermitian matrix exponential matches scalar case") {
    Mat h(2, 2);
    h << 1.0, cxd(0.0, -0.5), cxd(0.0, 0.5), -1.0;
    Mat u = matrix_exp_hermitian(h, cxd(0.0, -1.0));
    CHECK((u * u.adjoint() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    // diagonal generator
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    Mat ud = matrix_exp_hermitian(d, cxd(0.0, -0.3));
    CHECK(std::abs(ud(0, 0) - std::exp(cxd(0.0, -0.6))) < 1e-14);
    CHECK(std::abs(ud(1, 1) - std::exp(cxd(0.0, 0.3))) < 1e-14);
}

TEST_CASE("adaptive simpson integrates smooth functions to tolerance") {
    double val = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12);
    CHECK(val == doctest::Approx(2.0).epsilon(1e-11));
    double poly = adaptive_simpson([](double x) { return x * x * x - x + 2; }, -1.0, 3.0, 1e-12);
    CHECK(poly == doctest::Approx(3.0 * 3 * 3 * 3 / 4.0 - 1.0 / 4.0 - (9.0 / 2 - 1.0 / 2) + 8.0)
                      .epsilon(1e-11));
}

TEST_CASE("golden section finds the minimum of a smooth bowl") {
    double x = golden_section_min([](double t) { return (t - 0.7) * (t - 0.7) + 3.0; }, -2, 2);
    CHECK(x == doctest::Approx(0.7).epsilon(1e-7));
}

TEST_CASE("nelder mead minimizes rosenbrock-lite") {
    RVec x0(2);
    x0 << -1.0, 1.5;
    auto res = nelder_mead(
        [](const RVec& x) {
            double a = 1 - x(0), b = x(1) - x(0) * x(0);
            return a * a + 10.0 * b * b;
        },
        x0, 0.5, 1e-14, 20000);
    CHECK(res.x(0) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(res.x(1) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("tridiagonal top eigenpair matches the known cosine spectrum") {
    // zero diagonal, unit off-diagonal: lambda_max = 2 cos(pi/(n+1)), sine eigenvector
    for (int n : {2, 5, 17, 100}) {
        RVec diag = RVec::Zero(n);
        RVec off = RVec::Ones(n - 1);
        auto top = tridiagonal_top_eigenpair(diag, off);
        CHECK(top.value == doctest::Approx(2.0 * std::cos(kPi / (n + 1))).epsilon(1e-12));
        for (int k = 0; k < n; ++k) {
            double expect = std::sin((k + 1) * kPi / (n + 1));
            CHECK(top.vector(k) / top.vector(0) ==
                  doctest::Approx(expect / std::sin(kPi / (n + 1))).epsilon(1e-8));
        }
    }
}

TEST_CASE("tridiagonal solver handles large dimensions") {
    int n = 10001;
    RVec diag = RVec::Zero(n);
    RVec off = RVec::Ones(n - 1);
    auto top = tridiagonal_top_eigenpair(diag, off);
    CHECK(top.value == doctest::Approx(2.0 * std::cos(kPi / (n + 1))).epsilon(1e-13));
}

TEST_CASE("log binomial agrees with exact small cases") {
    CHECK(std::exp(log_binomial(10, 3)) == doctest::Approx(120.0).epsilon(1e-12));
    CHECK(std::exp(log_binomial(0, 0)) == doctest::Approx(1.0));
    CHECK(log_binomial(5, 7) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("gauss hermite integrates gaussian moments") {
    std::vector<double> x, w;
    gauss_hermite(40, x, w);
    double m0 = 0, m2 = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        m0 += w[i];
        m2 += w[i] * x[i] * x[i];
    }
    CHECK(m0 == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-12));
}

TEST_CASE("parallel_for covers every index once") {
    std::vector<std::atomic<int>> hits(257);
    for (auto& h : hits) h = 0;
    parallel_for(257, [&](int i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
}
