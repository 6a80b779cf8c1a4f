#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qmetro/bounds.hpp"
#include "qmetro/qfi.hpp"

#include <cmath>

using namespace qmetro;

namespace {

Mat half_sigma_z() {
    Mat h = Mat::Zero(2, 2);
    h(0, 0) = 0.5;
    h(1, 1) = -0.5;
    return h;
}

}  // namespace

TEST_CASE("asymptotic loss bound values") {
    auto b = asymptotic_loss_bound(900, 0.9, 0.9);
    CHECK(b.delta_phi == doctest::Approx(std::sqrt(0.1 / (0.9 * 900))).epsilon(1e-12));
    CHECK(b.delta_phi == doctest::Approx(0.011111).epsilon(1e-4));

    auto perfect = asymptotic_loss_bound(30, 1.0, 1.0);
    CHECK(perfect.delta_phi == doctest::Approx(0.0));
    CHECK_FALSE(perfect.infinite);

    auto dead = asymptotic_loss_bound(10, 0.0, 0.5);
    CHECK(dead.infinite);

    // quantum enhancement cap: bound / (1/sqrt(eta N)) = sqrt(1 - eta)
    for (double eta : {0.3, 0.7, 0.95}) {
        auto bound = asymptotic_loss_bound(50, eta, eta);
        double uncorrelated = 1.0 / std::sqrt(eta * 50);
        CHECK(bound.delta_phi / uncorrelated == doctest::Approx(std::sqrt(1 - eta)).epsilon(1e-12));
    }
}

TEST_CASE("asymptotic dephasing bound values") {
    CHECK(asymptotic_dephasing_bound(10, 1.0).delta_phi == doctest::Approx(0.0));
    auto b = asymptotic_dephasing_bound(100, 0.9);
    CHECK(b.delta_phi == doctest::Approx(std::sqrt(0.19 / 0.81) / 10.0).epsilon(1e-12));
    CHECK(b.delta_phi == doctest::Approx(0.04843).epsilon(1e-4));
    // enhancement over 1/sqrt(eta^2 N) is sqrt(1 - eta^2)
    for (double eta : {0.4, 0.8}) {
        auto bound = asymptotic_dephasing_bound(64, eta);
        double uncorrelated = 1.0 / std::sqrt(eta * eta * 64);
        CHECK(bound.delta_phi / uncorrelated ==
              doctest::Approx(std::sqrt(1 - eta * eta)).epsilon(1e-12));
    }
}

TEST_CASE("1/sqrt(N) scaling of the asymptotic bounds") {
    for (int n : {4, 36, 400}) {
        CHECK(asymptotic_loss_bound(4 * n, 0.77, 0.55).delta_phi /
                  asymptotic_loss_bound(n, 0.77, 0.55).delta_phi ==
              doctest::Approx(0.5).epsilon(1e-12));
        CHECK(asymptotic_dephasing_bound(4 * n, 0.66).delta_phi /
                  asymptotic_dephasing_bound(n, 0.66).delta_phi ==
              doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("phase diffusion bound pair") {
    auto b0 = phase_diffusion_bounds(10, 0.0);
    CHECK(b0.exact == doctest::Approx(kPi / 10).epsilon(1e-12));
    CHECK(b0.purification == doctest::Approx(0.1).epsilon(1e-12));

    auto large = phase_diffusion_bounds(1000000, 0.01);
    CHECK(std::abs(large.exact - 0.1) < 1e-4);
    CHECK(std::abs(large.purification - 0.1) < 1e-4);

    for (int n : {1, 3, 10, 100})
        for (double g : {0.0, 0.01, 0.5, 2.0})
            CHECK(phase_diffusion_bounds(n, g).exact >= phase_diffusion_bounds(n, g).purification);
}

TEST_CASE("classical simulation of the dephasing family") {
    for (double eta : {0.3, 0.6, 0.9}) {
        auto fam = phase_encoded_family(dephasing_kraus(eta), half_sigma_z());
        auto cs = cs_epsilons(fam);
        double expect = std::sqrt(1 - eta * eta) / eta;
        CHECK(cs.eps_plus == doctest::Approx(expect).epsilon(1e-6));
        CHECK(cs.eps_minus == doctest::Approx(expect).epsilon(1e-6));
        CHECK_FALSE(cs.trivial);
        CHECK(cs.fi_bound_per_photon == doctest::Approx(eta * eta / (1 - eta * eta)).epsilon(1e-5));
    }
}

TEST_CASE("cs boundary certification for dephasing") {
    auto fam = phase_encoded_family(dephasing_kraus(0.6), half_sigma_z());
    auto cs = cs_epsilons(fam);
    // rebuild the Choi pencil directly
    Mat omega = choi_matrix(fam.channel);
    Mat domega = Mat::Zero(4, 4);
    {
        const int din = 2, dout = 2;
        for (size_t x = 0; x < fam.channel.ops.size(); ++x) {
            Vec v(dout * din), vd(dout * din);
            for (int j = 0; j < dout; ++j)
                for (int i = 0; i < din; ++i) {
                    v(j * din + i) = fam.channel.ops[x](j, i);
                    vd(j * din + i) = fam.kraus_dot[x](j, i);
                }
            domega += vd * v.adjoint() + v * vd.adjoint();
        }
    }
    CHECK(std::abs(min_eigenvalue(omega + cs.eps_plus * domega)) < 1e-9);
    CHECK(std::abs(min_eigenvalue(omega - cs.eps_minus * domega)) < 1e-9);
}

TEST_CASE("loss channel admits no classical simulation") {
    auto fam = phase_encoded_family(loss_kraus_particle(LossParams(0.7, 0.7)), half_sigma_z());
    auto cs = cs_epsilons(fam);
    CHECK(cs.trivial);
    CHECK(cs.eps_plus <= 1e-9);
}

TEST_CASE("noiseless channel sits on the boundary") {
    KrausChannel unitary{{Mat::Identity(2, 2)}};
    auto fam = phase_encoded_family(unitary, half_sigma_z());
    auto cs = cs_epsilons(fam);
    CHECK(cs.trivial);
}

TEST_CASE("quantum simulation of the lossy channel") {
    struct Case {
        double ea, eb;
    };
    for (auto cse : {Case{0.5, 0.5}, Case{0.9, 0.9}, Case{0.8, 0.6}}) {
        auto fam = phase_encoded_family(loss_kraus_particle(LossParams(cse.ea, cse.eb)),
                                        half_sigma_z());
        auto qs = qs_optimize(fam);
        double expect = 4.0 / std::pow(std::sqrt((1 - cse.ea) / cse.ea) +
                                           std::sqrt((1 - cse.eb) / cse.eb),
                                       2);
        CHECK_FALSE(qs.infeasible);
        CHECK(qs.f_qs == doctest::Approx(expect).epsilon(1e-4));
    }
    // equal 50% loss: uncorrelated probes are already optimal
    auto fam_half = phase_encoded_family(loss_kraus_particle(LossParams(0.5, 0.5)),
                                         half_sigma_z());
    CHECK(qs_optimize(fam_half).f_qs == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("analytic optimal h satisfies both constraints") {
    for (auto [ea, eb] : {std::pair{0.5, 0.5}, {0.9, 0.9}, {0.8, 0.6}}) {
        auto sol = loss_qs_analytic(ea, eb);
        auto fam = phase_encoded_family(loss_kraus_particle(LossParams(ea, eb)), half_sigma_z());
        auto check = qs_check(fam, sol.h);
        CHECK(check.zero_constraint < 1e-8);
        CHECK(check.identity_constraint < 1e-8);
        CHECK(check.s_value == doctest::Approx(sol.f_qs).epsilon(1e-10));
    }
}

TEST_CASE("noiseless channel has no quantum simulation") {
    KrausChannel unitary{{Mat::Identity(2, 2)}};
    auto fam = phase_encoded_family(unitary, half_sigma_z());
    auto qs = qs_optimize(fam, 4);
    CHECK(qs.infeasible);
    CHECK(qs.constraint_residual > 1e-6);
}

TEST_CASE("penalty-ramp fallback reproduces the eliminated solution") {
    auto fam = phase_encoded_family(loss_kraus_particle(LossParams(0.8, 0.6)), half_sigma_z());
    auto penalty = qs_optimize(fam, 6, 7, true);
    double expect = 4.0 / std::pow(std::sqrt(0.2 / 0.8) + std::sqrt(0.4 / 0.6), 2);
    CHECK_FALSE(penalty.infeasible);
    CHECK(penalty.constraint_residual < 1e-6);
    CHECK(penalty.f_qs == doctest::Approx(expect).epsilon(1e-3));
}

TEST_CASE("qs for dephasing matches the cs bound") {
    double eta = 0.6;
    auto fam = phase_encoded_family(dephasing_kraus(eta), half_sigma_z());
    auto qs = qs_optimize(fam);
    auto cs = cs_epsilons(fam);
    CHECK_FALSE(qs.infeasible);
    CHECK(qs.f_qs == doctest::Approx(eta * eta / (1 - eta * eta)).epsilon(1e-4));
    CHECK(cs.fi_bound_per_photon >= qs.f_qs - 1e-4);
}

TEST_CASE("the two encodings of the loss bound agree") {
    for (auto [ea, eb] : {std::pair{0.5, 0.5}, {0.8, 0.6}}) {
        auto sol = loss_qs_analytic(ea, eb);
        double bound_n1 = asymptotic_loss_bound(1, ea, eb).delta_phi;
        CHECK(std::sqrt(sol.f_qs) * bound_n1 == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("vanishing channel derivative is rejected") {
    auto fam = phase_encoded_family(dephasing_kraus(0.7), Mat::Zero(2, 2));
    CHECK_THROWS_AS(cs_epsilons(fam), std::invalid_argument);
}

TEST_CASE("bound results carry consistent qfi equivalents") {
    auto b = asymptotic_loss_bound(77, 0.83, 0.64);
    CHECK(b.delta_phi == doctest::Approx(1.0 / std::sqrt(b.qfi_equivalent)).epsilon(1e-12));
    auto d = asymptotic_dephasing_bound(12, 0.5);
    CHECK(d.delta_phi == doctest::Approx(1.0 / std::sqrt(d.qfi_equivalent)).epsilon(1e-12));
}

TEST_CASE("entanglement witness") {
    CHECK(entanglement_witness(16.0, 4));
    CHECK_FALSE(entanglement_witness(4.0, 4));
    CHECK_FALSE(entanglement_witness(4.0 + 1e-12, 4));
    CHECK(entanglement_witness(4.1, 4));
}
