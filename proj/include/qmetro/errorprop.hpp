// Heisenberg-picture error-propagation precision for the photon-number
// difference measurement, ideal and decohered, plus Fabry-Perot / Michelson
// phase mappings.
#pragma once

#include "qmetro/numerics.hpp"

namespace qmetro {

struct InputMoments {
    double jx_mean = 0.0;
    double jz_mean = 0.0;
    double var_jx = 0.0;
    double var_jz = 0.0;
    double cov_xz = 0.0;
    double n_mean = 0.0;

    void validate() const;
};

InputMoments coherent_vacuum_moments(double alpha_sq);
InputMoments fock_moments(int n_photons);
InputMoments coherent_squeezed_moments(cxd alpha, double r);
// (|j,0> + |j,1>)/sqrt(2) with j = N/2 (even N).
InputMoments half_noon_like_moments(int n_photons);

struct DecoherencePenalty {
    enum class Kind { none, loss, dephasing };
    Kind kind = Kind::none;
    double eta = 1.0;

    static DecoherencePenalty none() { return {Kind::none, 1.0}; }
    static DecoherencePenalty loss(double eta);
    static DecoherencePenalty dephasing(double eta);

    // added-noise factor: 0, (1-eta)/eta, (1-eta^2)/eta^2
    double f() const;
};

// Delta Jz / |d<Jz>/dphi| with the decoherence rescaling folded in; throws on
// a vanishing signal derivative.
double precision(const InputMoments& moments, double phi, const DecoherencePenalty& penalty);

// Closed form for the coherent + squeezed-vacuum scheme (alpha taken real).
double coherent_squeezed_precision(double alpha, double r, double phi,
                                   const DecoherencePenalty& penalty);

// sqrt(e^{-2r} + f(eta)) / sqrt(nbar): the phi = pi/2 large-alpha form.
double coherent_squeezed_asymptotic(double r, const DecoherencePenalty& penalty, double nbar);

struct EnergySplit {
    double alpha_sq = 0.0;
    double r = 0.0;
    double precision = 0.0;
};

// Optimal coherent/squeezed energy split at phi = pi/2 for fixed nbar,
// found by 1-d minimization seeded at sinh^2 r = sqrt(nbar)/2.
EnergySplit optimal_coherent_squeezed_split(double nbar,
                                            const DecoherencePenalty& penalty =
                                                DecoherencePenalty::none());

struct FabryPerotMap {
    double phi_effective = 0.0;
    double conversion = 0.0;   // d(theta)/d(phi): Delta theta = conversion * Delta phi
    bool diverging = false;    // cos(theta) = 0
};

FabryPerotMap fabry_perot_map(double transmission, double theta);

// Light makes the round trip, so the effective MZ phase doubles.
inline double michelson_effective_phase(double phi_a, double phi_b) {
    return 2.0 * (phi_b - phi_a);
}

}  // namespace qmetro
