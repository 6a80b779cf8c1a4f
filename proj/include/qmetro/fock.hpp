// Two-mode definite-photon-number machinery: angular momentum operators on the
// |n, N-n> basis, interferometer unitaries, named probe states, sector
// projection of truncated two-mode amplitude grids and common-phase averaging.
//
// Basis ordering everywhere: index n = photons in mode a, ascending 0..N.
#pragma once

#include "qmetro/numerics.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qmetro {

// N-photon two-mode pure state, coefficients over |n, N-n>.
struct FockStateN {
    int n_total = 0;
    Vec coeffs;

    FockStateN() = default;
    FockStateN(int n, Vec c);   // validates length N+1 and unit norm (1e-12)

    int dim() const { return n_total + 1; }
    Mat density() const { return coeffs * coeffs.adjoint(); }
};

enum class NamedState { noon, sine, balanced, twin_fock };

FockStateN make_named_state(NamedState kind, int n_photons);

// Jx, Jy, Jz on the N-photon sector plus the scalar J^2 eigenvalue (N/2)(N/2+1).
struct AngularMomentumRep {
    int n_total = 0;
    Mat jx, jy, jz;
    double j2_eigenvalue = 0.0;
    int dim() const { return n_total + 1; }
};

AngularMomentumRep build_j_operators(int n_photons);

// Full Mach-Zehnder unitary exp(+i pi/2 Jx) exp(-i phi Jz) exp(-i pi/2 Jx),
// equal to exp(-i phi Jy). Heisenberg transport U^dag Jz U reproduces
// cos(phi) Jz - sin(phi) Jx.
Mat mz_unitary(int n_photons, double phi);

// Balanced beam splitter mapping a -> (a+b)/sqrt2, b -> (a-b)/sqrt2 on the
// N-photon sector (the Hong-Ou-Mandel convention).
Mat hadamard_beam_splitter(int n_photons);

// Truncated two-mode amplitude grid; amp(i, j) multiplies |i>_a |j>_b.
struct TwoModeGrid {
    Mat amp;
    double discarded_norm = 0.0;   // norm^2 lost to the truncation, as reported by the builder

    int dim_a() const { return static_cast<int>(amp.rows()); }
    int dim_b() const { return static_cast<int>(amp.cols()); }
    int max_total() const { return dim_a() + dim_b() - 2; }
    double norm_sq() const { return amp.squaredNorm(); }
};

// Product of two single-mode amplitude vectors. Discarded norms combine.
TwoModeGrid product_grid(const Vec& mode_a, double discarded_a,
                         const Vec& mode_b, double discarded_b);

// Refuses grids whose reported discarded norm exceeds 1e-6 unless allowed.
void check_grid_truncation(const TwoModeGrid& grid, bool allow_truncation);

struct SectorProjection {
    FockStateN state;
    double weight = 0.0;
};

SectorProjection project_sector(const TwoModeGrid& grid, int n_photons,
                                bool allow_truncation = false);

// Mixture of definite-photon-number sectors left after common-phase averaging.
struct IndefinitePhotonState {
    struct Sector {
        int n_total = 0;
        double weight = 0.0;
        std::variant<FockStateN, Mat> payload;

        bool is_pure() const { return std::holds_alternative<FockStateN>(payload); }
        const FockStateN& pure() const { return std::get<FockStateN>(payload); }
    };
    std::vector<Sector> sectors;
    double dropped_weight = 0.0;
};

IndefinitePhotonState phase_average(const TwoModeGrid& grid, bool allow_truncation = false);
// Averaging a sector mixture again is the identity (weights renormalized).
IndefinitePhotonState phase_average(const IndefinitePhotonState& state);

}  // namespace qmetro
