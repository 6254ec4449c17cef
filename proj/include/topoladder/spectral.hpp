// spectral.hpp: Bloch bands, closed-form resonant bands, gaps and the analytic
// phase boundaries of the ladder.
//
// Naming of the gap-closing couplings: the literature labels the two critical
// couplings inconsistently (G_{c,1} and G_{c,2} swap between texts), so this
// library uses sign-explicit names:
//   G_plus  = sqrt((J1 + J2)(t1 + t2))   gap E2/E3 closes at k = 0
//   G_minus = sqrt((J1 - J2)(t1 - t2))   gap E2/E3 closes at k = pi
// Interior branch (only when t1*J2 == J1*t2):
//   G_c3(k) = sqrt(J1 t1 + J2 t2 + (J2 t1 + J1 t2) cos k)
// Nonzero-energy closing E1 = E2, E3 = E4 at k = pi:  J2_c = J1 + t1 - t2.

#pragma once

#include "topoladder/model.hpp"

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace topoladder {

struct BandStructure {
    std::vector<double> k_grid;
    std::vector<Eigen::Vector4d> energies;       // ascending per k
    std::vector<Eigen::Matrix4cd> eigenvectors;  // columns match energies

    std::size_t size() const noexcept { return k_grid.size(); }
    // [min, max] of band n (0-based) over the grid.
    std::pair<double, double> band_range(int n) const;
};

// Uniform grid of M points on (-pi, pi]; includes pi, excludes -pi.
std::vector<double> brillouin_grid(std::size_t M);
// M points on [-pi, pi] inclusive at both ends (for plotting/gap scans).
std::vector<double> closed_k_grid(std::size_t M);

BandStructure band_structure(const LadderParams& p, std::span<const double> k_grid);

// Closed-form E1..E4 at delta = 0, sorted ascending.
std::array<double, 4> analytic_bands(const LadderParams& p, double k);

struct BoundarySet {
    double G_plus{0.0};
    std::optional<double> G_minus;  // absent when (J1-J2)(t1-t2) < 0
    bool interior_condition{false}; // t1*J2 == J1*t2 within relative 1e-9
    double J2_c{0.0};

    // Interior-branch coupling at wave number k; nullopt when the radicand is
    // negative.
    std::optional<double> G_c3(double k) const;

    LadderParams source;
};

BoundarySet phase_boundaries(const LadderParams& p);

// Wave numbers +-k where the interior branch closes the E2/E3 gap at the
// given G; nullopt if the interior condition does not hold or cos k leaves [-1, 1].
std::optional<double> interior_closing_k(const LadderParams& p);

struct GapMinimum {
    double gap{0.0};
    double k{0.0};
};

// Minimum over the grid of E_{lower+1} - E_lower; `lower` is the 1-based index
// of the lower band of an adjacent pair (1, 2 or 3).
GapMinimum min_gap(const BandStructure& bs, int lower);

// Golden-section refinement of the gap minimum on [k_lo, k_hi].
GapMinimum refine_min_gap(const LadderParams& p, int lower, double k_lo, double k_hi,
                          double tol = 1e-12);

// Dense-grid scan followed by refinement; the "closed" test uses kGapClosedTol.
inline constexpr double kGapClosedTol = 1e-6;
inline constexpr std::size_t kGapScanPoints = 2001;
GapMinimum scan_min_gap(const LadderParams& p, int lower, std::size_t points = kGapScanPoints);

// Reorders bands along the grid by maximal eigenvector overlap so that a band
// index follows one continuous branch through crossings. Plotting only.
std::vector<std::array<int, 4>> track_bands(const BandStructure& bs);

}  // namespace topoladder
