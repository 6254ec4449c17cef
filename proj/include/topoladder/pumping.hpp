// pumping.hpp: instantaneous spectra of the modulated open ladder and
// Schrodinger evolution of a localized excitation.

#pragma once

#include "topoladder/model.hpp"

#include <optional>
#include <vector>

namespace topoladder {

inline constexpr double kTrackConfidence = 0.9;
inline constexpr double kMaxStepNorm = 0.1;  // dt * ||H|| bound
// Levels closer than this are followed as one subspace. Hybridized end-state
// pairs of a 10-cell chain split by far less.
inline constexpr double kDegenerateTol = 1e-4;

struct TrackedSpectrum {
    std::vector<double> times;                  // Nt + 1 points over one loop period
    std::vector<Eigen::VectorXd> energies;      // ascending, 4N each
    std::vector<int> tracked_index_path;        // sorted index of the followed state
    std::vector<double> tracked_energy;         // <psi|H|psi>
    std::vector<double> tracked_overlap;        // projection weight onto the next level, last entry 1
    std::vector<Eigen::VectorXcd> tracked_states;
    std::vector<Eigen::VectorXd> tracked_distribution;  // |psi|^2 per mode
    // Time indices i where the step i -> i+1 either loses overlap below
    // kTrackConfidence or passes through another level (the sorted index
    // differs from the one at the last step where the level was isolated).
    std::vector<std::size_t> crossings;
};

// Instantaneous eigenstate at t = 0 to follow: the in-gap state with the
// largest weight on `site_index`, or the largest-weight state overall when the
// gap is empty.
int select_start_state(const LadderParams& base, const ModulationProtocol& proto, std::size_t N,
                       Eigen::Index site_index);

// Diagonalizes H(t) at Nt + 1 times over one loop period and follows one
// eigenstate by maximal successive overlap. Near-degenerate levels are
// treated as one subspace and the state is carried by projection, so a pair
// of hybridized end states does not break the path. `start` defaults to
// select_start_state(..., B_0).
TrackedSpectrum instantaneous_spectrum(const LadderParams& base, const ModulationProtocol& proto,
                                       std::size_t N, std::size_t Nt,
                                       std::optional<int> start = std::nullopt);

struct EvolutionResult {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    std::vector<Eigen::VectorXd> site_probabilities;
    double norm_drift{0.0};  // max | ||psi||^2 - 1 | over all steps
};

// Largest spectral norm of H(t) over `samples` evenly spaced times in [0, t_final].
double max_hamiltonian_norm(const LadderParams& base, const ModulationProtocol& proto, std::size_t N,
                            double t_final, std::size_t samples = 257);

// Midpoint exponential propagator psi <- exp(-i H(t + dt/2) dt) psi.
// Records every `record_stride`-th step plus the final state. Throws
// StabilityError when dt * ||H|| >= kMaxStepNorm.
EvolutionResult evolve(const LadderParams& base, const ModulationProtocol& proto, std::size_t N,
                       const Eigen::VectorXcd& psi0, double t_final, double dt,
                       std::size_t record_stride = 100);

// Basis state localized on one mode.
Eigen::VectorXcd basis_state(std::size_t N, Eigen::Index index);

// Cell center of mass sum_j j P_cell(j).
double center_of_mass(const Eigen::VectorXd& site_probabilities);

// Center-of-mass change between the first and last recorded state, in cells.
double pump_displacement(const EvolutionResult& result, std::size_t N);

// Probability within `cells` cells of the right end.
double right_edge_weight(const Eigen::VectorXd& site_probabilities, std::size_t cells = 3);

}  // namespace topoladder
