// edge.hpp: open-boundary spectra, edge-state detection, field distributions
// and interface states of the two-ladder ring.

#pragma once

#include "topoladder/model.hpp"
#include "topoladder/spectral.hpp"

#include <span>
#include <string>
#include <vector>

namespace topoladder {

enum class EdgeTag { ZeroEnergy, Shifted, Interface };
std::string to_string(EdgeTag t);

struct EdgeState {
    double energy{0.0};
    Eigen::Index eigen_index{0};
    Eigen::VectorXcd vector;
    Eigen::VectorXd site_probabilities;  // |u|^2 per mode
    double localization{0.0};            // weight within EdgeCriteria::cells of a boundary or seam
    double ipr{0.0};                     // inverse participation ratio
    EdgeTag tag{EdgeTag::ZeroEnergy};
};

struct EdgeCriteria {
    double gap_margin{1e-3};  // distance from every bulk band, units of J1
    double min_weight{0.6};
    std::size_t cells{3};
    double zero_energy_tol{0.05};
};

struct SpectralScan {
    std::vector<double> G_values;
    std::vector<Eigen::VectorXd> eigenvalues;  // ascending, 4N each
    std::vector<std::vector<EdgeState>> edge_states;
};

inline constexpr std::size_t kBulkGridPoints = 2001;

// Periodic-system band ranges for a ladder, used as the gap reference.
BandStructure bulk_reference(const LadderParams& p, std::size_t points = kBulkGridPoints);

bool inside_bulk_gap(double energy, std::span<const BandStructure* const> bulk, double margin);

// Cell-resolved probability of a 4*cells vector.
Eigen::VectorXd cell_probabilities(const Eigen::VectorXcd& psi);
double inverse_participation_ratio(const Eigen::VectorXcd& psi);

SpectralScan spectrum_vs_G(const LadderParams& tmpl, std::span<const double> G_values,
                           std::size_t N, const EdgeCriteria& crit = {});

// Eigenstates of an open chain lying in a bulk gap and concentrated near
// either end.
std::vector<EdgeState> detect_edge_states(const RealSpaceHamiltonian& H,
                                          const BandStructure& bulk,
                                          const EdgeCriteria& crit = {});

// Probabilities per sublattice: column s of the returned N x 4 matrix holds
// |u_s(j)|^2 for s in (a, A, b, B).
struct FieldDistribution {
    Eigen::MatrixXd probs;
    std::size_t cells() const { return static_cast<std::size_t>(probs.rows()); }
    const Eigen::MatrixXd::ConstColXpr sublattice(Site s) const {
        return probs.col(static_cast<int>(s));
    }
    // Mode (cell, site) with the largest probability among the given sites.
    std::pair<std::size_t, Site> argmax(std::span<const Site> sites) const;
};

FieldDistribution field_distribution(const EdgeState& state, std::size_t cells);

std::vector<EdgeState> ring_interface_states(const RingParams& ring, const EdgeCriteria& crit = {});

}  // namespace topoladder
