#include "topoladder/edge.hpp"

#include "topoladder/errors.hpp"

#include <array>
#include <cmath>

namespace topoladder {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> diagonalize(const RealSpaceHamiltonian& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("real-space eigensolver failed (dimension " +
                             std::to_string(H.rows()) + ")");
    }
    return solver;
}

EdgeState make_state(const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>& solver,
                     Eigen::Index i) {
    EdgeState s;
    s.energy = solver.eigenvalues()(i);
    s.eigen_index = i;
    s.vector = solver.eigenvectors().col(i);
    s.site_probabilities = s.vector.cwiseAbs2();
    s.ipr = inverse_participation_ratio(s.vector);
    return s;
}

double weight_in_cells(const Eigen::VectorXd& cell_p, std::span<const std::size_t> cells) {
    double w = 0.0;
    for (std::size_t c : cells) w += cell_p(static_cast<Eigen::Index>(c));
    return w;
}

}  // namespace

std::string to_string(EdgeTag t) {
    switch (t) {
        case EdgeTag::ZeroEnergy: return "zero-energy";
        case EdgeTag::Shifted: return "shifted";
        case EdgeTag::Interface: return "interface";
    }
    return "?";
}

BandStructure bulk_reference(const LadderParams& p, std::size_t points) {
    const auto ks = closed_k_grid(points);
    return band_structure(p, ks);
}

bool inside_bulk_gap(double energy, std::span<const BandStructure* const> bulk, double margin) {
    for (const BandStructure* bs : bulk) {
        for (int n = 0; n < 4; ++n) {
            const auto [lo, hi] = bs->band_range(n);
            if (energy >= lo - margin && energy <= hi + margin) return false;
        }
    }
    return true;
}

Eigen::VectorXd cell_probabilities(const Eigen::VectorXcd& psi) {
    if (psi.size() % 4 != 0) throw InvalidSizeError("cell_probabilities: length not a multiple of 4");
    const Eigen::Index cells = psi.size() / 4;
    Eigen::VectorXd out(cells);
    for (Eigen::Index j = 0; j < cells; ++j) out(j) = psi.segment(4 * j, 4).squaredNorm();
    return out;
}

double inverse_participation_ratio(const Eigen::VectorXcd& psi) {
    const double norm2 = psi.squaredNorm();
    return psi.cwiseAbs2().array().square().sum() / (norm2 * norm2);
}

std::vector<EdgeState> detect_edge_states(const RealSpaceHamiltonian& H, const BandStructure& bulk,
                                          const EdgeCriteria& crit) {
    if (H.rows() % 4 != 0 || H.rows() != H.cols()) {
        throw InvalidSizeError("detect_edge_states: expected a square 4N x 4N Hamiltonian");
    }
    const std::size_t N = static_cast<std::size_t>(H.rows() / 4);
    std::vector<std::size_t> boundary_cells;
    for (std::size_t c = 0; c < N; ++c) {
        if (c < crit.cells || c + crit.cells >= N) boundary_cells.push_back(c);
    }
    const auto solver = diagonalize(H);
    const std::array<const BandStructure*, 1> ref{&bulk};
    std::vector<EdgeState> out;
    for (Eigen::Index i = 0; i < H.rows(); ++i) {
        const double e = solver.eigenvalues()(i);
        if (!inside_bulk_gap(e, ref, crit.gap_margin)) continue;
        EdgeState s = make_state(solver, i);
        s.localization = weight_in_cells(cell_probabilities(s.vector), boundary_cells);
        if (s.localization <= crit.min_weight) continue;
        s.tag = std::abs(e) < crit.zero_energy_tol ? EdgeTag::ZeroEnergy : EdgeTag::Shifted;
        out.push_back(std::move(s));
    }
    return out;
}

SpectralScan spectrum_vs_G(const LadderParams& tmpl, std::span<const double> G_values,
                           std::size_t N, const EdgeCriteria& crit) {
    if (N < 4) throw InvalidSizeError("spectrum_vs_G: N must be >= 4");
    SpectralScan scan;
    scan.G_values.assign(G_values.begin(), G_values.end());
    for (double G : G_values) {
        LadderParams p = tmpl;
        p.G = G;
        const auto H = open_chain_hamiltonian(p, N);
        scan.eigenvalues.push_back(diagonalize(H).eigenvalues());
        scan.edge_states.push_back(detect_edge_states(H, bulk_reference(p), crit));
    }
    return scan;
}

std::pair<std::size_t, Site> FieldDistribution::argmax(std::span<const Site> sites) const {
    double best = -1.0;
    std::pair<std::size_t, Site> where{0, Site::a};
    for (Eigen::Index j = 0; j < probs.rows(); ++j) {
        for (Site s : sites) {
            const double v = probs(j, static_cast<int>(s));
            if (v > best) {
                best = v;
                where = {static_cast<std::size_t>(j), s};
            }
        }
    }
    return where;
}

FieldDistribution field_distribution(const EdgeState& state, std::size_t cells) {
    if (static_cast<std::size_t>(state.vector.size()) != 4 * cells) {
        throw InvalidSizeError("field_distribution: vector length does not match 4 * cells");
    }
    const double norm2 = state.vector.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-8) throw DomainError("field_distribution: state is not normalized");
    FieldDistribution fd;
    fd.probs.resize(static_cast<Eigen::Index>(cells), 4);
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(cells); ++j) {
        for (int s = 0; s < 4; ++s) fd.probs(j, s) = std::norm(state.vector(4 * j + s));
    }
    return fd;
}

std::vector<EdgeState> ring_interface_states(const RingParams& ring, const EdgeCriteria& crit) {
    const std::size_t N = ring.N;
    const auto H = ring_hamiltonian(ring);
    const std::size_t total = 2 * N;
    // Cells within crit.cells of either seam: (N-1 | N) and (2N-1 | 0).
    std::vector<std::size_t> seam_cells;
    for (std::size_t c = 0; c < total; ++c) {
        const bool near_first = c + crit.cells >= N && c < N + crit.cells;
        const bool near_second = c < crit.cells || c + crit.cells >= total;
        if (near_first || near_second) seam_cells.push_back(c);
    }
    const BandStructure bl = bulk_reference(ring.left);
    const BandStructure br = bulk_reference(ring.right);
    const std::array<const BandStructure*, 2> ref{&bl, &br};
    const auto solver = diagonalize(H);
    std::vector<EdgeState> out;
    for (Eigen::Index i = 0; i < H.rows(); ++i) {
        const double e = solver.eigenvalues()(i);
        if (!inside_bulk_gap(e, ref, crit.gap_margin)) continue;
        EdgeState s = make_state(solver, i);
        s.localization = weight_in_cells(cell_probabilities(s.vector), seam_cells);
        if (s.localization <= crit.min_weight) continue;
        s.tag = EdgeTag::Interface;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace topoladder
