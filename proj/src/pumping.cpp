#include "topoladder/pumping.hpp"

#include "topoladder/edge.hpp"
#include "topoladder/errors.hpp"

#include <algorithm>
#include <cmath>

namespace topoladder {

namespace {

Eigen::MatrixXd real_hamiltonian(const LadderParams& base, const ModulationProtocol& proto,
                                 std::size_t N, double t) {
    return open_chain_hamiltonian(modulated_params(base, proto, t), N).real();
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(const Eigen::MatrixXd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed in pumping");
    return solver;
}

// Runs [first, last) of ascending eigenvalues closer than kDegenerateTol.
std::vector<std::pair<Eigen::Index, Eigen::Index>> degenerate_clusters(const Eigen::VectorXd& w) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    Eigen::Index first = 0;
    for (Eigen::Index n = 1; n <= w.size(); ++n) {
        if (n == w.size() || w(n) - w(n - 1) > kDegenerateTol) {
            out.emplace_back(first, n);
            first = n;
        }
    }
    return out;
}

const std::pair<Eigen::Index, Eigen::Index>& cluster_of(
    const std::vector<std::pair<Eigen::Index, Eigen::Index>>& clusters, Eigen::Index n) {
    for (const auto& cl : clusters) {
        if (n >= cl.first && n < cl.second) return cl;
    }
    throw NumericalError("cluster_of: index outside the spectrum");
}

}  // namespace

int select_start_state(const LadderParams& base, const ModulationProtocol& proto, std::size_t N,
                       Eigen::Index site_index) {
    const LadderParams p0 = modulated_params(base, proto, 0.0);
    const auto H = open_chain_hamiltonian(p0, N);
    const auto edges = detect_edge_states(H, bulk_reference(p0));
    int best = -1;
    double best_w = -1.0;
    for (const auto& s : edges) {
        const double w = s.site_probabilities(site_index);
        if (w > best_w) {
            best_w = w;
            best = static_cast<int>(s.eigen_index);
        }
    }
    if (best >= 0) return best;
    const auto solver = eig(H.real());
    Eigen::Index row = 0;
    solver.eigenvectors().row(site_index).cwiseAbs2().maxCoeff(&row);
    return static_cast<int>(row);
}

TrackedSpectrum instantaneous_spectrum(const LadderParams& base, const ModulationProtocol& proto,
                                       std::size_t N, std::size_t Nt, std::optional<int> start) {
    if (Nt < 2) throw InvalidSizeError("instantaneous_spectrum: Nt must be >= 2");
    const double period = proto.loop_period();
    const Eigen::Index B0 = mode_index(0, Site::B);
    int idx = start ? *start : select_start_state(base, proto, N, B0);
    if (idx < 0 || idx >= static_cast<int>(4 * N)) throw DomainError("instantaneous_spectrum: bad start index");

    TrackedSpectrum ts;
    Eigen::VectorXd prev;
    // Sorted index at the last step where the followed level was isolated;
    // -1 while the state sits in a degenerate cluster.
    int clean_idx = -1;
    for (std::size_t i = 0; i <= Nt; ++i) {
        const double t = period * static_cast<double>(i) / static_cast<double>(Nt);
        const auto solver = eig(real_hamiltonian(base, proto, N, t));
        const Eigen::VectorXd& w = solver.eigenvalues();
        const Eigen::MatrixXd& V = solver.eigenvectors();
        const auto clusters = degenerate_clusters(w);
        Eigen::VectorXd v;
        std::pair<Eigen::Index, Eigen::Index> cl;
        if (i == 0) {
            // End states of a finite chain hybridize into even and odd
            // combinations. Pick the combination most concentrated on B_0 so
            // the state starts localized.
            cl = cluster_of(clusters, idx);
            v = V.col(idx);
            if (cl.second - cl.first > 1) {
                const auto block = V.middleCols(cl.first, cl.second - cl.first);
                const Eigen::VectorXd proj = block * block.row(B0).transpose();
                if (proj.norm() > 1e-12) v = proj.normalized();
            }
        } else {
            const Eigen::VectorXd ov = V.transpose() * prev;
            double best_norm = -1.0;
            for (const auto& c : clusters) {
                const double nrm = ov.segment(c.first, c.second - c.first).norm();
                if (nrm > best_norm) {
                    best_norm = nrm;
                    cl = c;
                }
            }
            const Eigen::Index len = cl.second - cl.first;
            v = V.middleCols(cl.first, len) * ov.segment(cl.first, len) / best_norm;
            Eigen::Index inner = 0;
            ov.segment(cl.first, len).cwiseAbs().maxCoeff(&inner);
            idx = static_cast<int>(cl.first + inner);
            ts.tracked_overlap.push_back(best_norm);
            const bool isolated = len == 1;
            const bool jumped = isolated && clean_idx >= 0 && idx != clean_idx;
            if (best_norm < kTrackConfidence || jumped) ts.crossings.push_back(i - 1);
        }
        clean_idx = cl.second - cl.first == 1 ? idx : clean_idx;
        if (i == 0 && cl.second - cl.first > 1) clean_idx = -1;
        prev = v;
        ts.times.push_back(t);
        ts.energies.push_back(w);
        ts.tracked_index_path.push_back(idx);
        ts.tracked_energy.push_back(v.dot(real_hamiltonian(base, proto, N, t) * v));
        ts.tracked_states.push_back(v.cast<cplx>());
        ts.tracked_distribution.push_back(v.cwiseAbs2());
    }
    ts.tracked_overlap.push_back(1.0);
    return ts;
}

double max_hamiltonian_norm(const LadderParams& base, const ModulationProtocol& proto, std::size_t N,
                            double t_final, std::size_t samples) {
    double norm = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.0 : t_final * static_cast<double>(i) / static_cast<double>(samples - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real_hamiltonian(base, proto, N, t),
                                                              Eigen::EigenvaluesOnly);
        norm = std::max(norm, solver.eigenvalues().cwiseAbs().maxCoeff());
    }
    return norm;
}

EvolutionResult evolve(const LadderParams& base, const ModulationProtocol& proto, std::size_t N,
                       const Eigen::VectorXcd& psi0, double t_final, double dt,
                       std::size_t record_stride) {
    if (static_cast<std::size_t>(psi0.size()) != 4 * N) throw InvalidSizeError("evolve: psi0 has wrong length");
    if (std::abs(psi0.squaredNorm() - 1.0) > 1e-12) throw DomainError("evolve: psi0 must be normalized");
    if (!(dt > 0.0) || !(t_final >= 0.0)) throw DomainError("evolve: need dt > 0 and t_final >= 0");
    if (record_stride == 0) throw DomainError("evolve: record_stride must be positive");
    const double hnorm = max_hamiltonian_norm(base, proto, N, t_final);
    if (dt * hnorm >= kMaxStepNorm) {
        throw StabilityError("evolve: dt * ||H|| = " + std::to_string(dt * hnorm) + " exceeds " +
                             std::to_string(kMaxStepNorm));
    }
    const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
    if (std::abs(static_cast<double>(steps) * dt - t_final) > 1e-9 * std::max(1.0, t_final)) {
        throw DomainError("evolve: t_final must be an integer multiple of dt");
    }

    EvolutionResult res;
    Eigen::VectorXcd psi = psi0;
    auto record = [&](double t) {
        res.times.push_back(t);
        res.states.push_back(psi);
        res.site_probabilities.push_back(psi.cwiseAbs2());
    };
    record(0.0);
    for (std::size_t s = 0; s < steps; ++s) {
        const double tm = (static_cast<double>(s) + 0.5) * dt;
        const auto solver = eig(real_hamiltonian(base, proto, N, tm));
        const Eigen::VectorXd& w = solver.eigenvalues();
        if (dt * w.cwiseAbs().maxCoeff() >= kMaxStepNorm) {
            throw StabilityError("evolve: step bound exceeded at t = " + std::to_string(tm));
        }
        const Eigen::MatrixXd& V = solver.eigenvectors();
        Eigen::VectorXcd c = V.transpose() * psi;
        for (Eigen::Index n = 0; n < c.size(); ++n) c(n) *= std::polar(1.0, -w(n) * dt);
        psi = V * c;
        res.norm_drift = std::max(res.norm_drift, std::abs(psi.squaredNorm() - 1.0));
        if ((s + 1) % record_stride == 0 || s + 1 == steps) record(static_cast<double>(s + 1) * dt);
    }
    return res;
}

Eigen::VectorXcd basis_state(std::size_t N, Eigen::Index index) {
    if (index < 0 || index >= static_cast<Eigen::Index>(4 * N)) throw DomainError("basis_state: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(4 * N));
    v(index) = 1.0;
    return v;
}

double center_of_mass(const Eigen::VectorXd& site_probabilities) {
    if (site_probabilities.size() % 4 != 0) throw InvalidSizeError("center_of_mass: length not a multiple of 4");
    double com = 0.0;
    double total = 0.0;
    for (Eigen::Index j = 0; j < site_probabilities.size() / 4; ++j) {
        const double pj = site_probabilities.segment(4 * j, 4).sum();
        com += static_cast<double>(j) * pj;
        total += pj;
    }
    return com / total;
}

double pump_displacement(const EvolutionResult& result, std::size_t N) {
    if (result.site_probabilities.empty()) throw DomainError("pump_displacement: empty result");
    if (static_cast<std::size_t>(result.site_probabilities.front().size()) != 4 * N) {
        throw InvalidSizeError("pump_displacement: N does not match the result");
    }
    return center_of_mass(result.site_probabilities.back()) -
           center_of_mass(result.site_probabilities.front());
}

double right_edge_weight(const Eigen::VectorXd& site_probabilities, std::size_t cells) {
    const auto n = static_cast<Eigen::Index>(4 * cells);
    if (n > site_probabilities.size()) throw DomainError("right_edge_weight: more cells than the chain has");
    return site_probabilities.tail(n).sum();
}

}  // namespace topoladder
