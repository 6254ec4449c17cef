#include "topoladder/topology.hpp"

#include "topoladder/errors.hpp"
#include "topoladder/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace topoladder {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_to_half_open(double phase) {
    // (-pi, pi]
    return phase <= -pi ? phase + 2.0 * pi : phase;
}

struct Eigenframe {
    Eigen::Vector4d energies;
    Eigen::Matrix4cd vectors;
};

Eigenframe solve(const Eigen::Matrix4cd& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(H);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

// Loop k_i = -pi + 2 pi i / M, i = 0..M-1.
std::vector<Eigenframe> loop_frames(const LadderParams& p, std::size_t M) {
    if (M < 3) throw InvalidSizeError("Berry loop needs at least 3 k points");
    std::vector<Eigenframe> frames;
    frames.reserve(M);
    for (std::size_t i = 0; i < M; ++i) {
        const double k = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(M);
        frames.push_back(solve(bloch_hamiltonian(p, k)));
    }
    return frames;
}

void require_isolated(const std::vector<Eigenframe>& frames, int n, std::size_t M) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto& e = frames[i].energies;
        const bool below = n > 0 && e(n) - e(n - 1) < kBandTouchTol;
        const bool above = n < 3 && e(n + 1) - e(n) < kBandTouchTol;
        if (below || above) {
            const double k = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(M);
            throw DegenerateBandError("band " + std::to_string(n + 1) +
                                          " touches a neighbour at k = " + std::to_string(k),
                                      k);
        }
    }
}

double loop_phase(const std::vector<Eigenframe>& frames, int n) {
    cplx prod{1.0, 0.0};
    const std::size_t M = frames.size();
    for (std::size_t i = 0; i < M; ++i) {
        const auto& u = frames[i].vectors.col(n);
        const auto& v = frames[(i + 1) % M].vectors.col(n);
        prod *= u.dot(v);  // conj(u) . v
        prod /= std::abs(prod);
    }
    return wrap_to_half_open(-std::arg(prod));
}

}  // namespace

double wilson_loop_phase(std::span<const Eigen::Vector4cd> states) {
    if (states.size() < 2) throw InvalidSizeError("wilson_loop_phase: need at least 2 states");
    cplx prod{1.0, 0.0};
    for (std::size_t i = 0; i < states.size(); ++i) {
        prod *= states[i].dot(states[(i + 1) % states.size()]);
        const double mag = std::abs(prod);
        if (mag == 0.0) throw NumericalError("wilson_loop_phase: orthogonal neighbouring states");
        prod /= mag;
    }
    return wrap_to_half_open(-std::arg(prod));
}

double berry_phase(const LadderParams& p, int band, std::size_t M) {
    if (band < 1 || band > 4) throw DomainError("berry_phase: band must be in 1..4");
    const auto frames = loop_frames(p, M);
    require_isolated(frames, band - 1, M);
    return loop_phase(frames, band - 1);
}

std::array<double, 4> berry_phases(const LadderParams& p, std::size_t M) {
    const auto frames = loop_frames(p, M);
    std::array<double, 4> out{};
    for (int n = 0; n < 4; ++n) {
        require_isolated(frames, n, M);
        out[n] = loop_phase(frames, n);
    }
    return out;
}

std::string to_string(PhaseClass c) {
    switch (c) {
        case PhaseClass::I: return "I";
        case PhaseClass::II: return "II";
        case PhaseClass::III: return "III";
        case PhaseClass::IV: return "IV";
        case PhaseClass::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

double snap_phase(double gamma, double tol) {
    const double mag = std::abs(gamma);
    if (mag <= tol) return 0.0;
    if (std::abs(mag - pi) <= tol) return pi;
    return std::numeric_limits<double>::quiet_NaN();
}

PhaseClass class_from_snapped(const std::array<double, 4>& s) {
    std::array<int, 4> bits{};
    for (int n = 0; n < 4; ++n) {
        if (std::isnan(s[n])) return PhaseClass::Undetermined;
        bits[n] = s[n] == 0.0 ? 0 : 1;
    }
    if (bits == std::array<int, 4>{0, 0, 0, 0}) return PhaseClass::I;
    if (bits == std::array<int, 4>{0, 1, 1, 0}) return PhaseClass::II;
    if (bits == std::array<int, 4>{1, 0, 0, 1}) return PhaseClass::III;
    if (bits == std::array<int, 4>{1, 1, 1, 1}) return PhaseClass::IV;
    return PhaseClass::Undetermined;
}

PhaseLabel classify_phase(const LadderParams& p, std::size_t M) {
    if (p.delta != 0.0) throw DomainError("classify_phase: phase classes are defined at delta = 0");
    PhaseLabel label;
    label.raw = berry_phases(p, M);
    for (int n = 0; n < 4; ++n) label.snapped[n] = snap_phase(label.raw[n]);
    label.cls = class_from_snapped(label.snapped);
    return label;
}

cplx chiral_determinant(const LadderParams& p, double k) {
    const cplx phase = std::polar(1.0, k);
    const cplx rho1 = p.J1 + p.J2 * phase;
    const cplx rho2 = p.t1 + p.t2 * phase;
    return p.G * p.G - rho1 * std::conj(rho2);
}

namespace {

constexpr double kZeroZ = 1e-9;

// Phase change of Z along [k0, k1], subdividing until every step turns by
// less than pi/4 so the principal value cannot alias.
double accumulate_arg(const LadderParams& p, double k0, cplx z0, double k1, cplx z1, int depth) {
    const double step = std::arg(z1 / z0);
    if (std::abs(step) < pi / 4.0 || depth > 40) return step;
    const double km = 0.5 * (k0 + k1);
    const cplx zm = chiral_determinant(p, km);
    if (std::abs(zm) < kZeroZ) {
        throw OnBoundaryError("winding_number: Z(k) vanishes near k = " + std::to_string(km), km);
    }
    return accumulate_arg(p, k0, z0, km, zm, depth + 1) +
           accumulate_arg(p, km, zm, k1, z1, depth + 1);
}

}  // namespace

int winding_number(const LadderParams& p, std::size_t M) {
    if (p.delta != 0.0) throw DomainError("winding_number: requires delta = 0");
    if (M < 3) throw InvalidSizeError("winding_number: need at least 3 k points");
    std::vector<cplx> z(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        const double k = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(M);
        z[i] = chiral_determinant(p, k);
        if (std::abs(z[i]) < kZeroZ) {
            throw OnBoundaryError("winding_number: Z(k) vanishes at k = " + std::to_string(k), k);
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const double k0 = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(M);
        const double k1 = -pi + 2.0 * pi * static_cast<double>(i + 1) / static_cast<double>(M);
        total += accumulate_arg(p, k0, z[i], k1, z[i + 1], 0);
    }
    return -static_cast<int>(std::lround(total / (2.0 * pi)));
}

ChernSet chern_numbers(const LadderParams& base, const ModulationProtocol& proto, std::size_t Nk,
                       std::size_t Nt, unsigned threads) {
    if (Nk < 2 || Nt < 2) throw InvalidSizeError("chern_numbers: grid must be at least 2x2");
    const double period = proto.loop_period();
    auto k_at = [&](std::size_t i) {
        return -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(Nk);
    };
    auto t_at = [&](std::size_t j) {
        return period * static_cast<double>(j) / static_cast<double>(Nt);
    };

    // frames[i * Nt + j] at (k_i, t_j)
    std::vector<Eigenframe> frames(Nk * Nt);
    parallel_for(Nk * Nt, threads, [&](std::size_t idx) {
        const std::size_t i = idx / Nt;
        const std::size_t j = idx % Nt;
        const LadderParams p = modulated_params(base, proto, t_at(j));
        frames[idx] = solve(bloch_hamiltonian(p, k_at(i)));
    });
    for (std::size_t idx = 0; idx < frames.size(); ++idx) {
        const auto& e = frames[idx].energies;
        for (int n = 0; n < 3; ++n) {
            if (e(n + 1) - e(n) < kBandTouchTol) {
                const double k = k_at(idx / Nt);
                const double t = t_at(idx % Nt);
                throw DegenerateTorusError("chern_numbers: bands " + std::to_string(n + 1) + "/" +
                                               std::to_string(n + 2) + " touch at k = " +
                                               std::to_string(k) + ", t = " + std::to_string(t),
                                           k, t);
            }
        }
    }

    auto link = [&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1, int n) {
        const cplx ov = frames[i0 * Nt + j0].vectors.col(n).dot(frames[i1 * Nt + j1].vectors.col(n));
        return ov / std::abs(ov);
    };

    ChernSet out;
    out.Nk = Nk;
    out.Nt = Nt;
    out.protocol = proto;
    for (int n = 0; n < 4; ++n) {
        double flux = 0.0;
        for (std::size_t i = 0; i < Nk; ++i) {
            const std::size_t ip = (i + 1) % Nk;
            for (std::size_t j = 0; j < Nt; ++j) {
                const std::size_t jp = (j + 1) % Nt;
                const cplx plaquette = link(i, j, ip, j, n) * link(ip, j, ip, jp, n) *
                                       std::conj(link(i, jp, ip, jp, n)) *
                                       std::conj(link(i, j, i, jp, n));
                flux += std::arg(plaquette);
            }
        }
        const double c = -flux / (2.0 * pi);
        const double rounded = std::round(c);
        if (std::abs(c - rounded) > 1e-6) {
            throw NumericalError("chern_numbers: non-integer lattice flux " + std::to_string(c));
        }
        out.c[n] = static_cast<int>(rounded);
    }
    return out;
}

}  // namespace topoladder
