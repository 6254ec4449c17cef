// model.hpp: Hamiltonians of the optomechanical SSH ladder.
//
// Basis convention used everywhere in the library: each unit cell j holds the
// four modes (a_j, A_j, b_j, B_j) in that order and cells are contiguous, so
// mode s of cell j lives at index 4*j + s. a/A are optical, b/B mechanical.
// Energies are in units of J1, time in units of 1/J1, hbar = 1.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>

namespace topoladder {

using cplx = std::complex<double>;

// Six real couplings of one ladder.
struct LadderParams {
    double J1{1.0};     // intracell optical hopping (energy unit)
    double J2{0.0};     // intercell optical hopping
    double t1{0.0};     // intracell mechanical hopping
    double t2{0.0};     // intercell mechanical hopping
    double G{0.0};      // linearized optomechanical rung coupling
    double delta{0.0};  // detuning, +delta on a, -delta on A

    // Throws DomainError unless J1 > 0 and J2, t1, t2 >= 0, all finite.
    void validate() const;
};

// Two ladders closed into a ring through the seam couplings J3, t3 (A_N - a_{N+1},
// B_N - b_{N+1}) and J4, t4 (A_{2N} - a_1, B_{2N} - b_1).
struct RingParams {
    LadderParams left;
    LadderParams right;
    double J3{0.0};
    double J4{0.0};
    double t3{0.0};
    double t4{0.0};
    std::size_t N{2};  // cells per ladder
};

// G(t) = G_bar + G_tilde cos(2 pi t / T + phi0)
// delta(t) = delta_tilde sin(2 pi t / T_prime + phi0_prime)
struct ModulationProtocol {
    double G_bar{0.0};
    double G_tilde{0.0};
    double T{1.0};
    double phi0{0.0};
    double delta_tilde{0.0};
    double T_prime{1.0};
    double phi0_prime{0.0};

    void validate() const;
    // Smallest common period of G(t) and delta(t); throws DomainError when T/T'
    // is not a ratio of small integers.
    double loop_period() const;
};

enum class Site : int { a = 0, A = 1, b = 2, B = 3 };

constexpr bool is_mechanical(Site s) noexcept { return s == Site::b || s == Site::B; }
constexpr Eigen::Index mode_index(std::size_t cell, Site s) noexcept {
    return static_cast<Eigen::Index>(4 * cell) + static_cast<Eigen::Index>(s);
}
const char* site_name(Site s) noexcept;

using BlochMatrix = Eigen::Matrix4cd;
using RealSpaceHamiltonian = Eigen::MatrixXcd;

BlochMatrix bloch_hamiltonian(const LadderParams& p, double k);

// 4N x 4N open chain, no wraparound.
RealSpaceHamiltonian open_chain_hamiltonian(const LadderParams& p, std::size_t N);

// 8N x 8N ring; cells 0..N-1 use ring.left, N..2N-1 use ring.right.
RealSpaceHamiltonian ring_hamiltonian(const RingParams& ring);

LadderParams modulated_params(const LadderParams& base, const ModulationProtocol& proto, double t);

// S = diag(1, -1, -1, 1); anticommutes with H_k at delta = 0.
Eigen::Matrix4cd chiral_operator();

}  // namespace topoladder
