#include "topoladder/model.hpp"

#include "topoladder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <string>

namespace topoladder {

namespace {

bool finite_all(std::initializer_list<double> xs) {
    for (double x : xs) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

// Intracell terms of cell j.
void add_cell(RealSpaceHamiltonian& H, std::size_t j, const LadderParams& p) {
    const auto a = mode_index(j, Site::a);
    const auto A = mode_index(j, Site::A);
    const auto b = mode_index(j, Site::b);
    const auto B = mode_index(j, Site::B);
    H(a, a) = p.delta;
    H(A, A) = -p.delta;
    H(a, A) = H(A, a) = p.J1;
    H(b, B) = H(B, b) = p.t1;
    H(a, b) = H(b, a) = -p.G;
    H(A, B) = H(B, A) = -p.G;
}

void add_intercell(RealSpaceHamiltonian& H, std::size_t j, std::size_t next, double J, double t) {
    const auto A = mode_index(j, Site::A);
    const auto B = mode_index(j, Site::B);
    const auto a_next = mode_index(next, Site::a);
    const auto b_next = mode_index(next, Site::b);
    H(A, a_next) = H(a_next, A) = J;
    H(B, b_next) = H(b_next, B) = t;
}

}  // namespace

void LadderParams::validate() const {
    if (!finite_all({J1, J2, t1, t2, G, delta})) {
        throw DomainError("LadderParams: all couplings must be finite");
    }
    if (!(J1 > 0.0)) throw DomainError("LadderParams: J1 must be positive");
    if (J2 < 0.0 || t1 < 0.0 || t2 < 0.0) {
        throw DomainError("LadderParams: J2, t1, t2 must be non-negative");
    }
}

void ModulationProtocol::validate() const {
    if (!finite_all({G_bar, G_tilde, T, phi0, delta_tilde, T_prime, phi0_prime})) {
        throw DomainError("ModulationProtocol: all fields must be finite");
    }
    if (!(T > 0.0) || !(T_prime > 0.0)) {
        throw DomainError("ModulationProtocol: periods must be positive");
    }
}

double ModulationProtocol::loop_period() const {
    validate();
    // Find p, q with p*T == q*T' (p, q small); the loop closes after p*T.
    constexpr int kMaxMultiple = 64;
    for (int p = 1; p <= kMaxMultiple; ++p) {
        const double q = p * T / T_prime;
        const double q_round = std::round(q);
        if (q_round >= 1.0 && std::abs(q - q_round) < 1e-9 * std::max(1.0, q)) {
            return p * T;
        }
    }
    throw DomainError("ModulationProtocol: T/T' is not a ratio of small integers; "
                      "the parameter path does not close");
}

const char* site_name(Site s) noexcept {
    switch (s) {
        case Site::a: return "a";
        case Site::A: return "A";
        case Site::b: return "b";
        case Site::B: return "B";
    }
    return "?";
}

BlochMatrix bloch_hamiltonian(const LadderParams& p, double k) {
    const cplx phase = std::polar(1.0, k);
    const cplx rho1 = p.J1 + p.J2 * phase;
    const cplx rho2 = p.t1 + p.t2 * phase;
    BlochMatrix H = BlochMatrix::Zero();
    H(0, 0) = p.delta;
    H(1, 1) = -p.delta;
    H(0, 1) = rho1;
    H(1, 0) = std::conj(rho1);
    H(2, 3) = rho2;
    H(3, 2) = std::conj(rho2);
    H(0, 2) = H(2, 0) = -p.G;
    H(1, 3) = H(3, 1) = -p.G;
    return H;
}

RealSpaceHamiltonian open_chain_hamiltonian(const LadderParams& p, std::size_t N) {
    if (N < 2) {
        throw InvalidSizeError("open_chain_hamiltonian: N must be >= 2, got " + std::to_string(N));
    }
    const auto dim = static_cast<Eigen::Index>(4 * N);
    RealSpaceHamiltonian H = RealSpaceHamiltonian::Zero(dim, dim);
    for (std::size_t j = 0; j < N; ++j) {
        add_cell(H, j, p);
        if (j + 1 < N) add_intercell(H, j, j + 1, p.J2, p.t2);
    }
    return H;
}

RealSpaceHamiltonian ring_hamiltonian(const RingParams& ring) {
    const std::size_t N = ring.N;
    if (N < 2) {
        throw InvalidSizeError("ring_hamiltonian: N must be >= 2, got " + std::to_string(N));
    }
    if (!finite_all({ring.J3, ring.J4, ring.t3, ring.t4})) {
        throw DomainError("ring_hamiltonian: seam couplings must be finite");
    }
    const auto dim = static_cast<Eigen::Index>(8 * N);
    RealSpaceHamiltonian H = RealSpaceHamiltonian::Zero(dim, dim);
    for (std::size_t j = 0; j < N; ++j) {
        add_cell(H, j, ring.left);
        if (j + 1 < N) add_intercell(H, j, j + 1, ring.left.J2, ring.left.t2);
    }
    for (std::size_t j = N; j < 2 * N; ++j) {
        add_cell(H, j, ring.right);
        if (j + 1 < 2 * N) add_intercell(H, j, j + 1, ring.right.J2, ring.right.t2);
    }
    add_intercell(H, N - 1, N, ring.J3, ring.t3);
    add_intercell(H, 2 * N - 1, 0, ring.J4, ring.t4);
    return H;
}

LadderParams modulated_params(const LadderParams& base, const ModulationProtocol& proto, double t) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    LadderParams p = base;
    p.G = proto.G_bar + proto.G_tilde * std::cos(two_pi * t / proto.T + proto.phi0);
    p.delta = proto.delta_tilde * std::sin(two_pi * t / proto.T_prime + proto.phi0_prime);
    return p;
}

Eigen::Matrix4cd chiral_operator() {
    Eigen::Matrix4cd S = Eigen::Matrix4cd::Zero();
    S.diagonal() << 1.0, -1.0, -1.0, 1.0;
    return S;
}

}  // namespace topoladder
