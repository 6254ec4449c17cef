// topology.hpp: Berry phases, phase classes I-IV, chiral winding number and
// Chern numbers on the synthetic (k, t) torus.

#pragma once

#include "topoladder/model.hpp"

#include <array>
#include <span>
#include <string>

namespace topoladder {

inline constexpr std::size_t kDefaultBerryGrid = 400;
inline constexpr double kBandTouchTol = 1e-6;
inline constexpr double kPhaseSnapTol = 0.05;

// Gauge-invariant discrete Wilson loop: -arg prod <psi_i|psi_{i+1}> with the
// loop closed back onto states[0]. Result in (-pi, pi].
double wilson_loop_phase(std::span<const Eigen::Vector4cd> states);

// Berry phase of band `band` (1..4) on an M-point loop through the Brillouin zone.
// Throws DegenerateBandError if the band comes within kBandTouchTol of a neighbour.
double berry_phase(const LadderParams& p, int band, std::size_t M = kDefaultBerryGrid);

// All four Berry phases from one sweep; every band must be isolated.
std::array<double, 4> berry_phases(const LadderParams& p, std::size_t M = kDefaultBerryGrid);

enum class PhaseClass { I, II, III, IV, Undetermined };
std::string to_string(PhaseClass c);

struct PhaseLabel {
    std::array<double, 4> raw{};      // computed gamma_n
    std::array<double, 4> snapped{};  // each 0 or pi (sign dropped), NaN if not snappable
    PhaseClass cls{PhaseClass::Undetermined};
};

// Snap one phase to {0, pi}; NaN when farther than `tol` from both.
double snap_phase(double gamma, double tol = kPhaseSnapTol);
PhaseClass class_from_snapped(const std::array<double, 4>& snapped);

// Requires delta == 0 (DomainError otherwise).
PhaseLabel classify_phase(const LadderParams& p, std::size_t M = kDefaultBerryGrid);

// Z(k) = G^2 - rho1(k) conj(rho2(k)); the determinant of the off-diagonal
// block in the chiral basis.
cplx chiral_determinant(const LadderParams& p, double k);

// N_s = -(winding of Z(k) over one Brillouin zone). Requires delta == 0;
// throws OnBoundaryError if |Z| < 1e-9 at a sampled k.
int winding_number(const LadderParams& p, std::size_t M = 2048);

struct ChernSet {
    std::array<int, 4> c{};
    std::size_t Nk{0};
    std::size_t Nt{0};
    ModulationProtocol protocol;
};

// Lattice field-strength Chern numbers over k in [-pi, pi) and t over one
// closed loop of the protocol. Sign convention: the protocol that circles the
// k = pi critical coupling counter-clockwise in the (G, delta) plane gives
// {0, -1, 1, 0}.
ChernSet chern_numbers(const LadderParams& base, const ModulationProtocol& proto, std::size_t Nk,
                       std::size_t Nt, unsigned threads = 1);

}  // namespace topoladder
