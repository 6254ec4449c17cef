// drive.hpp: laser drive amplitudes that give every rung the same linearized
// coupling G = g1 alpha = g2 zeta.
//
// Optical steady state per cell j (alpha_j on a_j, zeta_j on A_j):
//   0 = -(i Da + kappa) alpha_j - i J1 zeta_j - i J2 zeta_{j-1} - i eps_j
//   0 = -(i DA + kappa) zeta_j  - i J1 alpha_j - i J2 alpha_{j+1} - i epsA_j
// Mechanical displacements are assumed small against the detunings and are
// not solved for.

#pragma once

#include "topoladder/model.hpp"

#include <string>

namespace topoladder {

enum class Boundary { Periodic, Open };

struct DriveInputs {
    double g1{1.0};       // single-photon coupling, a modes
    double g2{1.0};       // single-photon coupling, A modes
    cplx alpha{1.0, 0.0}; // target a-mode amplitude
    double Delta_a{0.0};
    double Delta_A{0.0};
    double J1{1.0};
    double J2{0.0};
    double kappa{0.0};
    std::size_t N{2};
};

struct DrivePlan {
    Eigen::VectorXcd epsilon;    // a-mode drives
    Eigen::VectorXcd epsilon_A;  // A-mode drives
    cplx alpha;
    cplx zeta;  // (g1 / g2) alpha
    DriveInputs inputs;
    Boundary boundary{Boundary::Periodic};
    std::string approximation{"|g1 (beta_j + beta_j*)| << Delta_a; mechanical shifts neglected"};

    cplx coupling() const { return inputs.g1 * alpha; }
};

DrivePlan periodic_drive_amplitudes(const DriveInputs& in);
DrivePlan open_boundary_drive_amplitudes(const DriveInputs& in);

// Max |residual| of the optical steady-state equations at alpha_j = alpha,
// zeta_j = zeta with the plan's drives and boundary.
double steady_state_residual(const DrivePlan& plan);

}  // namespace topoladder
