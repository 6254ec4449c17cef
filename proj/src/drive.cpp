#include "topoladder/drive.hpp"

#include "topoladder/errors.hpp"

#include <algorithm>
#include <cmath>

namespace topoladder {

namespace {

constexpr cplx I{0.0, 1.0};

void check(const DriveInputs& in, std::size_t min_cells) {
    if (in.g2 == 0.0) throw DomainError("drive: g2 must be nonzero");
    if (in.kappa < 0.0) throw DomainError("drive: kappa must be >= 0");
    if (in.N < min_cells) throw InvalidSizeError("drive: too few cells");
    for (double v : {in.g1, in.g2, in.Delta_a, in.Delta_A, in.J1, in.J2, in.kappa}) {
        if (!std::isfinite(v)) throw DomainError("drive: non-finite input");
    }
}

}  // namespace

DrivePlan periodic_drive_amplitudes(const DriveInputs& in) {
    check(in, 1);
    const double ratio = in.g1 / in.g2;
    const auto n = static_cast<Eigen::Index>(in.N);
    DrivePlan plan;
    plan.inputs = in;
    plan.boundary = Boundary::Periodic;
    plan.alpha = in.alpha;
    plan.zeta = ratio * in.alpha;
    const cplx eps = (I * in.kappa - in.Delta_a - (in.J1 + in.J2) * ratio) * in.alpha;
    const cplx epsA = (ratio * (I * in.kappa - in.Delta_A) - (in.J1 + in.J2)) * in.alpha;
    plan.epsilon = Eigen::VectorXcd::Constant(n, eps);
    plan.epsilon_A = Eigen::VectorXcd::Constant(n, epsA);
    return plan;
}

DrivePlan open_boundary_drive_amplitudes(const DriveInputs& in) {
    check(in, 2);
    DrivePlan plan = periodic_drive_amplitudes(in);
    plan.boundary = Boundary::Open;
    const double ratio = in.g1 / in.g2;
    plan.epsilon(0) = (I * in.kappa - in.Delta_a - in.J1 * ratio) * in.alpha;
    plan.epsilon_A(plan.epsilon_A.size() - 1) = (ratio * (I * in.kappa - in.Delta_A) - in.J1) * in.alpha;
    return plan;
}

double steady_state_residual(const DrivePlan& plan) {
    const DriveInputs& in = plan.inputs;
    const auto n = static_cast<Eigen::Index>(in.N);
    if (plan.epsilon.size() != n || plan.epsilon_A.size() != n) {
        throw InvalidSizeError("steady_state_residual: drive vectors do not match N");
    }
    const bool periodic = plan.boundary == Boundary::Periodic;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const cplx zeta_prev = (j > 0 || periodic) ? plan.zeta : cplx{0.0, 0.0};
        const cplx alpha_next = (j + 1 < n || periodic) ? plan.alpha : cplx{0.0, 0.0};
        const cplx ra = -(I * in.Delta_a + in.kappa) * plan.alpha - I * in.J1 * plan.zeta -
                        I * in.J2 * zeta_prev - I * plan.epsilon(j);
        const cplx rA = -(I * in.Delta_A + in.kappa) * plan.zeta - I * in.J1 * plan.alpha -
                        I * in.J2 * alpha_next - I * plan.epsilon_A(j);
        worst = std::max({worst, std::abs(ra), std::abs(rA)});
    }
    return worst;
}

}  // namespace topoladder
