#include "topoladder/scattering.hpp"

#include "topoladder/errors.hpp"
#include "topoladder/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace topoladder {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

void ScatteringSetup::validate() const {
    if (!(t_w > 0.0) || !std::isfinite(t_w)) throw DomainError("scattering: t_w must be positive");
    if (!(t_0 > 0.0) || !std::isfinite(t_0)) throw DomainError("scattering: t_0 must be positive");
    if (!is_mechanical(coupled_site)) throw DomainError("scattering: coupled site must be b or B");
    if (N < 2) throw InvalidSizeError("scattering: N must be >= 2");
    if (coupled_cell >= N) throw DomainError("scattering: coupled cell outside the chain");
}

double waveguide_dispersion(double t_w, double k_w) {
    if (!(k_w > 0.0 && k_w < pi)) throw DomainError("waveguide_dispersion: k_w must lie in (0, pi)");
    return -2.0 * t_w * std::cos(k_w);
}

double waveguide_momentum(double t_w, double Omega) {
    if (!(std::abs(Omega) < 2.0 * t_w)) {
        throw DomainError("probe energy " + std::to_string(Omega) +
                          " outside the propagating band (evanescent)");
    }
    return std::acos(-Omega / (2.0 * t_w));
}

ScatteringSystem scattering_system(const ScatteringSetup& setup, const LadderParams& p, double Omega) {
    setup.validate();
    if (p.delta != 0.0) throw DomainError("scattering: requires delta = 0");
    ScatteringSystem sys;
    sys.k_w = waveguide_momentum(setup.t_w, Omega);
    const Eigen::Index n = static_cast<Eigen::Index>(4 * setup.N);
    const Eigen::Index d = setup.coupled_index();
    // Waveguide elimination: t_0 u_d = 2i t_w sin(k_w) r.
    const cplx alpha = cplx(0.0, 2.0 * setup.t_w * std::sin(sys.k_w) / setup.t_0);
    sys.A = Omega * Eigen::MatrixXcd::Identity(n, n) - open_chain_hamiltonian(p, setup.N);
    sys.A.col(d) *= alpha;
    sys.A(d, d) -= setup.t_0;
    sys.b = Eigen::VectorXcd::Zero(n);
    sys.b(d) = setup.t_0;
    return sys;
}

ReflectionPoint reflection_amplitude(const ScatteringSetup& setup, const LadderParams& p, double Omega) {
    const ScatteringSystem sys = scattering_system(setup, p, Omega);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.A);
    const double rcond = lu.rcond();
    if (!(rcond > 0.0) || !std::isfinite(rcond)) {
        throw NumericalError("scattering system singular at Omega = " + std::to_string(Omega));
    }
    Eigen::VectorXcd x = lu.solve(sys.b);
    x += lu.solve(sys.b - sys.A * x);  // one refinement step
    ReflectionPoint pt;
    pt.Omega = Omega;
    pt.k_w = sys.k_w;
    pt.r = x(setup.coupled_index());
    pt.t = 1.0 + pt.r;
    pt.R = std::norm(pt.r);
    pt.condition = 1.0 / rcond;
    pt.ill_conditioned = pt.condition > kConditionWarn;
    if (!std::isfinite(pt.R)) {
        throw NumericalError("non-finite reflection amplitude at Omega = " + std::to_string(Omega));
    }
    return pt;
}

ReflectionSpectrum reflection_spectrum(const ScatteringSetup& setup, const LadderParams& p,
                                       std::span<const double> Omega_grid, unsigned threads) {
    std::vector<std::optional<ReflectionPoint>> slots(Omega_grid.size());
    std::vector<std::string> messages(Omega_grid.size());
    parallel_for(Omega_grid.size(), threads, [&](std::size_t i) {
        try {
            slots[i] = reflection_amplitude(setup, p, Omega_grid[i]);
        } catch (const Error& e) {
            messages[i] = e.what();
        }
    });
    ReflectionSpectrum out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i]) {
            out.points.push_back(*slots[i]);
        } else {
            out.errors.emplace_back(i, messages[i]);
        }
    }
    return out;
}

std::vector<double> default_probe_grid(const ScatteringSetup& setup, const LadderParams& p,
                                       std::size_t points) {
    setup.validate();
    if (points < 2) throw InvalidSizeError("probe grid needs at least 2 points");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(open_chain_hamiltonian(p, setup.N),
                                                           Eigen::EigenvaluesOnly);
    const double edge = 2.0 * setup.t_w - kBandEdgeGuard;
    const double lo = std::max(solver.eigenvalues().minCoeff(), -edge);
    const double hi = std::min(solver.eigenvalues().maxCoeff(), edge);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

Resonance find_resonance(const ScatteringSetup& setup, const LadderParams& p, double center,
                         double half_width, std::size_t scan_points) {
    if (scan_points < 3) throw InvalidSizeError("find_resonance: need at least 3 scan points");
    const double lo = center - half_width;
    const double step = 2.0 * half_width / static_cast<double>(scan_points - 1);
    auto R_at = [&](double w) { return reflection_amplitude(setup, p, w).R; };

    std::size_t best = 0;
    double best_R = -1.0;
    for (std::size_t i = 0; i < scan_points; ++i) {
        const double R = R_at(lo + step * static_cast<double>(i));
        if (R > best_R) {
            best_R = R;
            best = i;
        }
    }
    Resonance res;
    res.interior = best > 0 && best + 1 < scan_points;
    if (!res.interior) {
        res.point = reflection_amplitude(setup, p, lo + step * static_cast<double>(best));
        return res;
    }
    // Golden-section on the bracketing pair of cells.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo + step * static_cast<double>(best - 1);
    double b = lo + step * static_cast<double>(best + 1);
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = R_at(c);
    double fd = R_at(d);
    for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = R_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = R_at(d);
        }
    }
    res.point = reflection_amplitude(setup, p, 0.5 * (a + b));
    return res;
}

}  // namespace topoladder
