// scattering.hpp: single-phonon reflection off an open ladder side-coupled
// to a tight-binding waveguide at one mechanical mode.

#pragma once

#include "topoladder/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace topoladder {

struct ScatteringSetup {
    double t_w{1.0};  // waveguide hopping
    double t_0{0.025};  // waveguide-ladder coupling
    std::size_t coupled_cell{0};
    Site coupled_site{Site::B};
    std::size_t N{10};

    void validate() const;
    Eigen::Index coupled_index() const { return mode_index(coupled_cell, coupled_site); }
};

struct ReflectionPoint {
    double Omega{0.0};
    double k_w{0.0};
    cplx r{0.0, 0.0};
    cplx t{1.0, 0.0};
    double R{0.0};
    double condition{1.0};  // 1-norm condition estimate of the bordered system
    bool ill_conditioned{false};  // condition > kConditionWarn
};

inline constexpr double kConditionWarn = 1e10;
inline constexpr std::size_t kDefaultProbePoints = 801;
inline constexpr double kBandEdgeGuard = 1e-6;

// Omega = -2 t_w cos k_w, k_w in (0, pi).
double waveguide_dispersion(double t_w, double k_w);
// Inverse of the above for |Omega| < 2 t_w.
double waveguide_momentum(double t_w, double Omega);

// Bordered linear system A x = b whose unknowns are the ladder amplitudes with
// the coupled mode's amplitude replaced by r. Basis order (a, A, b, B) per cell.
struct ScatteringSystem {
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;
    double k_w{0.0};
};

ScatteringSystem scattering_system(const ScatteringSetup& setup, const LadderParams& p, double Omega);

ReflectionPoint reflection_amplitude(const ScatteringSetup& setup, const LadderParams& p, double Omega);

struct ReflectionSpectrum {
    std::vector<ReflectionPoint> points;
    std::vector<std::pair<std::size_t, std::string>> errors;  // grid index, message
};

// Evaluates every grid point; a failing point is recorded in `errors` and skipped.
ReflectionSpectrum reflection_spectrum(const ScatteringSetup& setup, const LadderParams& p,
                                       std::span<const double> Omega_grid, unsigned threads = 1);

// Uniform grid over the open-chain spectrum, clipped to the propagating band.
std::vector<double> default_probe_grid(const ScatteringSetup& setup, const LadderParams& p,
                                       std::size_t points = kDefaultProbePoints);

// Largest R within [center - half_width, center + half_width]: dense scan then
// golden-section refinement. `interior` is false when the maximum sits on the
// window boundary.
struct Resonance {
    ReflectionPoint point;
    bool interior{false};
};
Resonance find_resonance(const ScatteringSetup& setup, const LadderParams& p, double center,
                         double half_width, std::size_t scan_points = 401);

}  // namespace topoladder
