#include "topoladder/errors.hpp"
#include "topoladder/scattering.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace topoladder;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

// Amplitude equations of the ladder plus waveguide written out per mode, in
// the per-cell order (a, b, A, B) and with the rung entering as +g:
//   W u_a(j) - J1 u_A(j) - J2 u_A(j-1) + g u_b(j) = 0, etc.
// The coupled mode d carries u_d = alpha r with alpha = 2i t_w sin k_w / t0,
// and its own row picks up -t0 (1 + r).
struct Reference {
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;
};

Reference reference_system(const LadderParams& p, double g, const ScatteringSetup& s, double W) {
    const std::size_t N = s.N;
    const Eigen::Index n = static_cast<Eigen::Index>(4 * N);
    auto ia = [](std::size_t j) { return static_cast<Eigen::Index>(4 * j + 0); };
    auto ib = [](std::size_t j) { return static_cast<Eigen::Index>(4 * j + 1); };
    auto iA = [](std::size_t j) { return static_cast<Eigen::Index>(4 * j + 2); };
    auto iB = [](std::size_t j) { return static_cast<Eigen::Index>(4 * j + 3); };
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t j = 0; j < N; ++j) {
        M(ia(j), ia(j)) = W;
        M(ia(j), iA(j)) = -p.J1;
        if (j > 0) M(ia(j), iA(j - 1)) = -p.J2;
        M(ia(j), ib(j)) = g;

        M(ib(j), ib(j)) = W;
        M(ib(j), iB(j)) = -p.t1;
        if (j > 0) M(ib(j), iB(j - 1)) = -p.t2;
        M(ib(j), ia(j)) = g;

        M(iA(j), iA(j)) = W;
        M(iA(j), ia(j)) = -p.J1;
        if (j + 1 < N) M(iA(j), ia(j + 1)) = -p.J2;
        M(iA(j), iB(j)) = g;

        M(iB(j), iB(j)) = W;
        M(iB(j), ib(j)) = -p.t1;
        if (j + 1 < N) M(iB(j), ib(j + 1)) = -p.t2;
        M(iB(j), iA(j)) = g;
    }
    const double k = std::acos(-W / (2.0 * s.t_w));
    const cplx alpha = 2.0 * I * s.t_w * std::sin(k) / s.t_0;
    const Eigen::Index d = 4 * static_cast<Eigen::Index>(s.coupled_cell) + (s.coupled_site == Site::b ? 1 : 3);
    M.col(d) *= alpha;
    M(d, d) -= s.t_0;
    Reference ref{M, Eigen::VectorXcd::Zero(n)};
    ref.b(d) = s.t_0;
    return ref;
}

// (a, b, A, B) per cell -> library order (a, A, b, B).
Eigen::Index to_library(Eigen::Index i) {
    static const int map[4] = {0, 2, 1, 3};
    return 4 * (i / 4) + map[i % 4];
}

Eigen::MatrixXcd permute(const Eigen::MatrixXcd& M) {
    Eigen::MatrixXcd out(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) out(to_library(i), to_library(j)) = M(i, j);
    return out;
}

const LadderParams kS5c{1.0, 0.6, 0.2, 0.01, 0.4, 0.0};

}  // namespace

TEST(Waveguide, DispersionRoundTrip) {
    for (double k : {0.1, 0.7, pi / 2, 2.5, 3.0}) {
        const double W = waveguide_dispersion(1.5, k);
        EXPECT_NEAR(W, -3.0 * std::cos(k), 1e-15);
        EXPECT_NEAR(waveguide_momentum(1.5, W), k, 1e-12);
    }
}

TEST(Waveguide, RejectsEvanescentEnergies) {
    EXPECT_THROW(waveguide_momentum(1.0, 2.0), DomainError);
    EXPECT_THROW(waveguide_momentum(1.0, -2.5), DomainError);
    EXPECT_THROW(waveguide_dispersion(1.0, 0.0), DomainError);
}

TEST(ScatteringSystem, PrintedLeadingBlockCoupledAtB0) {
    // Leading 8x8 block of the B_0 system as printed, with symbols
    // T1 = 2i t_w t1 sin k / t0, TG = 2i t_w G sin k / t0,
    // T0 = -4i t_w^2 cos k sin k / t0 - t0. The (b_1, r) entry is printed as
    // -t2; eliminating u_B(0) = alpha r makes it -t2 alpha, used here.
    ScatteringSetup s;
    const double g = 0.4;
    const double W = 0.13;
    const double k = std::acos(-W / (2.0 * s.t_w));
    const cplx alpha = 2.0 * I * s.t_w * std::sin(k) / s.t_0;
    const cplx T1 = 2.0 * I * (s.t_w * 0.2 / s.t_0) * std::sin(k);
    const cplx TG = 2.0 * I * (s.t_w / s.t_0) * g * std::sin(k);
    const cplx T0 = -4.0 * I * (s.t_w * s.t_w / s.t_0) * std::cos(k) * std::sin(k) - s.t_0;
    const double J1 = 1.0, J2 = 0.6, t1 = 0.2, t2 = 0.01;
    Eigen::Matrix<cplx, 8, 8> printed;
    printed << W, g, -J1, 0, 0, 0, 0, 0,
               g, W, 0, -T1, 0, 0, 0, 0,
               -J1, 0, W, TG, -J2, 0, 0, 0,
               0, -t1, g, T0, 0, -t2, 0, 0,
               0, 0, -J2, 0, W, g, -J1, 0,
               0, 0, 0, -t2 * alpha, g, W, 0, -t1,
               0, 0, 0, 0, -J1, 0, W, g,
               0, 0, 0, 0, 0, -t1, g, W;
    const Reference ref = reference_system(kS5c, g, s, W);
    EXPECT_LT((ref.A.topLeftCorner(8, 8) - printed).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ScatteringSystem, PrintedLeadingBlockCoupledAtb0) {
    ScatteringSetup s;
    s.coupled_site = Site::b;
    s.t_w = 1.5;
    const LadderParams p{1.0, 1.5, 0.2, 0.01, 0.8, 0.0};
    const double g = 0.8;
    const double W = -0.41;
    const double k = std::acos(-W / (2.0 * s.t_w));
    const cplx T1 = 2.0 * I * (s.t_w * p.t1 / s.t_0) * std::sin(k);
    const cplx TG = 2.0 * I * (s.t_w / s.t_0) * g * std::sin(k);
    const cplx T0 = -4.0 * I * (s.t_w * s.t_w / s.t_0) * std::cos(k) * std::sin(k) - s.t_0;
    const double J1 = p.J1, J2 = p.J2, t1 = p.t1, t2 = p.t2;
    Eigen::Matrix<cplx, 8, 8> printed;
    printed << W, TG, -J1, 0, 0, 0, 0, 0,
               g, T0, 0, -t1, 0, 0, 0, 0,
               -J1, 0, W, g, -J2, 0, 0, 0,
               0, -T1, g, W, 0, -t2, 0, 0,
               0, 0, -J2, 0, W, g, -J1, 0,
               0, 0, 0, -t2, g, W, 0, -t1,
               0, 0, 0, 0, -J1, 0, W, g,
               0, 0, 0, 0, 0, -t1, g, W;
    const Reference ref = reference_system(p, g, s, W);
    EXPECT_LT((ref.A.topLeftCorner(8, 8) - printed).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ScatteringSystem, MatchesReferenceEquationsEntrywise) {
    // The Hamiltonian carries -G on the rungs, so Omega - H has +G as in the
    // amplitude equations.
    for (Site site : {Site::B, Site::b}) {
        ScatteringSetup s;
        s.coupled_site = site;
        for (double W : {-1.3, -0.2, 0.0, 0.37, 1.9}) {
            const ScatteringSystem sys = scattering_system(s, kS5c, W);
            const Reference ref = reference_system(kS5c, kS5c.G, s, W);
            const Eigen::MatrixXcd expected = permute(ref.A);
            EXPECT_LT((sys.A - expected).cwiseAbs().maxCoeff(), 1e-14 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
            Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(ref.b.size());
            for (Eigen::Index i = 0; i < rhs.size(); ++i) rhs(to_library(i)) = ref.b(i);
            EXPECT_EQ(sys.b, rhs);
        }
    }
}

TEST(ScatteringSystem, RequiresZeroDetuning) {
    LadderParams p = kS5c;
    p.delta = 0.1;
    EXPECT_THROW(scattering_system(ScatteringSetup{}, p, 0.1), DomainError);
}

TEST(ScatteringSetup, Validation) {
    ScatteringSetup s;
    s.coupled_site = Site::a;
    EXPECT_THROW(s.validate(), DomainError);
    s = ScatteringSetup{};
    s.coupled_cell = 10;
    EXPECT_THROW(s.validate(), DomainError);
    s = ScatteringSetup{};
    s.t_0 = 0.0;
    EXPECT_THROW(s.validate(), DomainError);
}

TEST(Reflection, FluxConservation) {
    for (Site site : {Site::B, Site::b}) {
        ScatteringSetup s;
        s.coupled_site = site;
        for (double W : {-1.1, -0.3, 0.05, 0.42, 1.7}) {
            const ReflectionPoint pt = reflection_amplitude(s, kS5c, W);
            EXPECT_NEAR(std::norm(pt.r) + std::norm(pt.t), 1.0, 1e-10);
            EXPECT_LE(pt.R, 1.0 + 1e-12);
        }
    }
}

TEST(Reflection, SymmetricInEnergy) {
    ScatteringSetup s;
    for (double W : {0.05, 0.3, 0.9, 1.4}) {
        EXPECT_NEAR(reflection_amplitude(s, kS5c, W).R, reflection_amplitude(s, kS5c, -W).R, 1e-9);
    }
}

TEST(Reflection, InsensitiveToRungSign) {
    ScatteringSetup s;
    LadderParams flipped = kS5c;
    flipped.G = -kS5c.G;
    for (double W : {-0.7, 0.01, 0.55}) {
        EXPECT_NEAR(reflection_amplitude(s, kS5c, W).R, reflection_amplitude(s, flipped, W).R, 1e-12);
    }
}

TEST(Reflection, VanishesForWeakCouplingOffResonance) {
    ScatteringSetup s;
    s.t_0 = 1e-4;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(open_chain_hamiltonian(kS5c, s.N));
    // Midpoint between two adjacent bulk eigenvalues.
    const double W = 0.5 * (eig.eigenvalues()(30) + eig.eigenvalues()(31));
    EXPECT_LT(reflection_amplitude(s, kS5c, W).R, 1e-4);
}

TEST(Reflection, ZeroModeAtB0ReflectsFully) {
    ScatteringSetup s;
    const Resonance res = find_resonance(s, kS5c, 0.0, 0.02);
    EXPECT_TRUE(res.interior);
    EXPECT_GT(res.point.R, 0.99);
    EXPECT_LT(std::abs(res.point.Omega), 1e-3);
}

TEST(Reflection, SpectrumSkipsEvanescentPoints) {
    ScatteringSetup s;
    const std::vector<double> grid{-2.5, 0.1, 2.0};
    const ReflectionSpectrum spec = reflection_spectrum(s, kS5c, grid);
    ASSERT_EQ(spec.points.size(), 1u);
    ASSERT_EQ(spec.errors.size(), 2u);
    EXPECT_EQ(spec.errors[0].first, 0u);
    EXPECT_EQ(spec.errors[1].first, 2u);
}

TEST(Reflection, ProbeGridInsidePropagatingBand) {
    ScatteringSetup s;
    s.t_w = 0.5;
    const auto grid = default_probe_grid(s, kS5c, 11);
    ASSERT_EQ(grid.size(), 11u);
    EXPECT_GT(grid.front(), -1.0);
    EXPECT_LT(grid.back(), 1.0);
}
