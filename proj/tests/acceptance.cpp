// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "topoladder/drive.hpp"
#include "topoladder/edge.hpp"
#include "topoladder/errors.hpp"
#include "topoladder/pumping.hpp"
#include "topoladder/scattering.hpp"
#include "topoladder/spectral.hpp"
#include "topoladder/topology.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace topoladder;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass{false};
    std::string detail;
};

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---- criteria 1 and 9: phase diagram grids ----------------------------------

constexpr std::size_t kNJ = 121;
constexpr std::size_t kNG = 81;
constexpr double kJ2Max = 2.0;
constexpr double kGMax = 1.2;
constexpr int kBoundaryCode = -1;  // band touching or unsnappable phase

double grid_J2(std::size_t i) { return kJ2Max * static_cast<double>(i) / static_cast<double>(kNJ - 1); }
double grid_G(std::size_t j) { return kGMax * static_cast<double>(j) / static_cast<double>(kNG - 1); }

struct Grid {
    double t1{0.0};
    double t2{0.0};
    std::vector<int> cls;      // PhaseClass as int, or kBoundaryCode
    std::vector<int> winding;  // or kBoundaryCode
    std::vector<int> oracle;   // dense arg-accumulation winding, or kBoundaryCode
    int& at(std::vector<int>& v, std::size_t i, std::size_t j) { return v[i * kNG + j]; }
    int get(const std::vector<int>& v, std::size_t i, std::size_t j) const { return v[i * kNG + j]; }
};

// N_s = -(1/2pi) sum arg(Z_{n+1} / Z_n) over M points; independent of the
// library's adaptive accumulation.
int dense_winding(const LadderParams& p, std::size_t M) {
    double total = 0.0;
    cplx prev = chiral_determinant(p, -pi);
    if (std::abs(prev) < 1e-9) return kBoundaryCode;
    for (std::size_t n = 1; n <= M; ++n) {
        const cplx z = chiral_determinant(p, -pi + 2.0 * pi * static_cast<double>(n) / static_cast<double>(M));
        if (std::abs(z) < 1e-9) return kBoundaryCode;
        total += std::arg(z / prev);
        prev = z;
    }
    return -static_cast<int>(std::lround(total / (2.0 * pi)));
}

Grid compute_grid(double t1, double t2) {
    Grid g;
    g.t1 = t1;
    g.t2 = t2;
    g.cls.assign(kNJ * kNG, 0);
    g.winding.assign(kNJ * kNG, 0);
    g.oracle.assign(kNJ * kNG, 0);
    const unsigned workers = worker_count();
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t idx = w; idx < kNJ * kNG; idx += workers) {
                const std::size_t i = idx / kNG;
                const std::size_t j = idx % kNG;
                const LadderParams p{1.0, grid_J2(i), t1, t2, grid_G(j), 0.0};
                try {
                    const PhaseClass c = classify_phase(p).cls;
                    g.cls[idx] = c == PhaseClass::Undetermined ? kBoundaryCode : static_cast<int>(c);
                } catch (const DegenerateBandError&) {
                    g.cls[idx] = kBoundaryCode;
                }
                try {
                    g.winding[idx] = winding_number(p);
                } catch (const OnBoundaryError&) {
                    g.winding[idx] = kBoundaryCode;
                }
                g.oracle[idx] = dense_winding(p, 10000);
            }
        });
    }
    for (auto& t : pool) t.join();
    return g;
}

enum CurveSet { kAllCurves, kGapCurves };

// True when some analytic boundary passes through the box of half-size one
// grid cell around (J2, G). kGapCurves keeps only the zero-energy closings
// G_plus, G_minus and the interior branch.
bool near_curve(const Grid& g, double J2, double G, CurveSet set) {
    const double dJ = kJ2Max / static_cast<double>(kNJ - 1);
    const double dG = kGMax / static_cast<double>(kNG - 1);
    const LadderParams ref{1.0, J2, g.t1, g.t2, 0.0, 0.0};
    if (set == kAllCurves && std::abs(J2 - phase_boundaries(ref).J2_c) <= dJ) return true;
    const double J2_int = g.t2 / g.t1;  // t1 J2 = J1 t2
    if (std::abs(J2 - J2_int) <= dJ) {
        const BoundarySet b = phase_boundaries({1.0, J2_int, g.t1, g.t2, 0.0, 0.0});
        const double lo = b.G_c3(pi).value_or(0.0);
        const double hi = b.G_c3(0.0).value_or(0.0);
        if (G >= lo - dG && G <= hi + dG) return true;
    }
    for (int s = -20; s <= 20; ++s) {
        const double x = J2 + dJ * s / 20.0;
        if (x < 0.0) continue;
        const BoundarySet b = phase_boundaries({1.0, x, g.t1, g.t2, 0.0, 0.0});
        if (std::abs(b.G_plus - G) <= dG) return true;
        if (b.G_minus && std::abs(*b.G_minus - G) <= dG) return true;
    }
    return false;
}

// Neighbour pairs on rows j >= 1. At G = 0 the optical and mechanical chains
// decouple and their bands cross, so that row carries no phase information.
template <typename F>
void for_each_pair(F&& f) {
    for (std::size_t i = 0; i < kNJ; ++i) {
        for (std::size_t j = 1; j < kNG; ++j) {
            if (i + 1 < kNJ) f(i, j, i + 1, j);
            if (j + 1 < kNG) f(i, j, i, j + 1);
        }
    }
}

Outcome criterion1(const std::array<Grid, 2>& grids) {
    std::set<int> classes;
    std::size_t bad = 0;
    std::size_t changes = 0;
    std::ostringstream first_bad;
    for (const Grid& g : grids) {
        for (std::size_t i = 0; i < kNJ; ++i)
            for (std::size_t j = 1; j < kNG; ++j) {
                const int c = g.get(g.cls, i, j);
                if (c != kBoundaryCode) classes.insert(c);
                if (c == kBoundaryCode && !near_curve(g, grid_J2(i), grid_G(j), kAllCurves)) {
                    if (!bad++) first_bad << "touching point away from curves at J2=" << grid_J2(i) << " G=" << grid_G(j);
                }
            }
        for_each_pair([&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
            const int a = g.get(g.cls, i0, j0);
            const int b = g.get(g.cls, i1, j1);
            if (a == b || a == kBoundaryCode || b == kBoundaryCode) return;
            ++changes;
            const double J2 = 0.5 * (grid_J2(i0) + grid_J2(i1));
            const double G = 0.5 * (grid_G(j0) + grid_G(j1));
            if (!near_curve(g, J2, G, kAllCurves)) {
                if (!bad++) first_bad << "class change away from curves at J2=" << J2 << " G=" << G;
            }
        });
    }
    std::ostringstream os;
    os << "classes found " << classes.size() << ", class changes " << changes << ", off-curve " << bad;
    if (bad) os << " (" << first_bad.str() << ")";
    return {classes.size() == 4 && bad == 0, os.str()};
}

Outcome criterion9(const std::array<Grid, 2>& grids) {
    std::size_t bad_region = 0;
    std::size_t bad_curve = 0;
    std::size_t bad_oracle = 0;
    std::size_t compared = 0;
    for (const Grid& g : grids) {
        for (std::size_t idx = 0; idx < kNJ * kNG; ++idx) {
            if (idx % kNG == 0) continue;
            if (g.winding[idx] == kBoundaryCode || g.oracle[idx] == kBoundaryCode) continue;
            ++compared;
            bad_oracle += g.winding[idx] != g.oracle[idx];
        }
        for_each_pair([&](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
            const int wa = g.get(g.winding, i0, j0);
            const int wb = g.get(g.winding, i1, j1);
            if (wa == kBoundaryCode || wb == kBoundaryCode) return;
            const int ca = g.get(g.cls, i0, j0);
            const int cb = g.get(g.cls, i1, j1);
            if (ca == cb && ca != kBoundaryCode && wa != wb) ++bad_region;
            if (wa != wb) {
                const double J2 = 0.5 * (grid_J2(i0) + grid_J2(i1));
                const double G = 0.5 * (grid_G(j0) + grid_G(j1));
                if (!near_curve(g, J2, G, kGapCurves)) ++bad_curve;
            }
        });
    }
    std::ostringstream os;
    os << "same-class neighbours with different N_s " << bad_region << ", N_s changes off G_plus/G_minus/G_c3 "
       << bad_curve << ", oracle mismatches " << bad_oracle << " of " << compared;
    return {bad_region == 0 && bad_curve == 0 && bad_oracle == 0 && compared > 0, os.str()};
}

// ---- criterion 2 -------------------------------------------------------------

Outcome criterion2() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        const LadderParams p{1.0, 2.0 * u(rng), u(rng), u(rng), 1.5 * u(rng), 0.0};
        const double k = pi * (2.0 * u(rng) - 1.0);
        const auto a = analytic_bands(p, k);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> s(bloch_hamiltonian(p, k), Eigen::EigenvaluesOnly);
        for (int b = 0; b < 4; ++b) {
            worst = std::max(worst, std::abs(a[b] - s.eigenvalues()(b)) / std::max(1.0, std::abs(a[b])));
        }
    }
    std::ostringstream os;
    os << "max relative deviation " << worst << " over 10^4 draws";
    return {worst < 1e-10, os.str()};
}

// ---- criterion 3 -------------------------------------------------------------

struct Census {
    int total{0};
    int near_zero{0};
    int near_G{0};
};

Census census(const LadderParams& p) {
    Census c;
    for (const auto& s : detect_edge_states(open_chain_hamiltonian(p, 10), bulk_reference(p))) {
        ++c.total;
        c.near_zero += std::abs(s.energy) < 0.05;
        c.near_G += std::abs(std::abs(s.energy) - p.G) < 0.05;
    }
    return c;
}

Outcome criterion3() {
    struct Case {
        const char* name;
        LadderParams p;
        PhaseClass expect;
        int total, zero, nearG;
    };
    const Case cases[] = {
        {"2(a) G=0.1", {1.0, 0.6, 0.2, 0.01, 0.1, 0.0}, PhaseClass::I, 0, 0, 0},
        {"2(b) G=0.8", {1.0, 0.6, 0.01, 0.2, 0.8, 0.0}, PhaseClass::I, 0, 0, 0},
        {"2(a) G=0.4", {1.0, 0.6, 0.2, 0.01, 0.4, 0.0}, PhaseClass::II, 2, 2, 0},
        {"2(b) G=0.3", {1.0, 0.6, 0.01, 0.2, 0.3, 0.0}, PhaseClass::II, 2, 2, 0},
        {"2(c) G=0.8", {1.0, 1.5, 0.2, 0.01, 0.8, 0.0}, PhaseClass::IV, 4, 0, 4},
        {"2(d) G=0.8", {1.0, 1.5, 0.01, 0.2, 0.8, 0.0}, PhaseClass::IV, 4, 0, 4},
        {"2(d) G=0.5", {1.0, 1.5, 0.01, 0.2, 0.5, 0.0}, PhaseClass::III, 6, 2, 4},
    };
    bool ok = true;
    std::ostringstream os;
    for (const Case& c : cases) {
        const PhaseClass cls = classify_phase(c.p).cls;
        const Census n = census(c.p);
        const bool pass = cls == c.expect && n.total == c.total && n.near_zero == c.zero && n.near_G == c.nearG;
        ok &= pass;
        os << c.name << " " << to_string(cls) << ":" << n.total << "(" << n.near_zero << "@0," << n.near_G
           << "@G)" << (pass ? "" : "!") << "; ";
    }
    return {ok, os.str()};
}

// ---- criterion 4 -------------------------------------------------------------

Outcome criterion4() {
    auto peaks = [](const LadderParams& p, std::string& text) {
        std::vector<std::pair<std::size_t, Site>> out;
        const auto es = detect_edge_states(open_chain_hamiltonian(p, 10), bulk_reference(p));
        for (const auto& s : es) {
            if (std::abs(s.energy) >= 0.05) continue;
            const FieldDistribution f = field_distribution(s, 10);
            const std::array<Site, 2> mech{Site::b, Site::B};
            out.push_back(f.argmax(mech));
            Eigen::Index cb = 0, cB = 0;
            f.sublattice(Site::b).maxCoeff(&cb);
            f.sublattice(Site::B).maxCoeff(&cB);
            text += "[b@" + std::to_string(cb) + " B@" + std::to_string(cB) + " max " +
                    site_name(out.back().second) + std::to_string(out.back().first) + "]";
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    std::string te, tf;
    const auto e = peaks({1.0, 0.6, 0.2, 0.01, 0.4, 0.0}, te);
    const auto f = peaks({1.0, 0.6, 0.01, 0.2, 0.3, 0.0}, tf);
    // Mechanical chain b0 B0 b1 ... b9 B9: end modes b0, B9; their neighbours B0, b9.
    const std::vector<std::pair<std::size_t, Site>> adjacent{{0, Site::B}, {9, Site::b}};
    const std::vector<std::pair<std::size_t, Site>> ends{{0, Site::b}, {9, Site::B}};
    return {e == adjacent && f == ends, "2(e) " + te + " 2(f) " + tf};
}

// ---- criterion 5 -------------------------------------------------------------

Outcome criterion5() {
    struct Case {
        const char* name;
        LadderParams left;
        LadderParams right;
        bool zero;  // G_c3 case (E ~ 0) or J2_c case (E ~ +-G)
    };
    const Case cases[] = {
        {"S3(a)", {1.0, 0.01, 0.2, 0.01, 0.45, 0.0}, {1.0, 1.0, 0.2, 0.01, 0.45, 0.0}, true},
        {"S3(b)", {1.0, 1.0, 0.01, 0.2, 0.5, 0.0}, {1.0, 30.0, 0.01, 0.2, 2.5, 0.0}, true},
        {"S3(c)", {1.0, 0.6, 0.2, 0.01, 0.45, 0.0}, {1.0, 2.0, 0.2, 0.01, 0.45, 0.0}, false},
        {"S3(d)", {1.0, 0.1, 0.01, 0.2, 2.5, 0.0}, {1.0, 1.5, 0.01, 0.2, 2.5, 0.0}, false},
    };
    bool ok = true;
    std::ostringstream os;
    for (const Case& c : cases) {
        RingParams r;
        r.left = c.left;
        r.right = c.right;
        // Seams carry the right ladder's intercell couplings.
        r.J3 = r.J4 = c.right.J2;
        r.t3 = r.t4 = c.right.t2;
        r.N = 10;
        const auto states = ring_interface_states(r);
        int hits = 0;
        double min_loc = 1.0;
        for (const auto& s : states) {
            const double target = c.zero ? 0.0 : c.left.G;
            if (std::abs(std::abs(s.energy) - target) < 0.05) {
                ++hits;
                min_loc = std::min(min_loc, s.localization);
            }
        }
        const bool pass = states.size() == 4 && hits == 4 && min_loc > 0.6;
        ok &= pass;
        os << c.name << " " << states.size() << " states, " << hits << " at " << (c.zero ? "0" : "+-G")
           << ", min seam weight " << min_loc << (pass ? "" : "!") << "; ";
    }
    return {ok, os.str()};
}

// ---- criteria 6 and 8: modulation protocols ----------------------------------

const LadderParams kPumpBase{1.0, 0.6, 0.2, 0.01, 0.0, 0.0};
constexpr double kPeriod = 800.0;

std::array<ModulationProtocol, 4> protocols() {
    const BoundarySet b = phase_boundaries(kPumpBase);
    const double gm = *b.G_minus;
    const double gp = b.G_plus;
    const double T = kPeriod;
    return {ModulationProtocol{gm, 0.5 * (gp - gm), T, 0.0, 0.2, T, 0.0},
            ModulationProtocol{gp, 0.5 * (gm - gp), T, 0.0, 0.2, T, 0.0},
            ModulationProtocol{0.5 * (gm + gp), gm - gp, T, pi / 2, 0.2, T, pi / 2},
            ModulationProtocol{0.5 * (gm + gp), gm - gp, T, pi / 2, 0.2, T / 2, pi}};
}

Outcome criterion6() {
    const std::array<std::array<int, 4>, 4> expected{
        {{0, -1, 1, 0}, {0, -1, 1, 0}, {0, 0, 0, 0}, {0, 2, -2, 0}}};
    const auto protos = protocols();
    const char* names[] = {"3(e)", "3(f)", "3(g)", "3(h)"};
    bool ok = true;
    std::ostringstream os;
    for (int n = 0; n < 4; ++n) {
        const ChernSet c128 = chern_numbers(kPumpBase, protos[n], 128, 128, worker_count());
        const ChernSet c256 = chern_numbers(kPumpBase, protos[n], 256, 256, worker_count());
        const bool pass = c128.c == expected[n] && c256.c == expected[n];
        ok &= pass;
        os << names[n] << " {" << c128.c[0] << "," << c128.c[1] << "," << c128.c[2] << "," << c128.c[3] << "}"
           << (c256.c == c128.c ? "" : " (changes at 256)") << (pass ? "" : "!") << "; ";
    }
    return {ok, os.str()};
}

EvolutionResult run_from_B0(const ModulationProtocol& m) {
    const double dt = m.loop_period() / 20000.0;
    return evolve(kPumpBase, m, 10, basis_state(10, mode_index(0, Site::B)), m.loop_period(), dt, 1000);
}

Outcome criterion8() {
    const auto protos = protocols();
    const EvolutionResult a = run_from_B0(protos[0]);
    const EvolutionResult c = run_from_B0(protos[2]);
    const EvolutionResult d = run_from_B0(protos[3]);
    const double right = right_edge_weight(a.site_probabilities.back());
    const double disp_c = pump_displacement(c, 10);
    const double disp_d = pump_displacement(d, 10);
    const TrackedSpectrum ts = instantaneous_spectrum(kPumpBase, protos[3], 10, 400);
    bool flagged = false;
    for (std::size_t i : ts.crossings) flagged |= std::abs(ts.times[i] / protos[3].loop_period() - 0.5) <= 0.05;
    const double drift = std::max({a.norm_drift, c.norm_drift, d.norm_drift});
    const bool pa = right > 0.8;
    const bool pc = std::abs(disp_c) < 0.5;
    const bool pd = flagged && std::abs(disp_d - disp_c) < 1.0;
    std::ostringstream os;
    os << "(a) right-edge weight " << right << (pa ? "" : "!") << "; (c) displacement " << disp_c
       << (pc ? "" : "!") << "; (d) crossing near 0.5T " << (flagged ? "yes" : "no") << ", displacement "
       << disp_d << " vs (c)" << (pd ? "" : "!") << "; norm drift " << drift;
    return {pa && pc && pd && drift < 1e-8, os.str()};
}

// ---- criterion 7 -------------------------------------------------------------

Outcome criterion7() {
    struct Case {
        const char* name;
        LadderParams p;
        ScatteringSetup s;
    };
    ScatteringSetup sc;
    ScatteringSetup sf;
    sf.coupled_site = Site::b;
    sf.t_w = 1.5;
    const Case cases[] = {{"S5(c)", {1.0, 0.6, 0.2, 0.01, 0.4, 0.0}, sc},
                          {"S5(f)", {1.0, 1.5, 0.2, 0.01, 0.8, 0.0}, sf}};
    bool ok = true;
    std::ostringstream os;
    for (const Case& c : cases) {
        const auto grid = default_probe_grid(c.s, c.p);
        const ReflectionSpectrum spec = reflection_spectrum(c.s, c.p, grid, worker_count());
        double defect = 0.0;
        for (const auto& pt : spec.points) defect = std::max(defect, std::abs(std::norm(pt.r) + std::norm(pt.t) - 1.0));
        int resonances = 0;
        int coupled = 0;
        double lowest = 1.0;
        for (const auto& s : detect_edge_states(open_chain_hamiltonian(c.p, c.s.N), bulk_reference(c.p))) {
            if (s.site_probabilities(c.s.coupled_index()) < 0.01) continue;
            ++coupled;
            const Resonance r = find_resonance(c.s, c.p, s.energy, 1e-3);
            lowest = std::min(lowest, r.point.R);
            resonances += r.interior && r.point.R > 0.99;
        }
        const bool pass = spec.errors.empty() && defect < 1e-10 && coupled > 0 && resonances == coupled;
        ok &= pass;
        os << c.name << " defect " << defect << ", " << resonances << "/" << coupled << " edge peaks, min R "
           << lowest << (pass ? "" : "!") << "; ";
    }
    return {ok, os.str()};
}

// ---- criterion 10 ------------------------------------------------------------

Outcome criterion10() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
        DriveInputs in;
        in.g1 = 0.05 + std::abs(u(rng));
        in.g2 = 0.05 + std::abs(u(rng));
        in.alpha = cplx(5.0 * u(rng), 5.0 * u(rng));
        in.Delta_a = 20.0 * u(rng);
        in.Delta_A = 20.0 * u(rng);
        in.J1 = 1.0;
        in.J2 = 2.0 * std::abs(u(rng));
        in.kappa = std::abs(u(rng));
        in.N = 2 + static_cast<std::size_t>(20.0 * std::abs(u(rng)));
        worst = std::max(worst, steady_state_residual(periodic_drive_amplitudes(in)));
        worst = std::max(worst, steady_state_residual(open_boundary_drive_amplitudes(in)));
    }
    std::ostringstream os;
    os << "max residual " << worst << " over 100 input sets, both boundaries";
    return {worst < 1e-12, os.str()};
}

void report(int n, const std::function<Outcome()>& f, int& failures) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
}

}  // namespace

int main() {
    int failures = 0;
    std::array<Grid, 2> grids;
    report(1, [&] {
        grids = {compute_grid(0.2, 0.01), compute_grid(0.01, 0.2)};
        return criterion1(grids);
    }, failures);
    report(2, criterion2, failures);
    report(3, criterion3, failures);
    report(4, criterion4, failures);
    report(5, criterion5, failures);
    report(6, criterion6, failures);
    report(7, criterion7, failures);
    report(8, criterion8, failures);
    report(9, [&] { return criterion9(grids); }, failures);
    report(10, criterion10, failures);
    return failures == 0 ? 0 : 1;
}
