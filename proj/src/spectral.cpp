#include "topoladder/spectral.hpp"

#include "topoladder/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace topoladder {

namespace {

constexpr double pi = std::numbers::pi;

Eigen::Vector4d bloch_eigenvalues(const LadderParams& p, double k) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(bloch_hamiltonian(p, k),
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigensolver failed at k = " + std::to_string(k));
    }
    return solver.eigenvalues();
}

void check_lower(int lower) {
    if (lower < 1 || lower > 3) {
        throw DomainError("band pair must be (1,2), (2,3) or (3,4); got lower = " +
                          std::to_string(lower));
    }
}

}  // namespace

std::pair<double, double> BandStructure::band_range(int n) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& e : energies) {
        lo = std::min(lo, e(n));
        hi = std::max(hi, e(n));
    }
    return {lo, hi};
}

std::vector<double> brillouin_grid(std::size_t M) {
    std::vector<double> ks(M);
    for (std::size_t i = 0; i < M; ++i) {
        ks[i] = -pi + 2.0 * pi * static_cast<double>(i + 1) / static_cast<double>(M);
    }
    return ks;
}

std::vector<double> closed_k_grid(std::size_t M) {
    if (M < 2) throw InvalidSizeError("closed_k_grid: need at least 2 points");
    std::vector<double> ks(M);
    for (std::size_t i = 0; i < M; ++i) {
        ks[i] = -pi + 2.0 * pi * static_cast<double>(i) / static_cast<double>(M - 1);
    }
    return ks;
}

BandStructure band_structure(const LadderParams& p, std::span<const double> k_grid) {
    if (k_grid.empty()) throw InvalidSizeError("band_structure: empty k grid");
    BandStructure bs;
    bs.k_grid.assign(k_grid.begin(), k_grid.end());
    bs.energies.reserve(k_grid.size());
    bs.eigenvectors.reserve(k_grid.size());
    for (double k : k_grid) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(bloch_hamiltonian(p, k));
        if (solver.info() != Eigen::Success) {
            throw NumericalError("band_structure: eigensolver failed at k = " + std::to_string(k));
        }
        bs.energies.push_back(solver.eigenvalues());
        bs.eigenvectors.push_back(solver.eigenvectors());
    }
    return bs;
}

std::array<double, 4> analytic_bands(const LadderParams& p, double k) {
    if (p.delta != 0.0) {
        throw DomainError("analytic_bands: closed form holds only at delta = 0");
    }
    const cplx phase = std::polar(1.0, k);
    const cplx rho1 = p.J1 + p.J2 * phase;
    const cplx rho2 = p.t1 + p.t2 * phase;
    const double G2 = p.G * p.G;
    const double a = G2 + 0.5 * (std::norm(rho1) + std::norm(rho2));
    const double z2 = std::norm(G2 - rho1 * std::conj(rho2));  // |Z|^2 = (G^2 - r1 r2*)(G^2 - r1* r2)
    const double s = std::sqrt(std::max(0.0, a * a - z2));
    const double outer = std::sqrt(a + s);
    // a - s rewritten as |Z|^2 / (a + s) to avoid cancellation near the gap closing.
    const double inner = (a + s) > 0.0 ? std::sqrt(z2 / (a + s)) : 0.0;
    return {-outer, -inner, inner, outer};
}

std::optional<double> BoundarySet::G_c3(double k) const {
    const double r = source.J1 * source.t1 + source.J2 * source.t2 +
                     (source.J2 * source.t1 + source.J1 * source.t2) * std::cos(k);
    if (r < 0.0) return std::nullopt;
    return std::sqrt(r);
}

BoundarySet phase_boundaries(const LadderParams& p) {
    BoundarySet out;
    out.source = p;
    out.G_plus = std::sqrt((p.J1 + p.J2) * (p.t1 + p.t2));
    const double minus_radicand = (p.J1 - p.J2) * (p.t1 - p.t2);
    if (minus_radicand >= 0.0) out.G_minus = std::sqrt(minus_radicand);
    const double lhs = p.t1 * p.J2;
    const double rhs = p.J1 * p.t2;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    out.interior_condition = scale == 0.0 ? true : std::abs(lhs - rhs) <= 1e-9 * scale;
    out.J2_c = p.J1 + p.t1 - p.t2;
    return out;
}

std::optional<double> interior_closing_k(const LadderParams& p) {
    const BoundarySet b = phase_boundaries(p);
    if (!b.interior_condition) return std::nullopt;
    const double denom = p.J2 * p.t1 + p.J1 * p.t2;
    if (denom == 0.0) return std::nullopt;
    const double c = (p.G * p.G - p.J1 * p.t1 - p.J2 * p.t2) / denom;
    if (c < -1.0 || c > 1.0) return std::nullopt;
    return std::acos(c);
}

GapMinimum min_gap(const BandStructure& bs, int lower) {
    check_lower(lower);
    GapMinimum best{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t i = 0; i < bs.size(); ++i) {
        const double g = bs.energies[i](lower) - bs.energies[i](lower - 1);
        if (g < best.gap) best = {g, bs.k_grid[i]};
    }
    return best;
}

GapMinimum refine_min_gap(const LadderParams& p, int lower, double k_lo, double k_hi,
                          double tol) {
    check_lower(lower);
    auto gap = [&](double k) {
        const auto e = bloch_eigenvalues(p, k);
        return e(lower) - e(lower - 1);
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = k_lo;
    double b = k_hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = gap(c);
    double fd = gap(d);
    while (std::abs(b - a) > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = gap(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = gap(d);
        }
    }
    const double k = 0.5 * (a + b);
    GapMinimum out{gap(k), k};
    // The bracket ends may beat the interior (minimum at the edge of the interval).
    for (double edge : {k_lo, k_hi}) {
        const double g = gap(edge);
        if (g < out.gap) out = {g, edge};
    }
    return out;
}

GapMinimum scan_min_gap(const LadderParams& p, int lower, std::size_t points) {
    const auto ks = closed_k_grid(points);
    const auto coarse = min_gap(band_structure(p, ks), lower);
    const double h = 2.0 * pi / static_cast<double>(points - 1);
    const double lo = std::max(-pi, coarse.k - h);
    const double hi = std::min(pi, coarse.k + h);
    const auto fine = refine_min_gap(p, lower, lo, hi);
    return fine.gap < coarse.gap ? fine : coarse;
}

std::vector<std::array<int, 4>> track_bands(const BandStructure& bs) {
    std::vector<std::array<int, 4>> order(bs.size());
    if (bs.size() == 0) return order;
    order[0] = {0, 1, 2, 3};
    for (std::size_t i = 1; i < bs.size(); ++i) {
        const Eigen::Matrix4d ov =
            (bs.eigenvectors[i - 1].adjoint() * bs.eigenvectors[i]).cwiseAbs();
        // Greedy assignment by descending overlap; four bands make this exact
        // whenever one overlap per row dominates.
        std::array<bool, 4> row_used{};
        std::array<bool, 4> col_used{};
        std::array<int, 4> col_of_prev_sorted{};
        for (int step = 0; step < 4; ++step) {
            double best = -1.0;
            int br = 0;
            int bc = 0;
            for (int r = 0; r < 4; ++r) {
                if (row_used[r]) continue;
                for (int c = 0; c < 4; ++c) {
                    if (col_used[c]) continue;
                    if (ov(r, c) > best) {
                        best = ov(r, c);
                        br = r;
                        bc = c;
                    }
                }
            }
            row_used[br] = col_used[bc] = true;
            col_of_prev_sorted[br] = bc;
        }
        for (int n = 0; n < 4; ++n) order[i][n] = col_of_prev_sorted[order[i - 1][n]];
    }
    return order;
}

}  // namespace topoladder
