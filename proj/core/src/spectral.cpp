#include "csusy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csusy {

TridiagonalOperator discretize(const SampledFunction& V) {
    const Grid& g = V.grid;
    if (g.n < 10) throw std::invalid_argument("discretize: need at least 10 grid points");
    for (double v : V.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("discretize: non-finite potential sample");
    }
    TridiagonalOperator op;
    op.grid = g;
    const double inv_h2 = 1.0 / (g.h * g.h);
    op.offdiag = -inv_h2;
    op.diag.resize(static_cast<std::size_t>(g.n - 2));
    for (int i = 1; i + 1 < g.n; ++i) {
        op.diag[static_cast<std::size_t>(i - 1)] = 2.0 * inv_h2 + V[i];
    }
    return op;
}

int eigenvalue_count_below(const TridiagonalOperator& op, double lambda) {
    // Sturm count via the LDL^T pivot recurrence d_i = a_i - lambda - b^2/d_{i-1};
    // the number of negative pivots equals the number of eigenvalues below lambda
    const double b2 = op.offdiag * op.offdiag;
    const double pivmin = std::max(b2, 1.0) * 1e-292;
    int count = 0;
    double d = op.diag[0] - lambda;
    if (d == 0.0) d = -pivmin;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < op.diag.size(); ++i) {
        d = op.diag[i] - lambda - b2 / d;
        if (d == 0.0) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int count) {
    const int n = op.dim();
    if (count < 1) throw std::invalid_argument("lowest_eigenvalues: count must be >= 1");
    if (count > n) throw std::invalid_argument("lowest_eigenvalues: count exceeds matrix size");

    // Gershgorin bracket
    double lo = op.diag[0] - 2.0 * std::abs(op.offdiag);
    double hi = op.diag[0] + 2.0 * std::abs(op.offdiag);
    for (double a : op.diag) {
        lo = std::min(lo, a - 2.0 * std::abs(op.offdiag));
        hi = std::max(hi, a + 2.0 * std::abs(op.offdiag));
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) {
        double a = lo, b = hi;
        // shrink until the k-th eigenvalue is pinned to 1e-10
        while (b - a > 1e-10) {
            const double mid = 0.5 * (a + b);
            if (eigenvalue_count_below(op, mid) >= k) {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

double residual(const SampledFunction& V, const SampledFunction& psi, double E) {
    if (!V.grid.same_as(psi.grid)) throw std::invalid_argument("residual: grid mismatch");
    const Grid& g = V.grid;
    double pmax = 0.0;
    for (double v : psi.values) pmax = std::max(pmax, std::abs(v));
    if (pmax == 0.0) return 0.0;
    const double inv_h2 = 1.0 / (g.h * g.h);
    double worst = 0.0;
    for (int i = 1; i + 1 < g.n; ++i) {
        const double lap = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) * inv_h2;
        worst = std::max(worst, std::abs(-lap + (V[i] - E) * psi[i]));
    }
    return worst / pmax;
}

SpectrumReport compare_spectra(const std::vector<std::pair<std::string, double>>& expected,
                               const std::vector<double>& computed, double tol, double threshold) {
    if (!(tol > 0.0)) throw std::invalid_argument("compare_spectra: tol must be > 0");
    if (computed.empty()) throw std::invalid_argument("compare_spectra: no computed levels");
    for (std::size_t i = 1; i < expected.size(); ++i) {
        if (expected[i].second < expected[i - 1].second) {
            throw std::invalid_argument("compare_spectra: expected levels must be sorted");
        }
    }

    SpectrumReport rpt;
    rpt.expected = expected;
    rpt.computed = computed;
    rpt.tol = tol;
    rpt.threshold = threshold;
    rpt.pass = true;

    std::vector<bool> used(computed.size(), false);
    for (int ei = 0; ei < static_cast<int>(expected.size()); ++ei) {
        const double target = expected[static_cast<std::size_t>(ei)].second;
        int best = -1;
        double best_err = std::numeric_limits<double>::infinity();
        for (int ci = 0; ci < static_cast<int>(computed.size()); ++ci) {
            if (used[static_cast<std::size_t>(ci)]) continue;
            if (computed[static_cast<std::size_t>(ci)] >= threshold) continue;
            const double err = std::abs(computed[static_cast<std::size_t>(ci)] - target);
            if (err < best_err) {
                best_err = err;
                best = ci;
            }
        }
        if (best < 0 || best_err > tol) {
            rpt.pass = false;
            rpt.matches.push_back({ei, -1, best_err});
        } else {
            used[static_cast<std::size_t>(best)] = true;
            rpt.matches.push_back({ei, best, best_err});
        }
    }

    // unpredicted levels below the expected band are a failure too
    const double band = expected.empty()
                            ? -std::numeric_limits<double>::infinity()
                            : expected.back().second + tol;
    const double cut = std::min(band, threshold);
    for (int ci = 0; ci < static_cast<int>(computed.size()); ++ci) {
        if (used[static_cast<std::size_t>(ci)]) continue;
        const double c = computed[static_cast<std::size_t>(ci)];
        if (c < cut || (expected.empty() && c < threshold)) {
            rpt.pass = false;
            rpt.matches.push_back({-1, ci, 0.0});
        }
    }
    return rpt;
}

}  // namespace csusy
