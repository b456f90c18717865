#include "csusy/numerov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csusy {

std::vector<double> numerov_sweep(std::span<const double> g, double h, bool from_left, double delta) {
    const int n = static_cast<int>(g.size());
    if (n < 3) throw std::invalid_argument("numerov_sweep: need at least 3 points");
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);

    auto idx = [&](int k) { return from_left ? k : n - 1 - k; };

    const double g0 = g[static_cast<std::size_t>(idx(0))];
    if (!(g0 > 0.0)) {
        throw std::invalid_argument(
            "numerov_sweep: starting edge is not classically forbidden (V - eps <= 0)");
    }
    const double kappa = std::sqrt(g0);
    u[static_cast<std::size_t>(idx(0))] = delta;
    u[static_cast<std::size_t>(idx(1))] = delta * std::exp(kappa * h);

    const double c = h * h / 12.0;
    for (int k = 1; k + 1 < n; ++k) {
        const int im = idx(k - 1), i0 = idx(k), ip = idx(k + 1);
        const double num = 2.0 * u[static_cast<std::size_t>(i0)] * (1.0 + 5.0 * c * g[static_cast<std::size_t>(i0)]) -
                           u[static_cast<std::size_t>(im)] * (1.0 - c * g[static_cast<std::size_t>(im)]);
        const double den = 1.0 - c * g[static_cast<std::size_t>(ip)];
        u[static_cast<std::size_t>(ip)] = num / den;
        // rescale before the growing solution overflows; the caller fixes
        // the overall scale afterwards anyway
        if (std::abs(u[static_cast<std::size_t>(ip)]) > 1e250) {
            for (int j = 0; j <= k + 1; ++j) {
                u[static_cast<std::size_t>(idx(j))] *= 1e-100;
            }
        }
    }
    return u;
}

std::vector<double> schrodinger_derivative(std::span<const double> u, std::span<const double> g,
                                           std::span<const double> gprime, double h) {
    const int n = static_cast<int>(u.size());
    if (n < 3 || g.size() != u.size() || gprime.size() != u.size()) {
        throw std::invalid_argument("schrodinger_derivative: size mismatch");
    }
    std::vector<double> du(static_cast<std::size_t>(n));
    const double h2_6 = h * h / 6.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double d0 = (u[static_cast<std::size_t>(i + 1)] - u[static_cast<std::size_t>(i - 1)]) / (2.0 * h);
        du[static_cast<std::size_t>(i)] =
            (d0 - h2_6 * gprime[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)]) /
            (1.0 + h2_6 * g[static_cast<std::size_t>(i)]);
    }
    du[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    du[static_cast<std::size_t>(n - 1)] =
        (3.0 * u[static_cast<std::size_t>(n - 1)] - 4.0 * u[static_cast<std::size_t>(n - 2)] +
         u[static_cast<std::size_t>(n - 3)]) / (2.0 * h);
    return du;
}

double numerov_residual(std::span<const double> u, std::span<const double> g, double h) {
    const int n = static_cast<int>(u.size());
    if (n < 3 || g.size() != u.size()) throw std::invalid_argument("numerov_residual: size mismatch");
    double umax = 0.0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    if (umax == 0.0) return 0.0;
    const double c = h * h / 12.0;
    double worst = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double lhs = u[static_cast<std::size_t>(i + 1)] * (1.0 - c * g[static_cast<std::size_t>(i + 1)]) -
                           2.0 * u[static_cast<std::size_t>(i)] * (1.0 + 5.0 * c * g[static_cast<std::size_t>(i)]) +
                           u[static_cast<std::size_t>(i - 1)] * (1.0 - c * g[static_cast<std::size_t>(i - 1)]);
        worst = std::max(worst, std::abs(lhs) / (h * h));
    }
    return worst / umax;
}

}  // namespace csusy
