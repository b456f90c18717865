#include "csusy/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace csusy {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Single-step panel: integral of f over [x_k, x_{k+1}] from the cubic through
// four consecutive samples, picking whichever stencil fits inside the grid
// (centered, or the Adams-Moulton-style shifted ones at the edges). O(h^5)
// local error, matching the Simpson chain it closes. Grids with n = 3 fall
// back to the parabola through the three available points.
double step_panel(const SampledFunction& f, int k) {
    const int n = f.grid.n;
    const double h = f.grid.h;
    if (n < 4) {
        if (k >= 1) return h / 12.0 * (-f[k - 1] + 8.0 * f[k] + 5.0 * f[k + 1]);
        return h / 12.0 * (5.0 * f[k] + 8.0 * f[k + 1] - f[k + 2]);
    }
    if (k >= 1 && k + 2 <= n - 1) {
        return h / 24.0 * (-f[k - 1] + 13.0 * f[k] + 13.0 * f[k + 1] - f[k + 2]);
    }
    if (k >= 2) {
        return h / 24.0 * (f[k - 2] - 5.0 * f[k - 1] + 19.0 * f[k] + 9.0 * f[k + 1]);
    }
    return h / 24.0 * (9.0 * f[k] + 19.0 * f[k + 1] - 5.0 * f[k + 2] + f[k + 3]);
}

double simpson_pair(const SampledFunction& f, int k) {
    return f.grid.h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
}

}  // namespace

Grid make_grid(double xmin, double xmax, int n) {
    require(std::isfinite(xmin) && std::isfinite(xmax), "grid bounds must be finite");
    require(xmin < xmax, "grid requires xmin < xmax");
    require(n >= 3, "grid requires n >= 3");
    require(n % 2 == 1, "grid requires odd n (Simpson panels)");
    Grid g;
    g.xmin = xmin;
    g.xmax = xmax;
    g.n = n;
    g.h = (xmax - xmin) / static_cast<double>(n - 1);
    return g;
}

int Grid::index_of(double x0) const {
    const double t = (x0 - xmin) / h;
    const int i = static_cast<int>(std::lround(t));
    if (i < 0 || i >= n || std::abs(x(i) - x0) > 1e-6 * h) {
        throw std::invalid_argument("x0 = " + std::to_string(x0) + " is not a grid point");
    }
    return i;
}

bool Grid::same_as(const Grid& other) const {
    return n == other.n && xmin == other.xmin && xmax == other.xmax;
}

SampledFunction SampledFunction::from_values(const Grid& g, std::vector<double> v) {
    require(static_cast<int>(v.size()) == g.n, "values length must equal grid.n");
    for (double x : v) require(std::isfinite(x), "sampled values must be finite");
    SampledFunction s;
    s.grid = g;
    s.values = std::move(v);
    return s;
}

SampledFunction SampledFunction::sample(const Grid& g, std::function<double(double)> fn,
                                        std::function<double(double)> dfn,
                                        std::function<double(double)> d2fn) {
    std::vector<double> v(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) v[static_cast<std::size_t>(i)] = fn(g.x(i));
    SampledFunction s = from_values(g, std::move(v));
    s.f = std::move(fn);
    s.df = std::move(dfn);
    s.d2f = std::move(d2fn);
    return s;
}

double integrate(const SampledFunction& f, int i, int j) {
    require(i >= 0 && j < f.grid.n && i <= j, "integrate: index range out of bounds");
    if (i == j) return 0.0;
    double sum = 0.0;
    int k = i;
    // pair up panels while at least two remain
    for (; k + 2 <= j; k += 2) sum += simpson_pair(f, k);
    if (k < j) sum += step_panel(f, k);  // one odd panel left
    return sum;
}

SampledFunction cumulative_integral_from(const SampledFunction& f, int i0) {
    require(i0 >= 0 && i0 < f.grid.n, "cumulative_integral_from: i0 out of range");
    const int n = f.grid.n;
    std::vector<double> F(static_cast<std::size_t>(n), 0.0);

    // rightward even chain with Kahan compensation
    double acc = 0.0, comp = 0.0;
    for (int k = i0; k + 2 <= n - 1; k += 2) {
        const double term = simpson_pair(f, k) - comp;
        const double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
        F[static_cast<std::size_t>(k + 2)] = acc;
    }
    // rightward odd points: even neighbour plus one closing panel
    for (int k = i0 + 1; k <= n - 1; k += 2) {
        F[static_cast<std::size_t>(k)] = F[static_cast<std::size_t>(k - 1)] + step_panel(f, k - 1);
    }

    // leftward even chain
    acc = 0.0;
    comp = 0.0;
    for (int k = i0; k - 2 >= 0; k -= 2) {
        const double term = simpson_pair(f, k - 2) - comp;
        const double next = acc + term;
        comp = (next - acc) - term;
        acc = next;
        F[static_cast<std::size_t>(k - 2)] = -acc;
    }
    // leftward odd points
    for (int k = i0 - 1; k >= 0; k -= 2) {
        F[static_cast<std::size_t>(k)] = F[static_cast<std::size_t>(k + 1)] - step_panel(f, k);
    }

    return SampledFunction::from_values(f.grid, std::move(F));
}

SampledFunction differentiate(const SampledFunction& f) {
    const int n = f.grid.n;
    require(n >= 3, "differentiate: need at least 3 points");
    const double h = f.grid.h;
    std::vector<double> d(static_cast<std::size_t>(n));
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    for (int i = 1; i + 1 < n; ++i) {
        d[static_cast<std::size_t>(i)] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    }
    d[static_cast<std::size_t>(n - 1)] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return SampledFunction::from_values(f.grid, std::move(d));
}

double inner_product(const SampledFunction& a, const SampledFunction& b) {
    require(a.grid.same_as(b.grid), "inner_product: grid mismatch");
    std::vector<double> prod(static_cast<std::size_t>(a.grid.n));
    for (int i = 0; i < a.grid.n; ++i) prod[static_cast<std::size_t>(i)] = a[i] * b[i];
    return integrate(SampledFunction::from_values(a.grid, std::move(prod)), 0, a.grid.n - 1);
}

double l2_norm(const SampledFunction& a) { return std::sqrt(inner_product(a, a)); }

}  // namespace csusy
