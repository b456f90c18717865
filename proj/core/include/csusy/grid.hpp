#pragma once

#include <functional>
#include <vector>

namespace csusy {

/// Uniform 1D grid. Points are x_i = xmin + i*h, i = 0..n-1, with n odd so
/// that composite Simpson panels tile the whole range.
struct Grid {
    double xmin = 0.0;
    double xmax = 0.0;
    int n = 0;
    double h = 0.0;

    double x(int i) const { return xmin + i * h; }

    /// Index of a point that must coincide with a grid node (within h*1e-6).
    int index_of(double x0) const;

    bool same_as(const Grid& other) const;
};

Grid make_grid(double xmin, double xmax, int n);

/// Real-valued samples on a grid, optionally backed by analytic evaluators
/// (value and first/second derivative) when a closed form is known.
struct SampledFunction {
    Grid grid;
    std::vector<double> values;
    std::function<double(double)> f;    // optional
    std::function<double(double)> df;   // optional
    std::function<double(double)> d2f;  // optional

    static SampledFunction from_values(const Grid& g, std::vector<double> v);
    static SampledFunction sample(const Grid& g, std::function<double(double)> fn,
                                  std::function<double(double)> dfn = nullptr,
                                  std::function<double(double)> d2fn = nullptr);

    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
    int size() const { return grid.n; }
    bool has_analytic() const { return static_cast<bool>(f); }
    bool has_derivative() const { return static_cast<bool>(df); }
};

/// Composite Simpson integral of f over [x_i, x_j]. An odd number of panels
/// is closed with a three-point Newton-Cotes end panel, keeping O(h^4).
double integrate(const SampledFunction& f, int i, int j);

/// F(x) = int_{x_{i0}}^{x} f, defined at every grid point. Even offsets from
/// i0 accumulate exact Simpson panels (compensated summation); odd points add
/// one quadratic end panel on top of the neighbouring even point.
SampledFunction cumulative_integral_from(const SampledFunction& f, int i0);

/// Second-order first derivative: central differences in the interior,
/// one-sided three-point stencils at the boundaries.
SampledFunction differentiate(const SampledFunction& f);

/// Simpson quadrature of a*b over the whole grid.
double inner_product(const SampledFunction& a, const SampledFunction& b);

double l2_norm(const SampledFunction& a);

}  // namespace csusy
