#pragma once

#include <span>
#include <vector>

namespace csusy {

/// Numerov sweep for u'' = g(x) u on a uniform grid, started at one edge
/// with WKB-decaying data u = delta, u' = kappa*delta, kappa = sqrt(g_edge).
/// Sweeping away from a classically forbidden edge amplifies the solution
/// that decays toward that edge, so the result converges onto it regardless
/// of small errors in the initial data. The overall scale is arbitrary.
///
/// Requires g > 0 at the starting edge; values are rescaled on the fly if
/// they approach overflow. O(h^4) global accuracy.
std::vector<double> numerov_sweep(std::span<const double> g, double h, bool from_left,
                                  double delta = 1e-10);

/// First derivative of a solution of u'' = g u. The h^2 truncation term of
/// the central difference is u'''/6 = (g u' + g' u)/6; substituting it back
/// gives u' = [D0 u - h^2 g' u / 6] / (1 + h^2 g / 6), accurate to O(h^4).
/// Boundary points fall back to one-sided O(h^2) stencils.
std::vector<double> schrodinger_derivative(std::span<const double> u, std::span<const double> g,
                                           std::span<const double> gprime, double h);

/// Max over interior points of the 4th-order discrete residual
/// |u'' - g u| / max|u| evaluated through the Numerov three-term relation.
double numerov_residual(std::span<const double> u, std::span<const double> g, double h);

}  // namespace csusy
