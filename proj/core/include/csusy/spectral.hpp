#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "csusy/grid.hpp"

namespace csusy {

/// Second-order finite-difference Hamiltonian -d^2/dx^2 + V with Dirichlet
/// walls at the grid edges; acts on the n-2 interior points.
struct TridiagonalOperator {
    std::vector<double> diag;  // 2/h^2 + V(x_i), interior points
    double offdiag = 0.0;      // -1/h^2
    Grid grid;

    int dim() const { return static_cast<int>(diag.size()); }
};

TridiagonalOperator discretize(const SampledFunction& V);

/// The `count` smallest eigenvalues, ascending, by bisection on the Sturm
/// eigenvalue counter for symmetric tridiagonal matrices. Bisection is
/// refined to 1e-10; overall accuracy is the O(h^2) of the discretization.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int count);

/// Number of eigenvalues of op strictly below lambda (Sturm sequence count).
int eigenvalue_count_below(const TridiagonalOperator& op, double lambda);

/// max over interior points of |-psi'' + V psi - E psi| / max|psi| with a
/// central-difference psi''.
double residual(const SampledFunction& V, const SampledFunction& psi, double E);

struct SpectrumReport {
    struct Match {
        int expected_index = -1;
        int computed_index = -1;
        double abs_error = 0.0;
    };
    std::vector<std::pair<std::string, double>> expected;
    std::vector<double> computed;
    std::vector<Match> matches;
    bool pass = false;
    double tol = 0.0;
    double threshold = std::numeric_limits<double>::infinity();
};

/// Greedy nearest matching of expected levels against computed ones. Fails
/// when an expected level has no computed partner within tol, or when an
/// unpredicted computed level shows up below max(expected) + tol. Computed
/// levels at or above `threshold` (box-discretized continuum) are ignored.
/// An empty expected list passes exactly when nothing is computed below the
/// threshold.
SpectrumReport compare_spectra(const std::vector<std::pair<std::string, double>>& expected,
                               const std::vector<double>& computed, double tol,
                               double threshold = std::numeric_limits<double>::infinity());

}  // namespace csusy
