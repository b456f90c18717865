#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "csusy/grid.hpp"
#include "csusy/potentials.hpp"

namespace csusy {

/// Tolerance for pinning nu to the deletion boundaries (-1 and 0 in the
/// bound-state case, 0 in the vanishing-seed case). Deliberately tighter
/// than the singularity tolerance: nu near but off a boundary is a
/// legitimate, if extreme, regular transform.
inline constexpr double kBoundaryTol = 1e-9;

struct TransformConfig {
    double w0 = 0.0;
    int x0_index = 0;
    double singular_tol = 1e-8;  // min |w| / max |w| below which w counts as vanishing
};

enum class NuCase { CaseI, CaseII_Right, CaseII_Left };
enum class Verdict { Regular, Boundary, Singular };

/// nu controls regularity: a bound-state seed needs nu outside [-1, 0]
/// (endpoints delete the level), a one-side-vanishing seed needs nu >= 0
/// (nu = 0 leaves the spectrum untouched).
struct NuClassification {
    NuCase nu_case = NuCase::CaseI;
    double nu = 0.0;
    Verdict verdict = Verdict::Singular;
};

struct SpectralEffect {
    enum class Kind { Isospectral, Created, Deleted };
    Kind kind = Kind::Isospectral;
    double level = 0.0;  // created or deleted energy (the seed energy)
    std::optional<double> n0;
};

class SingularTransformError : public std::runtime_error {
  public:
    SingularTransformError(const std::string& msg, double x_near_zero)
        : std::runtime_error(msg), x_near_zero(x_near_zero) {}
    double x_near_zero;
};

/// w(x) = w0 - int_{x0}^x u^2; w(x0) = w0 exactly. Decreasing by
/// construction since w' = -u^2.
SampledFunction build_w(const SeedSolution& seed, const TransformConfig& cfg);

NuClassification classify(const SeedSolution& seed, const TransformConfig& cfg);

/// Config with w0 derived from a target nu: w0 = nu + nu_+ for bound-state
/// and right-vanishing seeds, w0 = -(nu + nu_-) for left-vanishing ones.
TransformConfig config_from_nu(const SeedSolution& seed, double nu, int x0_index,
                               double singular_tol = 1e-8);

/// Partner potential through the identity Vt = V + 4 u u'/w + 2 u^4/w^2
/// (w' = -u^2 and w'' = -2 u u' are exact, so no numerical differentiation
/// of w enters). Throws SingularTransformError when w vanishes anywhere the
/// seed still carries weight.
SampledFunction partner_potential(const SeedSolution& seed, const SampledFunction& w);

/// eta = u^2/w and gamma = eps - V + eta^2/2 - eta'/2 with the node-safe
/// identity eta' = (2 u u' w + u^4)/w^2, valid also at zeros of u.
std::pair<SampledFunction, SampledFunction> intertwiner(const SeedSolution& seed,
                                                        const SampledFunction& w);

/// A psi = psi'' + eta psi' + gamma psi, using analytic derivatives when psi
/// carries them and second-order differences otherwise.
SampledFunction apply_A(const SampledFunction& eta, const SampledFunction& gamma_fn,
                        const SampledFunction& psi);

struct ConfluentTransform {
    SeedSolution seed;
    TransformConfig config;
    SampledFunction w;
    NuClassification classification;
    SampledFunction partner;    // Vt
    SampledFunction eta;
    SampledFunction gamma_fn;
    SpectralEffect effect;
    std::optional<SampledFunction> extra_state;  // created / replacement / deletion profile
};

/// Full pipeline: classify, build w, construct the partner and intertwiner,
/// and attach the spectral effect. A nu within kBoundaryTol of a deletion
/// boundary is snapped onto it (w0 recomputed accordingly) so the boundary
/// cases are exactly self-consistent on the grid. Throws on Singular.
ConfluentTransform make_transform(const SeedSolution& seed, TransformConfig cfg);

/// psi_n -> (E_n - eps)^{-1} A psi_n, renormalized by quadrature (the
/// analytic normalization only survives discretization to O(h^2)).
SampledFunction partner_eigenstate(const ConfluentTransform& t, const SampledFunction& psi_n,
                                   double E_n);

/// The nu u/w state and what it does to the spectrum:
///   bound-state seed, nu outside [-1,0]: replaces psi_m (isospectral), n0 = sqrt(nu(nu+1))
///   bound-state seed, nu = -1 or 0:      level deleted, profile non-normalizable
///   vanishing seed, nu > 0:              level created at eps, n0 = sqrt(nu)
///   vanishing seed, nu = 0:              isospectral, no extra state
std::pair<SpectralEffect, std::optional<SampledFunction>> created_or_missing_state(
    const ConfluentTransform& t);

}  // namespace csusy
