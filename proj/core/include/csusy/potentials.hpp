#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "csusy/grid.hpp"

namespace csusy {

enum class Side { Left, Right };

struct BoundStateTag {
    int m = 0;
};
struct RightVanishingTag {};
struct LeftVanishingTag {};
using SeedTag = std::variant<BoundStateTag, RightVanishingTag, LeftVanishingTag>;

/// Catalog of base potentials with analytic spectra and seed solutions where
/// known. Custom potentials come as samples (two-column file) and fall back
/// to Numerov integration for their seeds.
class Potential {
  public:
    enum class Kind { FreeParticle, PoschlTeller, HarmonicOscillator, Custom };

    static Potential free_particle();
    static Potential poschl_teller(double k0);
    static Potential harmonic_oscillator();
    static Potential custom(SampledFunction samples);

    Kind kind() const { return kind_; }
    double k0() const { return k0_; }

    double evaluate(double x) const;
    double derivative(double x) const;

    bool has_analytic_spectrum() const { return kind_ != Kind::Custom; }

    /// Lowest `count` discrete eigenvalues (may return fewer when the
    /// spectrum is finite; empty for the free particle).
    std::vector<double> known_spectrum(int count) const;

    /// Energy above which box states are continuum artifacts rather than
    /// bound states (+inf for confining potentials).
    double scattering_threshold() const;

    const SampledFunction& samples() const;

  private:
    Potential(Kind k, double k0) : kind_(k), k0_(k0) {}
    Kind kind_;
    double k0_ = 0.0;
    std::optional<SampledFunction> samples_;
};

/// Load a custom potential from a two-column text file (x and V(x)) sampled
/// on a strictly increasing uniform grid with an odd number of rows.
Potential load_custom_potential(const std::string& path);

/// A solution u of -u'' + V u = eps u driving a confluent transform, sampled
/// on the session grid together with its derivative and the potential.
struct SeedSolution {
    double epsilon = 0.0;
    SampledFunction u;
    SampledFunction du;
    SampledFunction potential;
    SeedTag tag;

    bool decays_left = false;
    bool decays_right = false;
    /// integral of u^2 beyond the grid edge, a WKB estimate u_edge^2/(2 kappa);
    /// meaningful only on a decaying side
    double tail_left = 0.0;
    double tail_right = 0.0;
    /// oscillator seeds record which sign branch of the closed-form solution
    /// realized the requested vanishing side (+1/-1; 0 elsewhere)
    int formula_sign = 0;

    /// nu_+ = integral of u^2 from x_{i0} to +infinity (nullopt when the
    /// right side does not decay). Computed with the same cumulative
    /// quadrature the transform uses, so the two cancel exactly.
    std::optional<double> nu_plus(int x0_index) const;
    /// nu_- = integral of u^2 from -infinity to x_{i0}.
    std::optional<double> nu_minus(int x0_index) const;

    /// Grid quadrature of u^2 plus both tail estimates.
    double norm_squared() const;

    bool is_bound_state() const { return std::holds_alternative<BoundStateTag>(tag); }
};

/// Normalized bound state psi_m as a transformation function. Errors if the
/// grid is too narrow to hold the state (norm off by more than 1e-6).
SeedSolution bound_state(const Potential& p, int m, const Grid& g);

/// Non-normalizable solution at energy eps vanishing on the requested side.
/// Free particle and Poschl-Teller use closed forms; the oscillator and
/// custom potentials integrate inward from the vanishing edge (stable
/// direction), the oscillator anchored to its closed-form initial data near
/// x = 0 so the usual normalization conventions hold.
SeedSolution seed_solution(const Potential& p, double epsilon, Side side, const Grid& g);

}  // namespace csusy
