#include "csusy/confluent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace csusy {

namespace {

SampledFunction seed_squared(const SeedSolution& seed) {
    std::vector<double> v(static_cast<std::size_t>(seed.u.grid.n));
    for (int i = 0; i < seed.u.grid.n; ++i) v[static_cast<std::size_t>(i)] = seed.u[i] * seed.u[i];
    return SampledFunction::from_values(seed.u.grid, std::move(v));
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double nu_from_w0(const SeedSolution& seed, double w0, int x0_index, NuCase c) {
    if (c == NuCase::CaseII_Left) {
        const auto num = seed.nu_minus(x0_index);
        if (!num) throw std::invalid_argument("seed lacks nu_- (left side does not decay)");
        return -(w0 + *num);
    }
    const auto nup = seed.nu_plus(x0_index);
    if (!nup) throw std::invalid_argument("seed lacks nu_+ (right side does not decay)");
    return w0 - *nup;
}

NuCase case_of(const SeedSolution& seed) {
    if (std::holds_alternative<BoundStateTag>(seed.tag)) return NuCase::CaseI;
    if (std::holds_alternative<RightVanishingTag>(seed.tag)) return NuCase::CaseII_Right;
    return NuCase::CaseII_Left;
}

/// Recover the classification from w itself: nu is the asymptotic value of
/// w, obtainable from any single sample, so w[0] together with the seed's
/// partial norms pins it down.
NuClassification classify_from_w(const SeedSolution& seed, const SampledFunction& w) {
    TransformConfig probe;
    probe.w0 = w.values.front();
    probe.x0_index = 0;
    return classify(seed, probe);
}

/// Refuse transforms whose w vanishes where the seed still carries weight.
/// In the deletion (boundary) cases w legitimately sinks into the round-off
/// floor inside a tail where u^2 has already decayed to nothing; zeros there
/// are harmless because every use of 1/w is damped by u^2.
void enforce_regularity(const SeedSolution& seed, const SampledFunction& w, double singular_tol) {
    if (!w.grid.same_as(seed.u.grid)) throw std::invalid_argument("w/seed grid mismatch");
    const NuClassification cls = classify_from_w(seed, w);
    auto fail = [&](double x) {
        throw SingularTransformError(
            "transform is singular: w(x) vanishes near x = " + std::to_string(x), x);
    };
    if (cls.verdict == Verdict::Singular) {
        for (int i = 0; i + 1 < w.grid.n; ++i) {
            if (w[i] * w[i + 1] <= 0.0) fail(w.grid.x(i));
        }
        fail(cls.nu_case == NuCase::CaseII_Left ? w.grid.xmin : w.grid.xmax);  // zero beyond the grid
    }
    double u2max = 0.0;
    for (int i = 0; i < seed.u.grid.n; ++i) u2max = std::max(u2max, seed.u[i] * seed.u[i]);
    for (int i = 0; i < w.grid.n; ++i) {
        const bool active = seed.u[i] * seed.u[i] > 1e-14 * u2max;
        if (!active) continue;
        if (w[i] == 0.0) fail(w.grid.x(i));
        if (i + 1 < w.grid.n && seed.u[i + 1] * seed.u[i + 1] > 1e-14 * u2max &&
            w[i] * w[i + 1] < 0.0) {
            fail(w.grid.x(i));
        }
    }
    // with a bound-state seed w is bounded between nu and nu+1, so a global
    // relative floor is meaningful there (for vanishing seeds w grows without
    // bound on one side and the sign scan above is the whole check)
    if (cls.nu_case == NuCase::CaseI && cls.verdict == Verdict::Regular) {
        const double wmax = max_abs(w.values);
        for (int i = 0; i < w.grid.n; ++i) {
            if (std::abs(w[i]) <= singular_tol * wmax) fail(w.grid.x(i));
        }
    }
}

}  // namespace

SampledFunction build_w(const SeedSolution& seed, const TransformConfig& cfg) {
    const Grid& g = seed.u.grid;
    if (cfg.x0_index < 0 || cfg.x0_index >= g.n) {
        throw std::invalid_argument("build_w: x0_index out of range");
    }
    SampledFunction F = cumulative_integral_from(seed_squared(seed), cfg.x0_index);
    std::vector<double> w(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) w[static_cast<std::size_t>(i)] = cfg.w0 - F[i];
    return SampledFunction::from_values(g, std::move(w));
}

NuClassification classify(const SeedSolution& seed, const TransformConfig& cfg) {
    NuClassification out;
    out.nu_case = case_of(seed);
    out.nu = nu_from_w0(seed, cfg.w0, cfg.x0_index, out.nu_case);

    const double nu = out.nu;
    if (out.nu_case == NuCase::CaseI) {
        if (std::abs(nu + 1.0) <= kBoundaryTol || std::abs(nu) <= kBoundaryTol) {
            out.verdict = Verdict::Boundary;
        } else if (nu < -1.0 || nu > 0.0) {
            out.verdict = Verdict::Regular;
        } else {
            out.verdict = Verdict::Singular;
        }
    } else {
        if (std::abs(nu) <= kBoundaryTol) {
            out.verdict = Verdict::Boundary;
        } else if (nu > 0.0) {
            out.verdict = Verdict::Regular;
        } else {
            out.verdict = Verdict::Singular;
        }
    }
    return out;
}

TransformConfig config_from_nu(const SeedSolution& seed, double nu, int x0_index,
                               double singular_tol) {
    TransformConfig cfg;
    cfg.x0_index = x0_index;
    cfg.singular_tol = singular_tol;
    switch (case_of(seed)) {
        case NuCase::CaseI:
        case NuCase::CaseII_Right: {
            const auto nup = seed.nu_plus(x0_index);
            if (!nup) throw std::invalid_argument("seed lacks nu_+; cannot derive w0 from nu");
            cfg.w0 = nu + *nup;
            break;
        }
        case NuCase::CaseII_Left: {
            const auto num = seed.nu_minus(x0_index);
            if (!num) throw std::invalid_argument("seed lacks nu_-; cannot derive w0 from nu");
            cfg.w0 = -(nu + *num);
            break;
        }
    }
    return cfg;
}

SampledFunction partner_potential(const SeedSolution& seed, const SampledFunction& w) {
    enforce_regularity(seed, w, 1e-8);
    const Grid& g = seed.u.grid;
    std::vector<double> vt(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const double u = seed.u[i];
        const double up = seed.du[i];
        const double wi = w[i];
        double corr = 0.0;
        if (u != 0.0 || up != 0.0) {
            if (wi == 0.0) {
                // only reachable in a fully decayed tail (check_nodeless
                // guards the active region); there the correction is zero
                corr = 0.0;
            } else {
                const double u2w = u * u / wi;
                corr = 4.0 * u * up / wi + 2.0 * u2w * u2w;
            }
        }
        vt[static_cast<std::size_t>(i)] = seed.potential[i] + corr;
    }
    return SampledFunction::from_values(g, std::move(vt));
}

std::pair<SampledFunction, SampledFunction> intertwiner(const SeedSolution& seed,
                                                        const SampledFunction& w) {
    enforce_regularity(seed, w, 1e-8);
    const Grid& g = seed.u.grid;
    std::vector<double> eta(static_cast<std::size_t>(g.n)), gam(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        const double u = seed.u[i];
        const double up = seed.du[i];
        const double wi = w[i];
        double e = 0.0, ep = 0.0;
        if (wi != 0.0) {
            e = u * u / wi;
            ep = 2.0 * u * up / wi + e * e;
        }
        eta[static_cast<std::size_t>(i)] = e;
        gam[static_cast<std::size_t>(i)] =
            seed.epsilon - seed.potential[i] + 0.5 * e * e - 0.5 * ep;
    }
    return {SampledFunction::from_values(g, std::move(eta)),
            SampledFunction::from_values(g, std::move(gam))};
}

SampledFunction apply_A(const SampledFunction& eta, const SampledFunction& gamma_fn,
                        const SampledFunction& psi) {
    const Grid& g = psi.grid;
    if (!g.same_as(eta.grid) || !g.same_as(gamma_fn.grid)) {
        throw std::invalid_argument("apply_A: grid mismatch");
    }
    std::vector<double> d1(static_cast<std::size_t>(g.n)), d2(static_cast<std::size_t>(g.n));
    if (psi.df && psi.d2f) {
        for (int i = 0; i < g.n; ++i) {
            d1[static_cast<std::size_t>(i)] = psi.df(g.x(i));
            d2[static_cast<std::size_t>(i)] = psi.d2f(g.x(i));
        }
    } else {
        const SampledFunction fd1 = differentiate(psi);
        d1 = fd1.values;
        const double h2 = g.h * g.h;
        for (int i = 1; i + 1 < g.n; ++i) {
            d2[static_cast<std::size_t>(i)] = (psi[i + 1] - 2.0 * psi[i] + psi[i - 1]) / h2;
        }
        d2[0] = d2[1];
        d2[static_cast<std::size_t>(g.n - 1)] = d2[static_cast<std::size_t>(g.n - 2)];
    }
    std::vector<double> out(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        out[static_cast<std::size_t>(i)] =
            d2[static_cast<std::size_t>(i)] + eta[i] * d1[static_cast<std::size_t>(i)] + gamma_fn[i] * psi[i];
    }
    return SampledFunction::from_values(g, std::move(out));
}

ConfluentTransform make_transform(const SeedSolution& seed, TransformConfig cfg) {
    ConfluentTransform t;
    t.classification = classify(seed, cfg);

    // snap boundary nu exactly onto its target and rebuild w0 from it, so
    // the vanishing tail of w telescopes against the same quadrature that
    // produced nu instead of drowning in cancellation noise
    if (t.classification.verdict == Verdict::Boundary) {
        double target = 0.0;
        if (t.classification.nu_case == NuCase::CaseI &&
            std::abs(t.classification.nu + 1.0) <= kBoundaryTol) {
            target = -1.0;
        }
        cfg = config_from_nu(seed, target, cfg.x0_index, cfg.singular_tol);
        t.classification.nu = target;
        t.classification.verdict = Verdict::Boundary;
    }

    t.seed = seed;
    t.config = cfg;
    t.w = build_w(seed, cfg);

    if (t.classification.verdict == Verdict::Singular) {
        // locate the sign change for the error report
        double xloc = t.w.grid.x(0);
        for (int i = 0; i + 1 < t.w.grid.n; ++i) {
            if (t.w[i] * t.w[i + 1] <= 0.0) {
                xloc = t.w.grid.x(i);
                break;
            }
        }
        throw SingularTransformError(
            "transform is singular (nu = " + std::to_string(t.classification.nu) +
                " inside the forbidden interval); w vanishes near x = " + std::to_string(xloc),
            xloc);
    }

    enforce_regularity(seed, t.w, cfg.singular_tol);
    t.partner = partner_potential(seed, t.w);
    std::tie(t.eta, t.gamma_fn) = intertwiner(seed, t.w);
    std::tie(t.effect, t.extra_state) = created_or_missing_state(t);
    return t;
}

SampledFunction partner_eigenstate(const ConfluentTransform& t, const SampledFunction& psi_n,
                                   double E_n) {
    if (std::abs(E_n - t.seed.epsilon) <= kBoundaryTol) {
        throw std::invalid_argument(
            "partner_eigenstate: E_n coincides with the factorization energy; "
            "that level is handled by created_or_missing_state");
    }
    SampledFunction a = apply_A(t.eta, t.gamma_fn, psi_n);
    const double scale = 1.0 / (E_n - t.seed.epsilon);
    for (double& v : a.values) v *= scale;
    const double nrm = l2_norm(a);
    if (!(nrm > 0.0)) throw std::runtime_error("partner_eigenstate: A psi_n vanished");
    for (double& v : a.values) v /= nrm;
    return a;
}

std::pair<SpectralEffect, std::optional<SampledFunction>> created_or_missing_state(
    const ConfluentTransform& t) {
    const NuClassification& cls = t.classification;
    if (cls.verdict == Verdict::Singular) {
        throw std::invalid_argument("created_or_missing_state: transform is singular");
    }
    const Grid& g = t.w.grid;

    auto u_over_w = [&](double n0) {
        std::vector<double> v(static_cast<std::size_t>(g.n), 0.0);
        for (int i = 0; i < g.n; ++i) {
            if (t.w[i] != 0.0) v[static_cast<std::size_t>(i)] = n0 * t.seed.u[i] / t.w[i];
        }
        return SampledFunction::from_values(g, std::move(v));
    };

    SpectralEffect eff;
    eff.level = t.seed.epsilon;
    if (cls.nu_case == NuCase::CaseI) {
        if (cls.verdict == Verdict::Boundary) {
            eff.kind = SpectralEffect::Kind::Deleted;
            return {eff, u_over_w(1.0)};  // non-normalizable profile, scale unit
        }
        eff.kind = SpectralEffect::Kind::Isospectral;
        eff.n0 = std::sqrt(cls.nu * (cls.nu + 1.0));
        return {eff, u_over_w(*eff.n0)};
    }
    if (cls.verdict == Verdict::Boundary) {  // nu = 0: nothing is added
        eff.kind = SpectralEffect::Kind::Isospectral;
        return {eff, std::nullopt};
    }
    eff.kind = SpectralEffect::Kind::Created;
    eff.n0 = std::sqrt(cls.nu);
    return {eff, u_over_w(*eff.n0)};
}

}  // namespace csusy
