#include "csusy/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "csusy/numerov.hpp"
#include "csusy/specfun.hpp"

namespace csusy {

namespace {

constexpr double kEpsCollisionTol = 1e-9;  // natural units; below quadrature, above round-off

SampledFunction squared(const SampledFunction& u) {
    std::vector<double> v(static_cast<std::size_t>(u.grid.n));
    for (int i = 0; i < u.grid.n; ++i) v[static_cast<std::size_t>(i)] = u[i] * u[i];
    return SampledFunction::from_values(u.grid, std::move(v));
}

/// WKB estimate of the norm mass beyond a grid edge, assuming V stays near
/// its edge value: integral of u_edge^2 e^{-2 kappa s} ds = u_edge^2/(2 kappa).
double wkb_tail(double u_edge, double v_edge, double eps) {
    const double g = v_edge - eps;
    if (g <= 0.0) return 0.0;
    return u_edge * u_edge / (2.0 * std::sqrt(g));
}

void check_edge_decay(const SeedSolution& s, Side side) {
    const Grid& g = s.u.grid;
    const double sqrt_h = std::sqrt(g.h);
    const double boundary_tol = 1e-3;
    const int mid = g.n / 2;
    double part;
    double edge;
    if (side == Side::Right) {
        part = integrate(squared(s.u), mid, g.n - 1) + s.tail_right;
        edge = std::abs(s.u[g.n - 1]);
    } else {
        part = integrate(squared(s.u), 0, mid) + s.tail_left;
        edge = std::abs(s.u[0]);
    }
    if (!(edge * sqrt_h <= boundary_tol * std::sqrt(part))) {
        throw std::runtime_error(
            "seed does not vanish at the requested boundary (grid too narrow or wrong side)");
    }
}

}  // namespace

Potential Potential::free_particle() { return Potential(Kind::FreeParticle, 0.0); }

Potential Potential::poschl_teller(double k0) {
    if (!(k0 > 0.0)) throw std::invalid_argument("poschl_teller: k0 must be > 0");
    return Potential(Kind::PoschlTeller, k0);
}

Potential Potential::harmonic_oscillator() { return Potential(Kind::HarmonicOscillator, 0.0); }

Potential Potential::custom(SampledFunction samples) {
    Potential p(Kind::Custom, 0.0);
    p.samples_ = std::move(samples);
    return p;
}

double Potential::evaluate(double x) const {
    switch (kind_) {
        case Kind::FreeParticle:
            return 0.0;
        case Kind::PoschlTeller: {
            const double s = 1.0 / std::cosh(k0_ * x);
            return -2.0 * k0_ * k0_ * s * s;
        }
        case Kind::HarmonicOscillator:
            return x * x;
        case Kind::Custom: {
            const Grid& g = samples_->grid;
            if (x < g.xmin - 1e-9 * g.h || x > g.xmax + 1e-9 * g.h) {
                throw std::out_of_range("custom potential evaluated outside its sample range");
            }
            const double t = std::clamp((x - g.xmin) / g.h, 0.0, static_cast<double>(g.n - 1));
            const int i = std::min(static_cast<int>(t), g.n - 2);
            const double w = t - i;
            return (1.0 - w) * (*samples_)[i] + w * (*samples_)[i + 1];
        }
    }
    return 0.0;
}

double Potential::derivative(double x) const {
    switch (kind_) {
        case Kind::FreeParticle:
            return 0.0;
        case Kind::PoschlTeller: {
            const double s = 1.0 / std::cosh(k0_ * x);
            return 4.0 * k0_ * k0_ * k0_ * s * s * std::tanh(k0_ * x);
        }
        case Kind::HarmonicOscillator:
            return 2.0 * x;
        case Kind::Custom: {
            const Grid& g = samples_->grid;
            const double hh = g.h;
            const double xl = std::max(x - hh, g.xmin);
            const double xr = std::min(x + hh, g.xmax);
            return (evaluate(xr) - evaluate(xl)) / (xr - xl);
        }
    }
    return 0.0;
}

std::vector<double> Potential::known_spectrum(int count) const {
    if (count < 0) throw std::invalid_argument("known_spectrum: count must be >= 0");
    switch (kind_) {
        case Kind::FreeParticle:
            return {};
        case Kind::PoschlTeller:
            return count >= 1 ? std::vector<double>{-k0_ * k0_} : std::vector<double>{};
        case Kind::HarmonicOscillator: {
            std::vector<double> e(static_cast<std::size_t>(count));
            for (int n = 0; n < count; ++n) e[static_cast<std::size_t>(n)] = 2.0 * n + 1.0;
            return e;
        }
        case Kind::Custom:
            throw std::invalid_argument(
                "custom potential has no analytic spectrum; use the spectral module");
    }
    return {};
}

double Potential::scattering_threshold() const {
    switch (kind_) {
        case Kind::FreeParticle:
        case Kind::PoschlTeller:
            return 0.0;
        case Kind::HarmonicOscillator:
            return std::numeric_limits<double>::infinity();
        case Kind::Custom:
            return std::max(samples_->values.front(), samples_->values.back());
    }
    return 0.0;
}

const SampledFunction& Potential::samples() const {
    if (!samples_) throw std::logic_error("samples() is only available for custom potentials");
    return *samples_;
}

Potential load_custom_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open potential file: " + path);
    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        double x, v;
        if (!(ls >> x >> v)) throw std::runtime_error("malformed potential file line: " + line);
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.size() < 3) throw std::runtime_error("potential file needs at least 3 rows");
    if (xs.size() % 2 == 0) throw std::runtime_error("potential file needs an odd number of rows");
    const double h = xs[1] - xs[0];
    if (!(h > 0.0)) throw std::runtime_error("potential file x column must be strictly increasing");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double step = xs[i] - xs[i - 1];
        if (!(step > 0.0) || std::abs(step - h) > 1e-6 * h) {
            throw std::runtime_error("potential file x column must be uniform and increasing");
        }
    }
    Grid g = make_grid(xs.front(), xs.back(), static_cast<int>(xs.size()));
    return Potential::custom(SampledFunction::from_values(g, std::move(vs)));
}

std::optional<double> SeedSolution::nu_plus(int x0_index) const {
    if (!decays_right) return std::nullopt;
    const SampledFunction F = cumulative_integral_from(squared(u), x0_index);
    return F.values.back() + tail_right;
}

std::optional<double> SeedSolution::nu_minus(int x0_index) const {
    if (!decays_left) return std::nullopt;
    const SampledFunction F = cumulative_integral_from(squared(u), x0_index);
    return -F.values.front() + tail_left;
}

double SeedSolution::norm_squared() const {
    return integrate(squared(u), 0, u.grid.n - 1) + tail_left + tail_right;
}

namespace {

SeedSolution make_analytic_seed(const Potential& p, double eps, const Grid& g, SeedTag tag,
                                std::function<double(double)> fu, std::function<double(double)> fdu) {
    SeedSolution s;
    s.epsilon = eps;
    // p is captured by value: the evaluators may outlive the caller's object
    auto d2 = [p, eps, fu](double x) { return (p.evaluate(x) - eps) * fu(x); };
    s.u = SampledFunction::sample(g, fu, fdu, d2);
    s.du = SampledFunction::sample(g, fdu);
    s.potential = SampledFunction::sample(
        g, [p](double x) { return p.evaluate(x); }, [p](double x) { return p.derivative(x); });
    s.tag = tag;
    const double vl = s.potential[0], vr = s.potential[g.n - 1];
    s.decays_left = vl - eps > 0.0 && (std::holds_alternative<BoundStateTag>(tag) ||
                                       std::holds_alternative<LeftVanishingTag>(tag));
    s.decays_right = vr - eps > 0.0 && (std::holds_alternative<BoundStateTag>(tag) ||
                                        std::holds_alternative<RightVanishingTag>(tag));
    if (s.decays_left) s.tail_left = wkb_tail(s.u[0], vl, eps);
    if (s.decays_right) s.tail_right = wkb_tail(s.u[g.n - 1], vr, eps);
    return s;
}

SeedSolution oscillator_bound_state(const Potential& p, int m, const Grid& g) {
    const double eps = 2.0 * m + 1.0;
    const double logc = -0.5 * (0.5 * std::log(M_PI) + m * std::log(2.0) + std::lgamma(m + 1.0));
    const double c = std::exp(logc);
    auto fu = [c, m](double x) { return c * std::exp(-x * x / 2.0) * specfun::hermite(m, x); };
    auto fdu = [c, m](double x) {
        const double hm = specfun::hermite(m, x);
        const double hm1 = m > 0 ? specfun::hermite(m - 1, x) : 0.0;
        return c * std::exp(-x * x / 2.0) * (2.0 * m * hm1 - x * hm);
    };
    return make_analytic_seed(p, eps, g, BoundStateTag{m}, fu, fdu);
}

SeedSolution poschl_teller_ground_state(const Potential& p, const Grid& g) {
    const double k0 = p.k0();
    const double eps = -k0 * k0;
    const double a = std::sqrt(k0 / 2.0);
    auto fu = [a, k0](double x) { return a / std::cosh(k0 * x); };
    auto fdu = [a, k0](double x) { return -a * k0 * std::tanh(k0 * x) / std::cosh(k0 * x); };
    return make_analytic_seed(p, eps, g, BoundStateTag{0}, fu, fdu);
}

SeedSolution free_particle_seed(const Potential& p, double eps, Side side, const Grid& g) {
    if (!(eps < 0.0)) throw std::invalid_argument("free-particle seeds require eps < 0");
    const double k = std::sqrt(-eps);
    const double a = std::sqrt(2.0 * k);
    const double sgn = side == Side::Right ? -1.0 : 1.0;  // e^{-kx} vanishes right
    auto fu = [a, k, sgn](double x) { return a * std::exp(sgn * k * x); };
    auto fdu = [a, k, sgn](double x) { return sgn * k * a * std::exp(sgn * k * x); };
    SeedTag tag = side == Side::Right ? SeedTag{RightVanishingTag{}} : SeedTag{LeftVanishingTag{}};
    return make_analytic_seed(p, eps, g, tag, fu, fdu);
}

SeedSolution poschl_teller_seed(const Potential& p, double eps, Side side, const Grid& g) {
    if (!(eps < 0.0)) throw std::invalid_argument("Poschl-Teller seeds require eps < 0");
    const double k0 = p.k0();
    if (std::abs(eps + k0 * k0) <= kEpsCollisionTol) {
        throw std::invalid_argument("eps collides with the Poschl-Teller bound state energy");
    }
    const double k = std::sqrt(-eps);
    const double a = std::sqrt(2.0 * k);
    // u = sqrt(2k) e^{-kx} (k0 tanh + k) vanishes right; the e^{+kx} partner
    // with (k0 tanh - k) vanishes left
    auto fu = [a, k, k0, side](double x) {
        if (side == Side::Right) return a * std::exp(-k * x) * (k0 * std::tanh(k0 * x) + k);
        return a * std::exp(k * x) * (k0 * std::tanh(k0 * x) - k);
    };
    auto fdu = [a, k, k0, side](double x) {
        const double th = std::tanh(k0 * x);
        const double sech = 1.0 / std::cosh(k0 * x);
        if (side == Side::Right) {
            return a * std::exp(-k * x) * (-k * (k0 * th + k) + k0 * k0 * sech * sech);
        }
        return a * std::exp(k * x) * (k * (k0 * th - k) + k0 * k0 * sech * sech);
    };
    SeedTag tag = side == Side::Right ? SeedTag{RightVanishingTag{}} : SeedTag{LeftVanishingTag{}};
    SeedSolution s = make_analytic_seed(p, eps, g, tag, fu, fdu);
    check_edge_decay(s, side);
    return s;
}

/// Oscillator seed at eps not in the spectrum. The closed-form solution
/// e^{-x^2/2}[1F1 +- 2x (Gamma ratio) 1F1] is a difference of terms growing
/// like e^{+x^2/2} on its vanishing side, so evaluating it beyond |x| ~ 6
/// cancels catastrophically in doubles. Instead: Numerov-integrate inward
/// from the vanishing edge (the stable direction), then match the scale to
/// the closed form at the grid point nearest x = 0, where it is exact.
SeedSolution oscillator_vanishing_seed(const Potential& p, double eps, Side side, const Grid& g) {
    const int m_near = std::max(0, static_cast<int>(std::lround((eps - 1.0) / 2.0)));
    if (std::abs(eps - (2.0 * m_near + 1.0)) <= kEpsCollisionTol) {
        throw std::invalid_argument("eps collides with an oscillator eigenvalue");
    }
    if (g.xmin * g.xmin <= eps || g.xmax * g.xmax <= eps) {
        throw std::invalid_argument("oscillator seed grid must end inside the forbidden region");
    }

    std::vector<double> gv(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) gv[static_cast<std::size_t>(i)] = g.x(i) * g.x(i) - eps;
    std::vector<double> u = numerov_sweep(gv, g.h, side == Side::Left);

    // closed-form anchor
    const double a1 = (1.0 - eps) / 4.0;
    const double a2 = (3.0 - eps) / 4.0;
    const double ratio = specfun::gamma(a2) / specfun::gamma(a1);
    auto formula = [a1, a2, ratio](double x, int sign) {
        const double z = x * x;
        return std::exp(-z / 2.0) * (specfun::kummer_1f1(a1, 0.5, z) +
                                     sign * 2.0 * x * ratio * specfun::kummer_1f1(a2, 1.5, z));
    };

    int anchor = 0;
    for (int i = 1; i < g.n; ++i) {
        if (std::abs(g.x(i)) < std::abs(g.x(anchor))) anchor = i;
    }
    if (std::abs(g.x(anchor)) > 2.0 || anchor == 0 || anchor == g.n - 1) {
        throw std::invalid_argument("oscillator seed grid must cover the region around x = 0");
    }

    const double rn = u[static_cast<std::size_t>(anchor + 1)] / u[static_cast<std::size_t>(anchor)];
    int sign = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int s : {+1, -1}) {
        const double rf = formula(g.x(anchor + 1), s) / formula(g.x(anchor), s);
        const double mis = std::abs(rf - rn);
        if (mis < best) {
            best = mis;
            sign = s;
        }
    }
    if (!(best < 1e-4 * (1.0 + std::abs(rn)))) {
        throw std::runtime_error(
            "no sign branch of the oscillator solution vanishes on the requested side");
    }
    const double scale = formula(g.x(anchor), sign) / u[static_cast<std::size_t>(anchor)];
    for (double& v : u) v *= scale;

    SeedSolution s;
    s.epsilon = eps;
    s.u = SampledFunction::from_values(g, std::move(u));
    std::vector<double> gp(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) gp[static_cast<std::size_t>(i)] = 2.0 * g.x(i);
    s.du = SampledFunction::from_values(g, schrodinger_derivative(s.u.values, gv, gp, g.h));
    s.potential = SampledFunction::sample(
        g, [](double x) { return x * x; }, [](double x) { return 2.0 * x; });
    s.tag = side == Side::Right ? SeedTag{RightVanishingTag{}} : SeedTag{LeftVanishingTag{}};
    s.formula_sign = sign;
    if (side == Side::Left) {
        s.decays_left = true;
        s.tail_left = wkb_tail(s.u[0], s.potential[0], eps);
    } else {
        s.decays_right = true;
        s.tail_right = wkb_tail(s.u[g.n - 1], s.potential[g.n - 1], eps);
    }
    check_edge_decay(s, side);
    return s;
}

SeedSolution custom_vanishing_seed(const Potential& p, double eps, Side side, const Grid& g) {
    std::vector<double> vv(static_cast<std::size_t>(g.n)), gv(static_cast<std::size_t>(g.n)),
        gp(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) {
        vv[static_cast<std::size_t>(i)] = p.evaluate(g.x(i));
        gv[static_cast<std::size_t>(i)] = vv[static_cast<std::size_t>(i)] - eps;
        gp[static_cast<std::size_t>(i)] = p.derivative(g.x(i));
    }
    std::vector<double> u = numerov_sweep(gv, g.h, side == Side::Left);
    // free overall scale; normalize to a max of 1 for readable output
    double umax = 0.0;
    for (double v : u) umax = std::max(umax, std::abs(v));
    for (double& v : u) v /= umax;

    SeedSolution s;
    s.epsilon = eps;
    s.u = SampledFunction::from_values(g, std::move(u));
    s.du = SampledFunction::from_values(g, schrodinger_derivative(s.u.values, gv, gp, g.h));
    s.potential = SampledFunction::from_values(g, std::move(vv));
    s.tag = side == Side::Right ? SeedTag{RightVanishingTag{}} : SeedTag{LeftVanishingTag{}};
    if (side == Side::Left) {
        s.decays_left = true;
        s.tail_left = wkb_tail(s.u[0], s.potential[0], eps);
    } else {
        s.decays_right = true;
        s.tail_right = wkb_tail(s.u[g.n - 1], s.potential[g.n - 1], eps);
    }
    check_edge_decay(s, side);
    return s;
}

}  // namespace

SeedSolution bound_state(const Potential& p, int m, const Grid& g) {
    SeedSolution s;
    switch (p.kind()) {
        case Potential::Kind::FreeParticle:
            throw std::invalid_argument("the free particle has no bound states");
        case Potential::Kind::PoschlTeller:
            if (m != 0) throw std::invalid_argument("Poschl-Teller has a single bound state (m = 0)");
            s = poschl_teller_ground_state(p, g);
            break;
        case Potential::Kind::HarmonicOscillator:
            if (m < 0) throw std::invalid_argument("bound_state: m must be >= 0");
            s = oscillator_bound_state(p, m, g);
            break;
        case Potential::Kind::Custom:
            throw std::invalid_argument(
                "bound states of custom potentials are not cataloged; use the spectral module");
    }
    const double norm2 = s.norm_squared();
    if (std::abs(norm2 - 1.0) > 1e-6) {
        throw std::runtime_error("grid too narrow to hold the bound state: |norm^2 - 1| = " +
                                 std::to_string(std::abs(norm2 - 1.0)));
    }
    return s;
}

SeedSolution seed_solution(const Potential& p, double epsilon, Side side, const Grid& g) {
    switch (p.kind()) {
        case Potential::Kind::FreeParticle:
            return free_particle_seed(p, epsilon, side, g);
        case Potential::Kind::PoschlTeller:
            return poschl_teller_seed(p, epsilon, side, g);
        case Potential::Kind::HarmonicOscillator:
            return oscillator_vanishing_seed(p, epsilon, side, g);
        case Potential::Kind::Custom:
            return custom_vanishing_seed(p, epsilon, side, g);
    }
    throw std::logic_error("unreachable");
}

}  // namespace csusy
