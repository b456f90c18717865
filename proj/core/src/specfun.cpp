#include "csusy/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace csusy::specfun {

namespace {

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

#if defined(__GNUC__) && defined(__x86_64__)
using widest = __float128;
#else
using widest = long double;
#endif

}  // namespace

double gamma(double x) {
    if (is_nonpositive_integer(x)) {
        throw std::invalid_argument("gamma: pole at non-positive integer x = " + std::to_string(x));
    }
    return std::tgamma(x);
}

double hermite(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite: n must be >= 0");
    if (n == 0) return 1.0;
    double hm1 = 1.0;        // H_0
    double h = 2.0 * x;      // H_1
    for (int k = 1; k < n; ++k) {
        const double hp1 = 2.0 * x * h - 2.0 * k * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

double kummer_1f1(double a, double b, double z, SeriesControl ctl) {
    if (is_nonpositive_integer(b)) {
        throw std::invalid_argument("kummer_1f1: b must not be a non-positive integer");
    }
    if (z < 0.0) {
        return std::exp(z) * kummer_1f1(b - a, b, -z, ctl);
    }
    double sum = 1.0;
    double term = 1.0;
    for (int k = 0; k < ctl.max_terms; ++k) {
        term *= (a + k) / (b + k) * z / (k + 1);
        sum += term;
        if (term == 0.0) return sum;  // terminating series (a a non-positive integer)
        if (std::abs(term) < ctl.rel_tol * std::abs(sum)) return sum;
    }
    throw std::runtime_error("kummer_1f1: no convergence within max_terms");
}

double hyper_2f2(double a1, double a2, double b1, double b2, double z, SeriesControl ctl) {
    if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2)) {
        throw std::invalid_argument("hyper_2f2: b parameters must not be non-positive integers");
    }
    widest sum = 1.0;
    widest term = 1.0;
    const widest zq = z;
    // push well below the final double tolerance: after heavy alternating
    // cancellation the surviving sum can sit ~19 digits under the term peak
    const widest tol = static_cast<widest>(ctl.rel_tol < 1e-30 ? ctl.rel_tol : 1e-30);
    for (int k = 0; k < ctl.max_terms; ++k) {
        const widest prev = term < 0 ? -term : term;
        term *= (widest(a1) + k) * (widest(a2) + k) / ((widest(b1) + k) * (widest(b2) + k)) * zq / (k + 1);
        sum += term;
        if (term == widest(0)) return static_cast<double>(sum);
        const widest aterm = term < 0 ? -term : term;
        const widest asum = sum < 0 ? -sum : sum;
        // the relative test is meaningful only past the term-magnitude peak
        if (aterm < prev && aterm <= tol * asum) return static_cast<double>(sum);
    }
    throw std::runtime_error("hyper_2f2: no convergence within max_terms");
}

}  // namespace csusy::specfun
