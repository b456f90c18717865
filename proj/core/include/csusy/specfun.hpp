#pragma once

namespace csusy::specfun {

/// Truncation policy for hypergeometric series.
struct SeriesControl {
    double rel_tol = 1e-14;
    int max_terms = 500;
};

/// Gamma function for real arguments away from the poles at 0, -1, -2, ...
double gamma(double x);

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
/// H_{n+1} = 2x H_n - 2n H_{n-1}.
double hermite(int n, double x);

/// Confluent hypergeometric 1F1(a, b; z). Negative z is routed through the
/// Kummer transform 1F1(a,b;z) = e^z 1F1(b-a,b;-z) so the summed series has
/// eventually positive terms instead of an alternating cancellation.
double kummer_1f1(double a, double b, double z, SeriesControl ctl = {});

/// Generalized hypergeometric 2F2(a1, a2; b1, b2; z) by direct series with
/// term-ratio recurrence. The accumulation runs in extended precision: for
/// z < 0 the terms alternate and peak near e^{|z|}, which double precision
/// cannot cancel back down at the |z| ~ 36 this library needs.
double hyper_2f2(double a1, double a2, double b1, double b2, double z, SeriesControl ctl = {});

}  // namespace csusy::specfun
