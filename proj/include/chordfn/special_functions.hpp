#pragma once

#include <utility>

namespace chordfn {

/// Scalar kernels used by the semiclassical formulas. All of them are
/// self-contained (elementary arithmetic plus exp/log/sqrt/trig only) so the
/// library carries its own ground truth and stays portable.
///
/// Accuracy contract: airy_ai / airy_ai_prime absolute error <= 1e-12 for
/// |x| <= 10 and <= 1e-10 up to |x| = 100; bessel_j0 absolute error <= 1e-10
/// for |x| <= 1e6.

/// Airy function Ai(x). Throws Error(domain_overflow) for |x| > 100.
double airy_ai(double x);

/// Derivative Ai'(x). Same domain contract as airy_ai.
double airy_ai_prime(double x);

/// The large-argument oscillatory forms of Ai(-x) and Ai'(-x) for x > 0:
///   Ai(-x)  ~ cos(2/3 x^{3/2} - pi/4) / (sqrt(pi) x^{1/4})
///   Ai'(-x) ~ x^{1/4} sin(2/3 x^{3/2} - pi/4) / sqrt(pi)
/// Returned verbatim (no further correction terms); diverges like x^{-1/4}
/// as x -> 0+, so callers must stay away from the origin.
std::pair<double, double> airy_asymptotic_negative(double x);

/// Bessel function J0(x) for |x| <= 1e6.
double bessel_j0(double x);

/// Laguerre polynomial L_n(x), 0 <= n <= 500, by the three-term recurrence.
double laguerre(int n, double x);

/// exp(-z/2) * L_n(z) evaluated with exponent tracking so that it neither
/// overflows nor underflows to garbage for large n*z. The product is bounded
/// by 1 in magnitude on z >= 0 for all n.
double laguerre_weighted(int n, double z);

namespace detail {

/// Regime boundaries, exposed so the seam between branches can be tested.
/// The Taylor-marched core covers [airy_switch_negative, airy_switch_positive];
/// asymptotic expansions take over outside.
constexpr double airy_switch_negative = -12.0;
constexpr double airy_switch_positive = 8.0;
constexpr double bessel_j0_switch = 16.0;

/// Individual branch evaluations (valid in a window around the switch points,
/// used by the seam tests).
void airy_taylor_march(double x, double& ai, double& aip);
void airy_asymptotic_positive_branch(double x, double& ai, double& aip);
void airy_asymptotic_negative_branch(double x, double& ai, double& aip);
double bessel_j0_series(double x);
double bessel_j0_hankel(double x);

}  // namespace detail

}  // namespace chordfn
