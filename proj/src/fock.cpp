#include "chordfn/fock.hpp"

#include <cmath>

#include "chordfn/special_functions.hpp"

namespace chordfn {

namespace {

constexpr double PI = std::numbers::pi;

/// Recursive adaptive Simpson with absolute tolerance.
template <class F>
double simpson_rec(F&& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 48) throw Error(Errc::quadrature_not_converged, "adaptive Simpson stalled");
    if (std::abs(left + right - whole) < 15.0 * tol || (b - a) < 1e-14 * std::abs(b))
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 0);
}

/// Area of the lens between the circle of action `act` and its translation by
/// a chord of length L; series form near the diameter where the closed form
/// cancels catastrophically.
double lens_area(double act, double L) {
    const double two_i = 2.0 * act;
    const double s2 = two_i - 0.25 * L * L;
    const double s = std::sqrt(std::max(0.0, s2));
    if (s < 0.02 * std::sqrt(two_i)) {
        const double u = s2 / two_i;
        return 4.0 / 3.0 * s * s2 / std::sqrt(two_i) * (1.0 + 0.3 * u);
    }
    return 2.0 * PI * act - L * s - 4.0 * act * std::asin(0.5 * L / std::sqrt(two_i));
}

}  // namespace

double fock_chord_exact(const FockState& s, ChordVector xi) {
    const double z = (xi.p * xi.p + xi.q * xi.q) / (2.0 * s.hbar);
    return laguerre_weighted(s.n, z) / (2.0 * PI * s.hbar);
}

double fock_chord_small(const FockState& s, ChordVector xi) {
    const double arg = s.radius() * norm(xi) / s.hbar;
    return bessel_j0(arg) / (2.0 * PI * s.hbar);
}

double fock_chord_small_asymptotic(const FockState& s, ChordVector xi) {
    const double y = s.radius() * norm(xi) / s.hbar;
    return std::sqrt(2.0 / (PI * y)) * std::cos(y - 0.25 * PI) / (2.0 * PI * s.hbar);
}

double fock_area(const FockState& s, ChordVector xi) {
    const double L = norm(xi);
    if (L > s.diameter() * (1.0 + 1e-12))
        throw Error(Errc::beyond_diameter, "chord longer than the diameter");
    return lens_area(s.action(), std::min(L, s.diameter()));
}

double fock_bracket(const FockState& s, ChordVector xi) {
    const double L = norm(xi);
    if (L > s.diameter() * (1.0 + 1e-12))
        throw Error(Errc::beyond_diameter, "chord longer than the diameter");
    return L * std::sqrt(std::max(0.0, 2.0 * s.action() - 0.25 * L * L));
}

double fock_chord_uniform(const FockState& s, ChordVector xi, double n_squared) {
    const double L = norm(xi);
    const double hbar = s.hbar;
    const double two_i = 2.0 * s.action();
    const double area = fock_area(s, xi);
    const double sgn = (s.n % 2 == 0) ? 1.0 : -1.0;
    const double ai = airy_ai(-std::pow(0.75 * area / hbar, 2.0 / 3.0));
    const double s2 = two_i - 0.25 * L * L;
    // (3A/4)^{1/6} (2I - L^2/4)^{-1/4}: both factors degenerate at the
    // diameter but their ratio is finite; take it through A/s^3.
    double combo;
    if (std::sqrt(std::max(0.0, s2)) < 0.02 * std::sqrt(two_i)) {
        // A = (4/3) s^3/sqrt(2I) (1 + 0.3 u): the s powers cancel exactly
        const double u = std::max(0.0, s2) / two_i;
        combo = std::pow((1.0 + 0.3 * u) / std::sqrt(two_i), 1.0 / 6.0);
    } else {
        combo = std::pow(0.75 * area, 1.0 / 6.0) * std::pow(s2, -0.25);
    }
    return sgn * std::sqrt(2.0) * n_squared * std::pow(hbar, -2.0 / 3.0) / std::sqrt(L) * combo * ai;
}

double fock_chord_uniform_asymptotic(const FockState& s, ChordVector xi, double n_squared) {
    const double L = norm(xi);
    const double area = fock_area(s, xi);
    const double sgn = (s.n % 2 == 0) ? 1.0 : -1.0;
    const double amp = std::sqrt(2.0 / PI) * n_squared / std::sqrt(s.hbar) / std::sqrt(L) *
                       std::pow(2.0 * s.action() - 0.25 * L * L, -0.25);
    return sgn * amp * std::cos(0.5 * area / s.hbar - 0.25 * PI);
}

double fock_correlation(const FockState& s, ChordVector xi) {
    const double chi = fock_chord_exact(s, xi);
    const double f = 2.0 * PI * s.hbar;
    return f * f * chi * chi;
}

double purity_check(const FockState& s) {
    // support ends where the Gaussian weight kills the polynomial
    const double rmax = std::sqrt(2.0 * s.hbar) * (std::sqrt(2.0 * s.n + 1.0) + 8.0);
    auto f = [&](double r) {
        const double chi = fock_chord_exact(s, ChordVector{r, 0.0});
        return chi * chi * r;
    };
    const double integral = adaptive_simpson(f, 0.0, rmax, 1e-10 / (2.0 * PI * PI * s.hbar));
    return 2.0 * PI * s.hbar * 2.0 * PI * integral;
}

}  // namespace chordfn
