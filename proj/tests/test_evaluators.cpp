#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "chordfn/evaluators.hpp"
#include "chordfn/fock.hpp"
#include "series_oracles.hpp"

using namespace chordfn;
constexpr double PI = std::numbers::pi;

namespace {
const ConvexCurve& circle10() {
    static const ConvexCurve c = build_curve(CurveFamily::circle, {}, 10, 1.0);
    return c;
}
const ConvexCurve& circle20() {
    static const ConvexCurve c = build_curve(CurveFamily::circle, {}, 20, 1.0);
    return c;
}
const ConvexCurve& cubic10() {
    static const ConvexCurve c = build_curve(CurveFamily::cubic_perturbed, {0.05}, 10, 0.1);
    return c;
}
const ConvexCurve& quartic10() {
    static const ConvexCurve c = build_curve(CurveFamily::quartic_perturbed, {0.1}, 10, 1.0);
    return c;
}

// |xi| whose lens area-difference ratio to hbar is the requested one.
double chord_length_for_area12(const ConvexCurve& c, ChordVector dir, double target_area12) {
    double lo = 0.05, hi = 0.999;
    const auto d = diameter_in_direction(c, dir);
    const double ld = norm(d.xi_d);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto g = std::get<ChordGeometry>(
            find_chord_realizations(c, (mid * ld / norm(dir)) * dir));
        if (g.area_diff > target_area12)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi) * ld;
}
}  // namespace

TEST_CASE("constant fixing: the Airy-substituted uniform form reproduces the asymptotic one") {
    EvaluatorOptions sub;
    sub.use_airy_asymptotic_forms = true;
    for (const ConvexCurve* c : {&circle20(), &cubic10()}) {
        for (double frac : {0.0, 0.3, 0.6}) {
            const ChordVector dir{0.3, 1.0};
            // zeta >= 4.5 means area_diff >= (4/3) hbar zeta^{3/2}
            const double a12 = (4.0 / 3.0) * c->hbar() * std::pow(4.5 + 3.0 * frac, 1.5);
            const double L = chord_length_for_area12(*c, dir, a12);
            const ChordVector xi = (L / norm(dir)) * dir;
            const auto u = chord_uniform(*c, xi, sub);
            const auto a = chord_asymptotic(*c, xi);
            CHECK(std::abs(u.value - a.value) <= 0.02 * std::abs(a.value));
            // with the true Airy pair the agreement stays within the
            // asymptotic error budget of the amplitude envelope
            const auto g = std::get<ChordGeometry>(find_chord_realizations(*c, xi));
            const double envelope = g.sigma_i / (2.0 * PI * std::sqrt(2.0 * PI * c->hbar()));
            const auto ut = chord_uniform(*c, xi);
            CHECK(std::abs(ut.value - a.value) <= 0.02 * envelope);
        }
    }
}

TEST_CASE("a broken constant trips the matching check") {
    EvaluatorOptions bad;
    bad.use_airy_asymptotic_forms = true;
    bad.broken_constant = 1.1;
    const ChordVector xi{0.0, chord_length_for_area12(circle20(), ChordVector{0, 1},
                                                      (4.0 / 3.0) * std::pow(5.0, 1.5))};
    const auto u = chord_uniform(circle20(), xi, bad);
    const auto a = chord_asymptotic(circle20(), xi);
    CHECK(std::abs(u.value - a.value) > 0.02 * std::abs(a.value));
}

TEST_CASE("uniform evaluator matches the exact Fock chord function through the caustic window") {
    const auto& c = circle10();
    const FockState s{10, 1.0};
    double maxdiff = 0.0, maxexact = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double L = s.diameter() * (0.80 + 0.15 * i / 100.0);
        const auto u = chord_uniform(c, ChordVector{0, L});
        const double e = fock_chord_exact(s, ChordVector{0, L});
        CHECK(std::abs(u.value.imag()) < 1e-9 * (std::abs(u.value.real()) + 1e-12));
        maxdiff = std::max(maxdiff, std::abs(u.value.real() - e));
        maxexact = std::max(maxexact, std::abs(e));
    }
    CHECK(maxdiff < 0.10 * maxexact);
    // the spec's pointwise anchor at 0.9 d
    const double L9 = 0.9 * s.diameter();
    const auto u9 = chord_uniform(c, ChordVector{0, L9});
    const double e9 = fock_chord_exact(s, ChordVector{0, L9});
    CHECK(std::abs(u9.value.real() - e9) < 0.10 * std::abs(e9));
}

TEST_CASE("symmetric curves kill the derivative-of-Airy term") {
    for (const ConvexCurve* c : {&circle10(), &quartic10()}) {
        const ChordVector xi{0.8, 0.6};
        const auto g = std::get<ChordGeometry>(find_chord_realizations(*c, xi));
        CHECK(std::abs(g.delta_i) < 1e-8 * g.sigma_i);
    }
}

TEST_CASE("hermiticity: chi(-xi) is the conjugate of chi(xi)") {
    for (const ConvexCurve* c : {&circle10(), &cubic10()}) {
        for (const ChordVector xi : {ChordVector{0.5 * c->scale(), 0.2 * c->scale()},
                                     ChordVector{-0.3 * c->scale(), 0.9 * c->scale()}}) {
            const auto plus = chord_uniform(*c, xi);
            const auto minus = chord_uniform(*c, -xi);
            CHECK(std::abs(minus.value - std::conj(plus.value)) < 1e-10);
        }
    }
}

TEST_CASE("transitional value at the diameter matches the symmetric closed form") {
    // chi(xi_D) = (-1)^n (2I)^{-1/3} Ai(0) / (2 pi hbar^{2/3}) on the circle
    const auto& c = circle10();
    const double two_i = 2.0 * c.action();
    const double d = 2.0 * std::sqrt(two_i);
    const auto v = chord_transitional(c, ChordVector{0, d});
    const double expected = std::pow(two_i, -1.0 / 3.0) * 0.3550280538878172 / (2.0 * PI);
    CHECK(v.value.real() == doctest::Approx(expected).epsilon(2e-2));
    CHECK(std::abs(v.value.imag()) < 1e-10);
    // uniform evaluator stays finite there by falling back
    const auto u = chord_uniform(c, ChordVector{0, d});
    CHECK(std::isfinite(std::abs(u.value)));
    CHECK(std::abs(u.value - v.value) < 2e-2 * std::abs(v.value));
}

TEST_CASE("transitional agrees with uniform across their overlap window (circle n=20)") {
    const auto& c = circle20();

    for (int i = 0; i <= 30; ++i) {
        const double zeta = 0.5 + (1.5 - 0.5) * i / 30.0;
        const double a12 = (4.0 / 3.0) * c.hbar() * std::pow(zeta, 1.5);
        const double L = chord_length_for_area12(c, ChordVector{0, 1}, a12);
        const auto t = chord_transitional(c, ChordVector{0, L});
        const auto u = chord_uniform(c, ChordVector{0, L});
        CHECK(std::abs(t.value - u.value) <= 0.05 * std::abs(u.value));
    }
}

TEST_CASE("a 200-point ray through the caustic: finite, continuous, correct peak, decaying tail") {
    const auto& c = circle10();
    const FockState s{10, 1.0};
    const double d = s.diameter();
    const int npts = 200;
    std::vector<double> absval(npts);
    for (int i = 0; i < npts; ++i) {
        const double L = d * (0.85 + 0.30 * i / (npts - 1.0));
        const auto v = chord_transitional(c, ChordVector{0, L});
        absval[i] = std::abs(v.value);
        CHECK(std::isfinite(absval[i]));
    }
    // continuity: neighbour jumps bounded by a fraction of the peak
    const double peak = *std::max_element(absval.begin(), absval.end());
    for (int i = 1; i < npts; ++i) CHECK(std::abs(absval[i] - absval[i - 1]) < 0.08 * peak);

    // the |chi| maximum sits where the Airy argument passes the first
    // maximum of Ai(-z), at the root of Ai'(-z) (from the series oracle)
    const double zstar = -oracles::bisect_root(
        [](double z) {
            double ai, aip;
            oracles::airy_series(z, ai, aip);
            return aip;
        },
        -1.2, -0.8);
    CHECK(zstar == doctest::Approx(1.018793).epsilon(1e-5));
    const double a12_star = (4.0 / 3.0) * c.hbar() * std::pow(zstar, 1.5);
    // invert the lens area for the expected chord length
    double lo = 0.85 * d, hi = d;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fock_area(s, ChordVector{0, mid}) > a12_star)
            lo = mid;
        else
            hi = mid;
    }
    const double l_star = 0.5 * (lo + hi);
    const int expect_idx = static_cast<int>(std::round((l_star / d - 0.85) / 0.30 * (npts - 1)));
    const int peak_idx = static_cast<int>(std::max_element(absval.begin(), absval.end()) -
                                          absval.begin());
    CHECK(std::abs(peak_idx - expect_idx) <= 1);

    // beyond the caustic the modulus decays monotonically
    const int caustic_idx = static_cast<int>(std::ceil((1.0 - 0.85) / 0.30 * (npts - 1)));
    for (int i = caustic_idx + 1; i < npts; ++i) CHECK(absval[i] <= absval[i - 1] + 1e-15);
}

TEST_CASE("origin shift: identity, pi flip, additive composition, modulus preserved") {
    ChordValue chi;
    chi.value = std::complex<double>(0.3, -0.4);
    const ChordVector xi{1.0, 2.0};
    const double hbar = 0.7;
    const auto same = origin_shift(chi, ChordVector{0, 0}, xi, hbar);
    CHECK(std::abs(same.value - chi.value) == 0.0);

    // wedge(xi', xi)/hbar = pi flips the sign
    const ChordVector xip{PI * hbar / 2.0, 0.0};
    const auto flip = origin_shift(chi, xip, xi, hbar);
    CHECK(std::abs(flip.value + chi.value) < 1e-14);

    const ChordVector a{0.21, -0.73}, b{1.1, 0.33};
    const auto two_step = origin_shift(origin_shift(chi, a, xi, hbar), b, xi, hbar);
    const auto one_step = origin_shift(chi, a + b, xi, hbar);
    CHECK(std::abs(two_step.value - one_step.value) < 1e-14);
    CHECK(std::abs(std::abs(two_step.value) - std::abs(chi.value)) < 1e-15);
}

TEST_CASE("regime selection along a radial ray") {
    const auto& c = circle20();
    const double d = 2.0 * std::sqrt(2.0 * c.action());
    CHECK(select_regime(c, ChordVector{0, 0.5 * d}) == Regime::oscillatory);
    CHECK(select_regime(c, ChordVector{0, d}) == Regime::transitional_window);
    CHECK(select_regime(c, ChordVector{0, 1.5 * d}) == Regime::evanescent);
    CHECK_THROWS_AS(select_regime(c, ChordVector{0, 0}), Error);
    // monotone non-decreasing regime order along the ray
    int prev = -1;
    for (int i = 1; i <= 128; ++i) {
        const double L = 1.6 * d * i / 128.0;
        const int r = static_cast<int>(select_regime(c, ChordVector{0, L}));
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("correlation identity against the asymptotic chord value") {
    for (const ConvexCurve* c : {&circle10(), &cubic10()}) {
        for (double f : {0.35, 0.55, 0.75}) {
            const ChordVector dir{0.2, 1.0};
            const auto dd = diameter_in_direction(*c, dir);
            const ChordVector xi = f * dd.xi_d;
            const double corr = correlation_semiclassical(*c, xi);
            const auto chi = chord_asymptotic(*c, xi);
            const double f2 = 2.0 * PI * c->hbar();
            CHECK(std::abs(corr - f2 * f2 * std::norm(chi.value)) < 1e-12 * std::abs(corr));
        }
    }
}

TEST_CASE("correlation oscillates inside the classical envelope") {
    const auto& c = circle10();
    const FockState s{10, 1.0};
    double cmin = 1e300, cmax = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double L = s.diameter() * (0.35 + 0.3 * i / 400.0);
        const double corr = correlation_semiclassical(c, ChordVector{0, L});
        CHECK(corr >= 0.0);
        cmin = std::min(cmin, corr);
        cmax = std::max(cmax, corr);
    }
    // the interference term really swings the correlation
    CHECK(cmax > 3.0 * cmin);
    // and the caustic-neighbourhood variant is exposed and finite
    const double cc = correlation_caustic(c, ChordVector{0, s.diameter()});
    CHECK(std::isfinite(cc));
    CHECK(cc > 0.0);
}

TEST_CASE("auto dispatch tags follow the selected regime") {
    const auto& c = circle20();
    const double d = 2.0 * std::sqrt(2.0 * c.action());
    CHECK(chord_auto(c, ChordVector{0, 0.5 * d}).regime == Regime::oscillatory);
    CHECK(chord_auto(c, ChordVector{0, 1.02 * d}).regime == Regime::transitional_window);
    CHECK(chord_auto(c, ChordVector{0, 1.5 * d}).regime == Regime::evanescent);
}
