#include "chordfn/special_functions.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "chordfn/phase_space.hpp"

namespace chordfn {

namespace {

constexpr double PI = std::numbers::pi;

// Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3).
constexpr double AI0 = 0.3550280538878172392600632;
constexpr double AIP0 = -0.2588194037928067984051836;

// Hankel/Airy asymptotic coefficients u_k = Gamma(3k+1/2)/(54^k k! Gamma(k+1/2)).
constexpr int AIRY_UK_COUNT = 16;

void airy_uk_table(double* u, double* v) {
    // u_k = (2k+1)(2k+3)...(6k-1)/(216^k k!), v_k = u_k (6k+1)/(1-6k)
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < AIRY_UK_COUNT; ++k) {
        u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 1.0) / (72.0 * k);
        v[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    }
}

}  // namespace

namespace detail {

// One Taylor step for y'' = x y: local expansion about `a` with
// c_{k+2} = (a c_k + c_{k-1}) / ((k+1)(k+2)).
static void airy_taylor_step(double a, double h, double& y, double& yp) {
    constexpr int K = 30;
    double c[K + 1];
    c[0] = y;
    c[1] = yp;
    c[2] = 0.5 * a * c[0];
    for (int k = 1; k + 2 <= K; ++k)
        c[k + 2] = (a * c[k] + c[k - 1]) / ((k + 1.0) * (k + 2.0));
    double s = 0.0, sp = 0.0;
    for (int k = K; k >= 1; --k) {
        s = s * h + c[k];
        sp = sp * h + k * c[k];
    }
    y = s * h + c[0];
    yp = sp;
}

void airy_taylor_march(double x, double& ai, double& aip) {
    // March from the anchor at 0. For x much beyond ~6 the caller is expected
    // to use the asymptotic branch instead; marching upward further would let
    // rounding seed the exponentially growing companion solution.
    ai = AI0;
    aip = AIP0;
    if (x == 0.0) return;
    const int nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(x) / 0.25)));
    const double h = x / nsteps;
    double a = 0.0;
    for (int i = 0; i < nsteps; ++i) {
        airy_taylor_step(a, h, ai, aip);
        a += h;
    }
}

// Seed at the positive asymptotic anchor and march down to x; downward steps
// damp any admixture of the growing solution.
static void airy_march_down(double x, double& ai, double& aip) {
    const double a0 = airy_switch_positive;
    airy_asymptotic_positive_branch(a0, ai, aip);
    const int nsteps = std::max(1, static_cast<int>(std::ceil((a0 - x) / 0.25)));
    const double h = (x - a0) / nsteps;
    double a = a0;
    for (int i = 0; i < nsteps; ++i) {
        airy_taylor_step(a, h, ai, aip);
        a += h;
    }
}

void airy_asymptotic_positive_branch(double x, double& ai, double& aip) {
    double u[AIRY_UK_COUNT], v[AIRY_UK_COUNT];
    airy_uk_table(u, v);
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    double su = 0.0, sv = 0.0, pw = 1.0;
    for (int k = 0; k < AIRY_UK_COUNT; ++k) {
        const double tu = u[k] * pw, tv = v[k] * pw;
        su += (k % 2 == 0) ? tu : -tu;
        sv += (k % 2 == 0) ? tv : -tv;
        pw /= zeta;
        if (u[k] * std::abs(pw) * zeta < 1e-18) break;
    }
    const double x14 = std::pow(x, 0.25);
    const double pref = std::exp(-zeta) / (2.0 * std::sqrt(PI));
    ai = pref * su / x14;
    aip = -pref * x14 * sv;
}

void airy_asymptotic_negative_branch(double x, double& ai, double& aip) {
    // x is the (negative) argument itself; evaluate at t = -x > 0.
    const double t = -x;
    double u[AIRY_UK_COUNT], v[AIRY_UK_COUNT];
    airy_uk_table(u, v);
    const double zeta = 2.0 / 3.0 * t * std::sqrt(t);
    // Even/odd splits: Ai(-t) = pi^{-1/2} t^{-1/4} [cos(zeta-pi/4) * Sc + sin(zeta-pi/4) * Ss]
    double sc = 0.0, ss = 0.0, dc = 0.0, ds = 0.0;
    double pw = 1.0;
    for (int k = 0; k < AIRY_UK_COUNT; ++k) {
        const double tu = u[k] * pw, tv = v[k] * pw;
        const int m = k / 2;
        const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            sc += sgn * tu;
            ds += sgn * tv;
        } else {
            ss += sgn * tu;
            dc += sgn * tv;
        }
        pw /= zeta;
    }
    const double t14 = std::pow(t, 0.25);
    const double cz = std::cos(zeta - PI / 4.0), sz = std::sin(zeta - PI / 4.0);
    ai = (cz * sc + sz * ss) / (std::sqrt(PI) * t14);
    aip = t14 / std::sqrt(PI) * (sz * ds - cz * dc);
}

double bessel_j0_series(double x) {
    const double z = -0.25 * x * x;
    double term = 1.0, sum = 1.0, comp = 0.0;
    for (int k = 1; k <= 80; ++k) {
        term *= z / (static_cast<double>(k) * k);
        // compensated accumulation: the terms reach ~1e5 near |x| = 16
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-20 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

double bessel_j0_hankel(double x) {
    const double ax = std::abs(x);
    // A_m = prod_{j=1..m} (-(2j-1)^2) / (m! 8^m); P = sum (-1)^k A_{2k}/x^{2k},
    // Q = sum (-1)^k A_{2k+1}/x^{2k+1}.
    double A = 1.0, P = 0.0, Q = 0.0;
    double prev = 1e308;
    for (int m = 0; m <= 24; ++m) {
        const double pw = std::pow(ax, -m);
        const double term = A * pw;
        if (std::abs(term) > prev) break;  // asymptotic series turned
        prev = std::abs(term);
        const int k = m / 2;
        const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        if (m % 2 == 0)
            P += sgn * term;
        else
            Q += sgn * term;
        A *= -(2.0 * m + 1.0) * (2.0 * m + 1.0) / (8.0 * (m + 1.0));
    }
    const double th = ax - PI / 4.0;
    return std::sqrt(2.0 / (PI * ax)) * (P * std::cos(th) - Q * std::sin(th));
}

}  // namespace detail

double airy_ai(double x) {
    if (std::abs(x) > 100.0)
        throw Error(Errc::domain_overflow, "airy_ai: |x| > 100");
    double ai, aip;
    if (x > detail::airy_switch_positive)
        detail::airy_asymptotic_positive_branch(x, ai, aip);
    else if (x > 5.0)
        detail::airy_march_down(x, ai, aip);
    else if (x >= detail::airy_switch_negative)
        detail::airy_taylor_march(x, ai, aip);
    else
        detail::airy_asymptotic_negative_branch(x, ai, aip);
    return ai;
}

double airy_ai_prime(double x) {
    if (std::abs(x) > 100.0)
        throw Error(Errc::domain_overflow, "airy_ai_prime: |x| > 100");
    double ai, aip;
    if (x > detail::airy_switch_positive)
        detail::airy_asymptotic_positive_branch(x, ai, aip);
    else if (x > 5.0)
        detail::airy_march_down(x, ai, aip);
    else if (x >= detail::airy_switch_negative)
        detail::airy_taylor_march(x, ai, aip);
    else
        detail::airy_asymptotic_negative_branch(x, ai, aip);
    return aip;
}

std::pair<double, double> airy_asymptotic_negative(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double x14 = std::pow(x, 0.25);
    const double ph = zeta - PI / 4.0;
    return {std::cos(ph) / (std::sqrt(PI) * x14), x14 * std::sin(ph) / std::sqrt(PI)};
}

double bessel_j0(double x) {
    const double ax = std::abs(x);
    if (ax > 1e6)
        throw Error(Errc::domain_overflow, "bessel_j0: |x| > 1e6");
    if (ax < detail::bessel_j0_switch) return detail::bessel_j0_series(ax);
    return detail::bessel_j0_hankel(ax);
}

double laguerre(int n, double x) {
    if (n < 0 || n > 500)
        throw Error(Errc::domain_overflow, "laguerre: n out of [0, 500]");
    if (n == 0) return 1.0;
    double lm1 = 1.0, l = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double lp1 = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double laguerre_weighted(int n, double z) {
    if (n < 0 || n > 500)
        throw Error(Errc::domain_overflow, "laguerre_weighted: n out of [0, 500]");
    // Recurrence on L_k with a tracked power-of-two scale, folded into the
    // Gaussian weight at the end: exp(-z/2) L_n(z) = m * 2^e * exp(-z/2).
    double lm1 = 0.0, l = 1.0;
    long e2 = 0;
    for (int k = 0; k < n; ++k) {
        const double lp1 = ((2.0 * k + 1.0 - z) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
        if (std::abs(l) > 1e280) {
            int ex;
            std::frexp(l, &ex);
            l = std::ldexp(l, -ex);
            lm1 = std::ldexp(lm1, -ex);
            e2 += ex;
        }
    }
    const double t = -0.5 * z + static_cast<double>(e2) * std::numbers::ln2;
    if (t < -745.0) return 0.0;
    return l * std::exp(t);
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::no_convex_level: return "NoConvexLevel";
        case Errc::quantization_root_not_bracketed: return "QuantizationRootNotBracketed";
        case Errc::root_not_bracketed: return "RootNotBracketed";
        case Errc::gradient_vanishes: return "GradientVanishes";
        case Errc::near_caustic_degenerate: return "NearCausticDegenerate";
        case Errc::on_symmetry_centre: return "OnSymmetryCentre";
        case Errc::on_curve: return "OnCurve";
        case Errc::not_a_centred_chord: return "NotACentredChord";
        case Errc::beyond_diameter: return "BeyondDiameter";
        case Errc::at_origin: return "AtOrigin";
        case Errc::too_close_to_caustic: return "TooCloseToCaustic";
        case Errc::too_far_from_caustic: return "TooFarFromCaustic";
        case Errc::at_cusp: return "AtCusp";
        case Errc::on_short_chord_caustic: return "OnShortChordCaustic";
        case Errc::symmetric_degenerate: return "SymmetricDegenerate";
        case Errc::chord_near_coalescence: return "ChordNearCoalescence";
        case Errc::quadrature_not_converged: return "QuadratureNotConverged";
        case Errc::grid_too_coarse: return "GridTooCoarse";
        case Errc::domain_overflow: return "DomainOverflow";
        case Errc::turning_point_region: return "TurningPointRegion";
        case Errc::branch_resolution_failure: return "BranchResolutionFailure";
        case Errc::no_crossed_frame: return "NoCrossedFrame";
        case Errc::invalid_config: return "InvalidConfig";
    }
    return "UnknownError";
}

}  // namespace chordfn
