#include "chordfn/wkb_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "chordfn/chord_geometry.hpp"

namespace chordfn {

namespace {

constexpr double PI = std::numbers::pi;
const std::complex<double> I_UNIT{0.0, 1.0};

// 8-point Gauss-Legendre on [-1, 1]
const double GX8[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                       -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                       0.7966664774136267,  0.9602898564975363};
const double GW8[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                       0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                       0.2223810344533745, 0.1012285362903763};
// 16-point Gauss-Legendre on [-1, 1]
const double GX16[16] = {-0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
                         -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
                         -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
                         0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
                         0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
                         0.9894009349916499};
const double GW16[16] = {0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
                         0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
                         0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
                         0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                         0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
                         0.0271524594117541};

double wrap_2pi(double t) {
    double r = std::fmod(t, 2.0 * PI);
    if (r < 0) r += 2.0 * PI;
    return r;
}

double theta_dist(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * PI)); }

}  // namespace

WkbBranches::WkbBranches(const ConvexCurve& curve, double alpha)
    : curve_(&curve), alpha_(alpha), ca_(std::cos(alpha)), sa_(std::sin(alpha)) {
    const int m = curve.cache_size();
    auto qrot_of = [&](double th) {
        const PhasePoint x = curve.point_at(th);
        return sa_ * x.p + ca_ * x.q;
    };
    auto vq_of = [&](double th) {
        const Vec2 v = curve.velocity_at(curve.point_at(th));
        return sa_ * v.p + ca_ * v.q;
    };
    qrot_.resize(m);
    int imin = 0, imax = 0;
    for (int i = 0; i < m; ++i) {
        const PhasePoint& x = curve.cached_point(i);
        qrot_[i] = sa_ * x.p + ca_ * x.q;
        if (qrot_[i] < qrot_[imin]) imin = i;
        if (qrot_[i] > qrot_[imax]) imax = i;
    }
    const double cell = 2.0 * PI / m;
    auto refine_extremum = [&](int i0) {
        double lo = curve.cached_theta(i0) - cell, hi = curve.cached_theta(i0) + cell;
        double flo = vq_of(lo);
        for (int it = 0; it < 54; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = vq_of(mid);
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return wrap_2pi(0.5 * (lo + hi));
    };
    theta_qlo_ = refine_extremum(imin);
    theta_qhi_ = refine_extremum(imax);
    q_lo_ = qrot_of(theta_qlo_);
    q_hi_ = qrot_of(theta_qhi_);

    // cumulative int p dq along the flow, anchored at the left turning point
    s_.assign(m + 1, 0.0);
    auto integrand = [&](double th) {
        const PhasePoint x = curve.point_at(th);
        const Vec2 v = curve.velocity_at(x);
        const double pr = ca_ * x.p - sa_ * x.q;
        const double vq = sa_ * v.p + ca_ * v.q;
        return pr * vq;
    };
    // s_[k] = integral from theta_qlo over k whole cells (wrapping grid of
    // the same cell size, anchored at theta_qlo)
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
        const double a = theta_qlo_ + k * cell, b = a + cell;
        double pacc = 0.0;
        for (int j = 0; j < 8; ++j)
            pacc += GW8[j] * integrand(0.5 * (a + b) + 0.5 * cell * GX8[j]);
        s_[k] = acc;
        acc += 0.5 * cell * pacc;
    }
    s_[m] = acc;

    // Airy widths at the turning points set the natural exclusion scale
    auto airy_width = [&](double th) {
        const PhasePoint x = curve.point_at(th);
        const Mat2 h = curve.action_hessian(x);
        const Vec2 g = curve.action_gradient(x);
        const double hpp = ca_ * ca_ * h.pp - 2.0 * ca_ * sa_ * h.pq + sa_ * sa_ * h.qq;
        const double gq = sa_ * g.p + ca_ * g.q;
        const double hbar = curve.hbar();
        return std::cbrt(hbar * hbar / std::max(1e-300, std::abs(hpp * gq)));
    };
    eps_lo_ = airy_width(theta_qlo_);
    eps_hi_ = airy_width(theta_qhi_);
}

double WkbBranches::arc_s(double theta) const {
    const int m = static_cast<int>(qrot_.size());
    const double cell = 2.0 * PI / m;
    const double d = wrap_2pi(theta - theta_qlo_);
    int k = static_cast<int>(d / cell);
    if (k >= m) k = m - 1;
    const double a = theta_qlo_ + k * cell;
    auto integrand = [&](double th) {
        const PhasePoint x = curve_->point_at(th);
        const Vec2 v = curve_->velocity_at(x);
        return (ca_ * x.p - sa_ * x.q) * (sa_ * v.p + ca_ * v.q);
    };
    double pacc = 0.0;
    const double b = theta_qlo_ + d;
    for (int j = 0; j < 8; ++j)
        pacc += GW8[j] * integrand(0.5 * (a + b) + 0.5 * (b - a) * GX8[j]);
    return s_[k] + 0.5 * (b - a) * pacc;
}

double WkbBranches::theta_of(double q, int branch) const {
    // branch 0 runs from theta_qlo to theta_qhi along the flow (dq/dt > 0),
    // branch 1 is the complementary arc
    const double up = wrap_2pi(theta_qhi_ - theta_qlo_);
    double a, span;
    if (branch == 0) {
        a = theta_qlo_;
        span = up;
    } else {
        a = theta_qhi_;
        span = 2.0 * PI - up;
    }
    auto qrot_of = [&](double th) {
        const PhasePoint x = curve_->point_at(th);
        return sa_ * x.p + ca_ * x.q;
    };
    double lo = 1e-9, hi = span - 1e-9;
    const bool increasing = (branch == 0);
    double flo = qrot_of(a + lo) - q;
    for (int it = 0; it < 52; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = qrot_of(a + mid) - q;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (void)increasing;
    return wrap_2pi(a + 0.5 * (lo + hi));
}

double WkbBranches::momentum(double q, int branch) const {
    const PhasePoint x = curve_->point_at(theta_of(q, branch));
    return ca_ * x.p - sa_ * x.q;
}

double WkbBranches::action(double q, int branch) const { return arc_s(theta_of(q, branch)); }

double WkbBranches::amplitude(double q, int branch) const {
    const Vec2 v = curve_->velocity_at(curve_->point_at(theta_of(q, branch)));
    const double vq = sa_ * v.p + ca_ * v.q;
    return 1.0 / std::sqrt(std::abs(vq));
}

WkbBranches::BranchPoint WkbBranches::branch_point(double q, int branch) const {
    const double th = theta_of(q, branch);
    const PhasePoint x = curve_->point_at(th);
    const Vec2 v = curve_->velocity_at(x);
    const Mat2 h = curve_->action_hessian(x);
    // I-flow acceleration J (Hess I) v
    const Vec2 hv{h.pp * v.p + h.pq * v.q, h.pq * v.p + h.qq * v.q};
    const Vec2 acc = symplectic_apply(hv);
    const double vp = ca_ * v.p - sa_ * v.q;
    const double vq = sa_ * v.p + ca_ * v.q;
    const double accq = sa_ * acc.p + ca_ * acc.q;
    BranchPoint b;
    b.p = ca_ * x.p - sa_ * x.q;
    b.s = arc_s(th);
    b.a = 1.0 / std::sqrt(std::abs(vq));
    b.dp_dq = vp / vq;
    b.da_dq = -0.5 * accq / std::pow(std::abs(vq), 2.5);
    return b;
}

std::complex<double> WkbBranches::psi(double q) const {
    if (q < q_lo_ + eps_lo_ || q > q_hi_ - eps_hi_)
        throw Error(Errc::turning_point_region, "wkb_psi inside the Airy exclusion");
    const double hbar = curve_->hbar();
    const double n = std::sqrt(norm_squared());
    // The returning branch lags by the Maslov phase. With S_1 anchored by
    // continuation through the right turning point and the quantization rule
    // in force, e^{-i pi/2} is the factor that reproduces the bound state
    // (n+1 probability humps); the opposite sign shifts every fringe by half
    // a period.
    const std::complex<double> up =
        amplitude(q, 0) * std::exp(I_UNIT * (action(q, 0) / hbar));
    const std::complex<double> dn =
        amplitude(q, 1) * std::exp(I_UNIT * (action(q, 1) / hbar - maslov_phase()));
    return n * (up + dn);
}

WkbBranches branch_actions(const ConvexCurve& curve) { return WkbBranches(curve, 0.0); }

std::complex<double> wkb_psi(const ConvexCurve& curve, double q) {
    static thread_local const ConvexCurve* cached_curve = nullptr;
    static thread_local std::unique_ptr<WkbBranches> cached;
    if (cached_curve != &curve) {
        cached = std::make_unique<WkbBranches>(curve, 0.0);
        cached_curve = &curve;
    }
    return cached->psi(q);
}

namespace {

/// psi(q)/N with branch amplitudes and phases from a frame.
std::complex<double> psi_unnorm(const WkbBranches& f, double q, double hbar) {
    const std::complex<double> up = f.amplitude(q, 0) * std::exp(I_UNIT * (f.action(q, 0) / hbar));
    const std::complex<double> dn =
        f.amplitude(q, 1) * std::exp(I_UNIT * (f.action(q, 1) / hbar - f.maslov_phase()));
    return up + dn;
}

/// Oscillatory quadrature of fn over [a, b] with panels bounded by a fraction
/// of the given wavelength.
template <class F>
std::complex<double> panel_integrate(F&& fn, double a, double b, double wavelength) {
    if (b <= a) return {0.0, 0.0};
    const double h = std::min(wavelength / 5.0, (b - a) / 8.0);
    const int n = std::max(8, static_cast<int>(std::ceil((b - a) / h)));
    std::complex<double> acc{0.0, 0.0};
    const double step = (b - a) / n;
    for (int k = 0; k < n; ++k) {
        const double lo = a + k * step, hi = lo + step;
        std::complex<double> p{0.0, 0.0};
        for (int j = 0; j < 16; ++j)
            p += GW16[j] * fn(0.5 * (lo + hi) + 0.5 * step * GX16[j]);
        acc += 0.5 * step * p;
    }
    return acc;
}

double max_abs_momentum(const ConvexCurve& curve, const WkbBranches& f) {
    double pm = 0.0;
    for (int i = 0; i < curve.cache_size(); i += 16) {
        const PhasePoint& x = curve.cached_point(i);
        pm = std::max(pm, std::abs(std::cos(f.alpha()) * x.p - std::sin(f.alpha()) * x.q));
    }
    return pm;
}

}  // namespace

namespace {

/// Branch-product integrand for the chord overlap at fixed q: the two-branch
/// wave value at q + xiq/2 times the conjugate at q - xiq/2 (one parameter
/// solve per branch and point).
std::complex<double> chord_overlap_terms(const WkbBranches& f, double q, double xip, double xiq,
                                         double hbar) {
    const auto p0 = f.branch_point(q + 0.5 * xiq, 0);
    const auto p1 = f.branch_point(q + 0.5 * xiq, 1);
    const auto m0 = f.branch_point(q - 0.5 * xiq, 0);
    const auto m1 = f.branch_point(q - 0.5 * xiq, 1);
    const std::complex<double> mas = std::exp(-I_UNIT * f.maslov_phase());
    const std::complex<double> u =
        p0.a * std::exp(I_UNIT * (p0.s / hbar)) + mas * p1.a * std::exp(I_UNIT * (p1.s / hbar));
    const std::complex<double> w =
        m0.a * std::exp(I_UNIT * (m0.s / hbar)) + mas * m1.a * std::exp(I_UNIT * (m1.s / hbar));
    return u * std::conj(w) * std::exp(-I_UNIT * (xip * q / hbar));
}

/// Two-order endpoint series of the truncated oscillatory integral: the tail
/// beyond q contributes -(E1 + E2) at the upper end and +(E1 + E2) at the
/// lower one, with E1 = hbar g e^{i Phi/hbar}/(i Phi') and
/// E2 = hbar^2 (g/Phi')' / Phi' e^{i Phi/hbar}.
std::complex<double> chord_overlap_endpoint(const WkbBranches& f, double q, double xip,
                                            double xiq, double hbar) {
    const WkbBranches::BranchPoint plus[2] = {f.branch_point(q + 0.5 * xiq, 0),
                                              f.branch_point(q + 0.5 * xiq, 1)};
    const WkbBranches::BranchPoint minus[2] = {f.branch_point(q - 0.5 * xiq, 0),
                                               f.branch_point(q - 0.5 * xiq, 1)};
    std::complex<double> acc{0.0, 0.0};
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            const auto& bp = plus[s1];
            const auto& bm = minus[s2];
            const double g = bp.a * bm.a;
            const double gd = bp.da_dq * bm.a + bp.a * bm.da_dq;
            const double ph = bp.s - bm.s - xip * q;
            const double phd = bp.p - bm.p - xip;
            const double phdd = bp.dp_dq - bm.dp_dq;
            std::complex<double> mas{1.0, 0.0};
            if (s1 == 1) mas *= std::exp(-I_UNIT * f.maslov_phase());
            if (s2 == 1) mas *= std::exp(I_UNIT * f.maslov_phase());
            const std::complex<double> e1 = hbar * g / (I_UNIT * phd);
            const std::complex<double> e2 =
                hbar * hbar * (gd * phd - g * phdd) / (phd * phd * phd);
            acc += mas * (e1 + e2) * std::exp(I_UNIT * (ph / hbar));
        }
    return acc;
}

}  // namespace

OracleValue chord_integral_numeric_in_frame(const WkbBranches& f, ChordVector xi) {
    const ConvexCurve& curve = f.curve();
    const double hbar = curve.hbar();
    const double ca = std::cos(f.alpha()), sa = std::sin(f.alpha());
    const double xip = ca * xi.p - sa * xi.q;
    const double xiq = sa * xi.p + ca * xi.q;

    const double pmax = max_abs_momentum(curve, f);
    const double wavelength = 2.0 * PI * hbar / (2.0 * pmax + std::abs(xip) + 1e-12);

    // Truncated oscillatory integral with its first-order endpoint terms
    // subtracted; the residual oscillates with the exclusion width, so
    // several widths are averaged.
    auto integral_for = [&](double eps) {
        const double lo = f.q_lo() + eps + 0.5 * std::abs(xiq);
        const double hi = f.q_hi() - eps - 0.5 * std::abs(xiq);
        if (hi <= lo)
            throw Error(Errc::quadrature_not_converged, "empty integration window");
        auto fn = [&](double q) { return chord_overlap_terms(f, q, xip, xiq, hbar); };
        std::complex<double> v = panel_integrate(fn, lo, hi, wavelength);
        v -= chord_overlap_endpoint(f, hi, xip, xiq, hbar);
        v += chord_overlap_endpoint(f, lo, xip, xiq, hbar);
        return v;
    };

    const double w = std::max(f.turning_width_lo(), f.turning_width_hi());
    constexpr int NEPS = 8;
    std::complex<double> vals[NEPS];
    for (int i = 0; i < NEPS; ++i) vals[i] = integral_for((1.0 - 0.075 * i) * w);
    std::complex<double> avg{0.0, 0.0};
    for (int i = 0; i < NEPS; ++i) avg += vals[i] / static_cast<double>(NEPS);
    double dev = 0.0;
    for (int i = 0; i < NEPS; ++i) dev = std::max(dev, std::abs(vals[i] - avg));

    OracleValue out;
    out.value = f.norm_squared() / (2.0 * PI * hbar) * avg;
    out.error_estimate = f.norm_squared() / (2.0 * PI * hbar) * dev;
    return out;
}

OracleValue chord_integral_numeric(const ConvexCurve& curve, ChordVector xi) {
    const auto res = find_chord_realizations(curve, xi);
    if (!std::holds_alternative<ChordGeometry>(res))
        throw Error(Errc::too_close_to_caustic, "oracle contract is the mid-regime");
    const auto& g = std::get<ChordGeometry>(res);

    // Choose the frame: both realizations crossed (tips on opposite momentum
    // branches), every tip away from the turning points, and both stationary
    // points (the realization centres) away from the exclusion edges.
    double best_alpha = 0.0, best_score = -1.0;
    const int m = curve.cache_size();
    for (int k = 0; k < 64; ++k) {
        const double alpha = PI * k / 64.0;
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        auto qrot = [&](PhasePoint x) { return sa * x.p + ca * x.q; };
        double qmin = 1e300, qmax = -1e300;
        for (int i = 0; i < m; i += 2) {
            const double qr = qrot(curve.cached_point(i));
            qmin = std::min(qmin, qr);
            qmax = std::max(qmax, qr);
        }
        // crossed: the rotated dI/dp changes sign between the tips
        auto upness = [&](PhasePoint x) {
            const Vec2 gr = curve.action_gradient(x);
            return ca * gr.p - sa * gr.q;
        };
        bool crossed = true;
        double tip_margin = 1e300;
        for (const ChordRealization* r : {&g.r1, &g.r2}) {
            if (upness(r->x_minus) * upness(r->x_plus) > 0) crossed = false;
            for (const PhasePoint* t : {&r->x_minus, &r->x_plus})
                tip_margin = std::min(tip_margin,
                                      std::min(qmax - qrot(*t), qrot(*t) - qmin));
        }
        if (!crossed) continue;
        const double xiq = std::abs(sa * xi.p + ca * xi.q);
        double sp_margin = 1e300;
        for (const ChordRealization* r : {&g.r1, &g.r2}) {
            const double qc = qrot(r->centre);
            sp_margin = std::min(sp_margin,
                                 std::min(qmax - 0.5 * xiq - qc, qc - (qmin + 0.5 * xiq)));
        }
        const double score = std::min(tip_margin, sp_margin);
        if (score > best_score) {
            best_score = score;
            best_alpha = alpha;
        }
    }
    if (best_score <= 0.0)
        throw Error(Errc::no_crossed_frame, "no rotation keeps both realizations crossed");
    const WkbBranches frame(curve, best_alpha);
    return chord_integral_numeric_in_frame(frame, xi);
}

namespace {

/// Branch-product terms of the reflection overlap at separation xq.
std::complex<double> wigner_overlap_terms(const WkbBranches& f, PhasePoint x, double xq,
                                          double hbar) {
    const auto p0 = f.branch_point(x.q + 0.5 * xq, 0);
    const auto p1 = f.branch_point(x.q + 0.5 * xq, 1);
    const auto m0 = f.branch_point(x.q - 0.5 * xq, 0);
    const auto m1 = f.branch_point(x.q - 0.5 * xq, 1);
    const std::complex<double> mas = std::exp(-I_UNIT * f.maslov_phase());
    const std::complex<double> u =
        p0.a * std::exp(I_UNIT * (p0.s / hbar)) + mas * p1.a * std::exp(I_UNIT * (p1.s / hbar));
    const std::complex<double> w =
        m0.a * std::exp(I_UNIT * (m0.s / hbar)) + mas * m1.a * std::exp(I_UNIT * (m1.s / hbar));
    return u * std::conj(w) * std::exp(-I_UNIT * (x.p * xq / hbar));
}

std::complex<double> wigner_overlap_endpoint(const WkbBranches& f, PhasePoint x, double xq,
                                             double hbar) {
    const WkbBranches::BranchPoint plus[2] = {f.branch_point(x.q + 0.5 * xq, 0),
                                              f.branch_point(x.q + 0.5 * xq, 1)};
    const WkbBranches::BranchPoint minus[2] = {f.branch_point(x.q - 0.5 * xq, 0),
                                               f.branch_point(x.q - 0.5 * xq, 1)};
    std::complex<double> acc{0.0, 0.0};
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) {
            const auto& bp = plus[s1];
            const auto& bm = minus[s2];
            const double g = bp.a * bm.a;
            const double gd = 0.5 * (bp.da_dq * bm.a - bp.a * bm.da_dq);
            const double ph = bp.s - bm.s - x.p * xq;
            const double phd = 0.5 * (bp.p + bm.p) - x.p;
            const double phdd = 0.25 * (bp.dp_dq - bm.dp_dq);
            std::complex<double> mas{1.0, 0.0};
            if (s1 == 1) mas *= std::exp(-I_UNIT * f.maslov_phase());
            if (s2 == 1) mas *= std::exp(I_UNIT * f.maslov_phase());
            const std::complex<double> e1 = hbar * g / (I_UNIT * phd);
            const std::complex<double> e2 =
                hbar * hbar * (gd * phd - g * phdd) / (phd * phd * phd);
            acc += mas * (e1 + e2) * std::exp(I_UNIT * (ph / hbar));
        }
    return acc;
}

WignerOracleValue wigner_integral_impl(const WkbBranches& f, PhasePoint x_orig, bool windowed,
                                       double centre, double width) {
    const ConvexCurve& curve = f.curve();
    const double hbar = curve.hbar();
    const double ca = std::cos(f.alpha()), sa = std::sin(f.alpha());
    const PhasePoint x{ca * x_orig.p - sa * x_orig.q, sa * x_orig.p + ca * x_orig.q};
    if (x.q < f.q_lo() || x.q > f.q_hi())
        throw Error(Errc::quadrature_not_converged, "centre outside the branch support");

    const double pmax = max_abs_momentum(curve, f);
    const double wavelength = 2.0 * PI * hbar / (pmax + std::abs(x.p) + 1e-12);

    auto integral_for = [&](double eps) {
        // both q +- xq/2 must stay between the excluded turning regions
        double lo = std::max(2.0 * (f.q_lo() + eps - x.q), 2.0 * (x.q - f.q_hi() + eps));
        double hi = std::min(2.0 * (f.q_hi() - eps - x.q), 2.0 * (x.q - f.q_lo() - eps));
        if (windowed) {
            // smooth taper: no endpoint terms survive the cosine-squared window
            lo = std::max(lo, centre - width);
            hi = std::min(hi, centre + width);
            if (hi <= lo)
                throw Error(Errc::quadrature_not_converged, "empty integration window");
            auto fn = [&](double xq) {
                const double t = 0.5 * PI * (xq - centre) / width;
                const double taper = std::cos(t) * std::cos(t);
                return taper * wigner_overlap_terms(f, x, xq, hbar);
            };
            return panel_integrate(fn, lo, hi, wavelength);
        }
        if (hi <= lo)
            throw Error(Errc::quadrature_not_converged, "empty integration window");
        auto fn = [&](double xq) { return wigner_overlap_terms(f, x, xq, hbar); };
        std::complex<double> v = panel_integrate(fn, lo, hi, wavelength);
        v -= wigner_overlap_endpoint(f, x, hi, hbar);
        v += wigner_overlap_endpoint(f, x, lo, hbar);
        return v;
    };

    const double w0 = std::max(f.turning_width_lo(), f.turning_width_hi());
    constexpr int NEPS = 8;
    std::complex<double> vals[NEPS];
    for (int i = 0; i < NEPS; ++i) vals[i] = integral_for((1.0 - 0.075 * i) * w0);
    std::complex<double> avg{0.0, 0.0};
    for (int i = 0; i < NEPS; ++i) avg += vals[i] / static_cast<double>(NEPS);
    double dev = 0.0;
    for (int i = 0; i < NEPS; ++i) dev = std::max(dev, std::abs(vals[i] - avg));

    // 1/(2 pi hbar): the reflection-operator prefactor 1/(pi hbar) halves in
    // the change of variables to the separation integral (checked against the
    // Gaussian ground state).
    const std::complex<double> w = f.norm_squared() / (2.0 * PI * hbar) * avg;
    WignerOracleValue out;
    out.value = w.real();
    out.imag_residual = std::abs(w.imag()) / std::max(1e-300, std::abs(w));
    out.error_estimate = f.norm_squared() / (2.0 * PI * hbar) * dev;
    return out;
}

}  // namespace

WignerOracleValue wigner_integral_numeric(const ConvexCurve& curve, PhasePoint x) {
    // Frame selection: rotate so the stationary separations (the centred
    // chords' rotated q components) and their tips sit well inside the
    // turning-point-excluded window.
    const CentreGeometry cg = find_centre_chords(curve, x);
    if (cg.chords.empty())
        throw Error(Errc::quadrature_not_converged, "centre outside the curve");
    const int m = curve.cache_size();
    double best_alpha = 0.0, best_score = -1e300;
    for (int k = 0; k < 64; ++k) {
        const double alpha = PI * k / 64.0;
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        double qmin = 1e300, qmax = -1e300;
        for (int i = 0; i < m; i += 2) {
            const PhasePoint& p = curve.cached_point(i);
            const double qr = sa * p.p + ca * p.q;
            qmin = std::min(qmin, qr);
            qmax = std::max(qmax, qr);
        }
        const double xq = sa * x.p + ca * x.q;
        const double hi = std::min(qmax - xq, xq - qmin);  // half-window in separation/2
        double score = 1e300;
        for (const auto& ch : cg.chords) {
            const double cq = std::abs(sa * ch.xi.p + ca * ch.xi.q);
            // stationary separation +-cq inside (2*)window, with margin
            score = std::min(score, 2.0 * hi - cq);
            // tips away from the turning points
            const double tip_hi = qmax - (xq + 0.5 * cq);
            const double tip_lo = (xq - 0.5 * cq) - qmin;
            score = std::min(score, std::min(tip_hi, tip_lo));
        }
        if (score > best_score) {
            best_score = score;
            best_alpha = alpha;
        }
    }
    const WkbBranches frame(curve, best_alpha);
    return wigner_integral_impl(frame, x, false, 0.0, 0.0);
}

WignerOracleValue wigner_integral_windowed(const ConvexCurve& curve, PhasePoint x, double centre,
                                           double width) {
    // fixed natural frame so the window coordinates match the caller's
    const WkbBranches frame(curve, 0.0);
    return wigner_integral_impl(frame, x, true, centre, width);
}

double wigner_from_chord(const std::function<std::complex<double>(ChordVector)>& chord_fn,
                         double hbar, PhasePoint x, const ChordGrid& grid) {
    if (grid.count < 2) throw Error(Errc::grid_too_coarse, "need at least 2 samples per axis");
    const double d = 2.0 * grid.xi_max / (grid.count - 1);
    const double reach = std::hypot(x.p, x.q) + grid.support_radius;
    if (d * reach / hbar > 1.0)
        throw Error(Errc::grid_too_coarse, "grid spacing cannot resolve the phase at this reach");
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < grid.count; ++i) {
        const double xp = -grid.xi_max + d * i;
        for (int j = 0; j < grid.count; ++j) {
            const double xq = -grid.xi_max + d * j;
            const ChordVector xi{xp, xq};
            acc += chord_fn(xi) * std::exp(-I_UNIT * (wedge(xi, x) / hbar));
        }
    }
    return (acc * d * d / (2.0 * PI * hbar)).real();
}

}  // namespace chordfn
