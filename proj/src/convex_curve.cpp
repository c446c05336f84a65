#include "chordfn/convex_curve.hpp"

#include <algorithm>
#include <cmath>

namespace chordfn {

namespace {

constexpr double PI = std::numbers::pi;
constexpr int QUAD_POINTS = 96;        ///< Gauss-Legendre order for level quadratures
constexpr int CHEB_POINTS = 160;       ///< interpolant resolution for A(E), T(E)
constexpr int FLOW_STEPS = 32768;      ///< RK4 steps per period
constexpr int CACHE_SIZE = 4096;       ///< stored parametrization samples

/// Gauss-Legendre nodes/weights on [-1, 1], computed once per order.
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double t = std::cos(PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (t * p0 - p1) / (t * t - 1.0);
                const double dt = p0 / pp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * pp * pp);
        }
    }
};

const GaussLegendre& gl_rule() {
    static const GaussLegendre rule(QUAD_POINTS);
    return rule;
}

}  // namespace

namespace detail {

Chebyshev Chebyshev::fit(const std::function<double(double)>& f, double a, double b, int n) {
    Chebyshev c;
    c.a_ = a;
    c.b_ = b;
    c.c_.assign(n, 0.0);
    std::vector<double> fv(n);
    for (int j = 0; j < n; ++j) {
        const double t = std::cos(PI * (j + 0.5) / n);
        fv[j] = f(0.5 * (a + b) + 0.5 * (b - a) * t);
    }
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += fv[j] * std::cos(PI * k * (j + 0.5) / n);
        c.c_[k] = 2.0 / n * s;
    }
    return c;
}

double Chebyshev::operator()(double x) const {
    const double t = (2.0 * x - a_ - b_) / (b_ - a_);
    double d = 0.0, dd = 0.0;
    for (int k = static_cast<int>(c_.size()) - 1; k >= 1; --k) {
        const double sv = d;
        d = 2.0 * t * d - dd + c_[k];
        dd = sv;
    }
    return t * d - dd + 0.5 * c_[0];
}

Chebyshev Chebyshev::derivative() const {
    Chebyshev d;
    d.a_ = a_;
    d.b_ = b_;
    const int n = static_cast<int>(c_.size());
    d.c_.assign(n, 0.0);
    if (n >= 2) {
        d.c_[n - 1] = 0.0;
        d.c_[n - 2] = 2.0 * (n - 1) * c_[n - 1];
        for (int k = n - 3; k >= 0; --k) d.c_[k] = d.c_[k + 2] + 2.0 * (k + 1) * c_[k + 1];
        const double scale = 2.0 / (b_ - a_);
        for (auto& v : d.c_) v *= scale;
    }
    return d;
}

}  // namespace detail

CurveFamily family_from_name(const std::string& name) {
    if (name == "circle") return CurveFamily::circle;
    if (name == "cubic-perturbed") return CurveFamily::cubic_perturbed;
    if (name == "quartic-perturbed") return CurveFamily::quartic_perturbed;
    throw Error(Errc::invalid_config, "unknown curve family '" + name + "'");
}

const char* family_name(CurveFamily f) {
    switch (f) {
        case CurveFamily::circle: return "circle";
        case CurveFamily::cubic_perturbed: return "cubic-perturbed";
        case CurveFamily::quartic_perturbed: return "quartic-perturbed";
    }
    return "?";
}

bool ConvexCurve::centrally_symmetric() const {
    if (family_ == CurveFamily::circle) return true;
    if (family_ == CurveFamily::quartic_perturbed) return true;  // q -> -q plus p -> -p
    return params_.empty() || params_[0] == 0.0;
}

double ConvexCurve::potential(double q) const {
    const double b = params_.empty() ? 0.0 : params_[0];
    switch (family_) {
        case CurveFamily::circle: return 0.5 * q * q;
        case CurveFamily::cubic_perturbed: return 0.5 * q * q + b * q * q * q;
        case CurveFamily::quartic_perturbed: return 0.5 * q * q + b * q * q * q * q;
    }
    return 0.0;
}

double ConvexCurve::potential_d1(double q) const {
    const double b = params_.empty() ? 0.0 : params_[0];
    switch (family_) {
        case CurveFamily::circle: return q;
        case CurveFamily::cubic_perturbed: return q + 3.0 * b * q * q;
        case CurveFamily::quartic_perturbed: return q + 4.0 * b * q * q * q;
    }
    return 0.0;
}

double ConvexCurve::potential_d2(double q) const {
    const double b = params_.empty() ? 0.0 : params_[0];
    switch (family_) {
        case CurveFamily::circle: return 1.0;
        case CurveFamily::cubic_perturbed: return 1.0 + 6.0 * b * q;
        case CurveFamily::quartic_perturbed: return 1.0 + 12.0 * b * q * q;
    }
    return 0.0;
}

void ConvexCurve::solve_turning_points(double E, double& qlo, double& qhi) const {
    // Roots of V(q) = E bracketing the well at q = 0. The search stays inside
    // the basin: for perturbed families the outer bracket stops at the saddle.
    const double b = params_.empty() ? 0.0 : params_[0];
    auto refine = [&](double lo, double hi) {
        double flo = potential(lo) - E;
        for (int i = 0; i < 110; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double fm = potential(mid) - E;
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    const double r0 = std::sqrt(2.0 * E);
    switch (family_) {
        case CurveFamily::circle:
            qlo = -r0;
            qhi = r0;
            return;
        case CurveFamily::cubic_perturbed: {
            if (b == 0.0) {
                qlo = -r0;
                qhi = r0;
                return;
            }
            const double qs = -1.0 / (3.0 * b);  // saddle abscissa
            const double neg_lim = (b > 0) ? qs : -4.0 * r0;
            const double pos_lim = (b > 0) ? 4.0 * r0 : -qs;
            if (potential(neg_lim) - E <= 0 || potential(pos_lim) - E <= 0)
                throw Error(Errc::no_convex_level, "level not closed inside the cubic basin");
            qlo = refine(neg_lim, 0.0);
            qhi = refine(pos_lim, 0.0);
            if (qlo > qhi) std::swap(qlo, qhi);
            return;
        }
        case CurveFamily::quartic_perturbed: {
            if (b == 0.0) {
                qlo = -r0;
                qhi = r0;
                return;
            }
            if (b > 0) {
                // q^2 = (sqrt(1 + 16 b E) - 1) / (4 b), exactly
                const double q2 = (std::sqrt(1.0 + 16.0 * b * E) - 1.0) / (4.0 * b);
                qhi = std::sqrt(q2);
                qlo = -qhi;
            } else {
                const double qs2 = -1.0 / (4.0 * b);
                const double qs = std::sqrt(qs2);
                if (potential(qs) <= E)
                    throw Error(Errc::no_convex_level, "level not closed inside the quartic basin");
                qhi = refine(qs, 0.0);
                qlo = -qhi;
            }
            return;
        }
    }
}

double ConvexCurve::quadrature_area(double E) const {
    // oint p dq = 2 int sqrt((q1-q)(q-q0) g(q)) dq with the square-root factor
    // removed by q = mid + half sin(u); the remaining integrand is analytic.
    double q0, q1;
    solve_turning_points(E, q0, q1);
    const double mid = 0.5 * (q0 + q1), half = 0.5 * (q1 - q0);
    // Gauss nodes are interior, so (q1-q)(q-q0) = (half cos u)^2 never hits 0.
    auto g = [&](double q) {
        const double num = 2.0 * (E - potential(q));
        const double den = (q1 - q) * (q - q0);
        return std::max(0.0, num / den);
    };
    const auto& rule = gl_rule();
    double s = 0.0;
    for (int i = 0; i < QUAD_POINTS; ++i) {
        const double u = 0.5 * PI * rule.x[i];
        const double cu = std::cos(u);
        const double q = mid + half * std::sin(u);
        s += rule.w[i] * cu * cu * std::sqrt(g(q));
    }
    return 2.0 * half * half * 0.5 * PI * s;
}

double ConvexCurve::quadrature_period(double E) const {
    double q0, q1;
    solve_turning_points(E, q0, q1);
    const double mid = 0.5 * (q0 + q1), half = 0.5 * (q1 - q0);
    auto g = [&](double q) {
        const double num = 2.0 * (E - potential(q));
        const double den = (q1 - q) * (q - q0);
        return num / den;
    };
    const auto& rule = gl_rule();
    double s = 0.0;
    for (int i = 0; i < QUAD_POINTS; ++i) {
        const double u = 0.5 * PI * rule.x[i];
        const double q = mid + half * std::sin(u);
        s += rule.w[i] / std::sqrt(std::max(1e-300, g(q)));
    }
    return 2.0 * 0.5 * PI * s;
}

double ConvexCurve::area_at(double E) const { return area_cheb_(E); }
double ConvexCurve::period_at(double E) const { return period_cheb_(E); }
double ConvexCurve::period_d1_at(double E) const { return period_d1_cheb_(E); }

double ConvexCurve::action_at(PhasePoint x) const {
    const double E = hamiltonian(x);
    if (E > e_cap_)
        throw Error(Errc::domain_overflow, "action_at: point beyond the interpolated annulus");
    return area_at(E) / (2.0 * PI);
}

Vec2 ConvexCurve::action_gradient(PhasePoint x) const {
    const double E = hamiltonian(x);
    if (E > e_cap_)
        throw Error(Errc::domain_overflow, "action_gradient: point beyond the interpolated annulus");
    const double r = period_at(E) / (2.0 * PI);
    return Vec2{r * x.p, r * potential_d1(x.q)};
}

Mat2 ConvexCurve::action_hessian(PhasePoint x) const {
    const double E = hamiltonian(x);
    if (E > e_cap_)
        throw Error(Errc::domain_overflow, "action_hessian: point beyond the interpolated annulus");
    const double r = period_at(E) / (2.0 * PI);
    const double r1 = period_d1_at(E) / (2.0 * PI);
    const double hp = x.p, hq = potential_d1(x.q);
    Mat2 m;
    m.pp = r + r1 * hp * hp;
    m.pq = r1 * hp * hq;
    m.qq = r * potential_d2(x.q) + r1 * hq * hq;
    return m;
}

Vec2 ConvexCurve::velocity_at(PhasePoint x) const {
    const Vec2 g = action_gradient(x);
    const double gn = norm(g);
    if (gn < 1e-12 * scale_)
        throw Error(Errc::gradient_vanishes, "velocity_at: elliptic centre");
    return symplectic_apply(g);
}

double ConvexCurve::hessian_form(PhasePoint x, Vec2 v) const {
    return quadratic_form(action_hessian(x), v, v);
}

PhasePoint ConvexCurve::point_at(double theta) const {
    const int m = cache_size();
    double t = std::fmod(theta, 2.0 * PI);
    if (t < 0) t += 2.0 * PI;
    const double h = 2.0 * PI / m;
    int i = static_cast<int>(t / h);
    if (i >= m) i = m - 1;
    const int j = (i + 1) % m;
    const double s = (t - theta_[i]) / h;
    // cubic Hermite with exact endpoint derivatives (the flow field)
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    PhasePoint r;
    r.p = h00 * x_[i].p + h10 * h * v_[i].p + h01 * x_[j].p + h11 * h * v_[j].p;
    r.q = h00 * x_[i].q + h10 * h * v_[i].q + h01 * x_[j].q + h11 * h * v_[j].q;
    return r;
}

Vec2 ConvexCurve::tangent_at(double theta) const { return velocity_at(point_at(theta)); }

double ConvexCurve::theta_of_point(PhasePoint x) const {
    const int m = cache_size();
    int best = 0;
    double bd = 1e300;
    for (int i = 0; i < m; i += 4) {
        const double dp = x_[i].p - x.p, dq = x_[i].q - x.q;
        const double d = dp * dp + dq * dq;
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    for (int i = std::max(0, best - 4); i < std::min(m, best + 5); ++i) {
        const double dp = x_[i].p - x.p, dq = x_[i].q - x.q;
        const double d = dp * dp + dq * dq;
        if (d < bd) {
            bd = d;
            best = i;
        }
    }
    double t = theta_[best];
    const double cell = 2.0 * PI / m;
    // Newton on f(t) = (x(t) - x) . x'(t); |x'|^2 dominates f' for nearby points
    for (int it = 0; it < 60; ++it) {
        const PhasePoint xt = point_at(t);
        const Vec2 vt = velocity_at(xt);
        const ChordVector d = xt - x;
        const double f = d.p * vt.p + d.q * vt.q;
        const double fp = vt.p * vt.p + vt.q * vt.q;
        double dt = f / fp;
        dt = std::clamp(dt, -2.0 * cell, 2.0 * cell);
        t -= dt;
        if (std::abs(dt) < 1e-14) break;
    }
    double tw = std::fmod(t, 2.0 * PI);
    if (tw < 0) tw += 2.0 * PI;
    return tw;
}

void ConvexCurve::build_interpolants() {
    auto area_fn = [this](double E) { return quadrature_area(E); };
    auto period_fn = [this](double E) { return quadrature_period(E); };
    area_cheb_ = detail::Chebyshev::fit(area_fn, 0.0, e_cap_, CHEB_POINTS);
    period_cheb_ = detail::Chebyshev::fit(period_fn, 0.0, e_cap_, CHEB_POINTS);
    period_d1_cheb_ = period_cheb_.derivative();
}

void ConvexCurve::build_flow_cache() {
    // Integrate the I-flow, whose period is exactly 2 pi on every level, with
    // fixed-step RK4 from the anchor (0, q_hi). The running integral of p dq
    // rides along as a third component.
    theta_.resize(CACHE_SIZE);
    x_.resize(CACHE_SIZE);
    v_.resize(CACHE_SIZE);
    pdq_.resize(CACHE_SIZE + 1);
    auto rhs = [this](PhasePoint x) -> Vec2 {
        const double E = hamiltonian(x);
        const double r = period_cheb_(E) / (2.0 * PI);
        return Vec2{-r * potential_d1(x.q), r * x.p};
    };
    PhasePoint x{0.0, q_hi_};
    double acc = 0.0;  // int p qdot dtheta
    const double h = 2.0 * PI / FLOW_STEPS;
    const int stride = FLOW_STEPS / CACHE_SIZE;
    int slot = 0;
    for (int s = 0; s < FLOW_STEPS; ++s) {
        if (s % stride == 0) {
            theta_[slot] = s * h;
            x_[slot] = x;
            v_[slot] = rhs(x);
            pdq_[slot] = acc;
            ++slot;
        }
        const Vec2 k1 = rhs(x);
        const PhasePoint x2{x.p + 0.5 * h * k1.p, x.q + 0.5 * h * k1.q};
        const Vec2 k2 = rhs(x2);
        const PhasePoint x3{x.p + 0.5 * h * k2.p, x.q + 0.5 * h * k2.q};
        const Vec2 k3 = rhs(x3);
        const PhasePoint x4{x.p + h * k3.p, x.q + h * k3.q};
        const Vec2 k4 = rhs(x4);
        acc += h / 6.0 * (x.p * k1.q + 2 * x2.p * k2.q + 2 * x3.p * k3.q + x4.p * k4.q);
        x.p += h / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
        x.q += h / 6.0 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q);
    }
    pdq_[CACHE_SIZE] = acc;  // full-loop value, = enclosed area
    const double closure = std::hypot(x.p - x_[0].p, x.q - x_[0].q);
    if (closure > 1e-8 * scale_)
        throw Error(Errc::no_convex_level, "flow failed to close after one period");
}

double ConvexCurve::pdq_partial_cell(double a, double b) const {
    // Gauss-Legendre on a sub-cell interval, integrand p(theta) qdot(theta).
    static const double gx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                 -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                 0.7966664774136267,  0.9602898564975363};
    static const double gw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                 0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double th = mid + half * gx[i];
        const PhasePoint x = point_at(th);
        const Vec2 v = velocity_at(x);
        s += gw[i] * x.p * v.q;
    }
    return half * s;
}

double ConvexCurve::arc_pdq(double theta_from, double delta) const {
    const int m = cache_size();
    const double cell = 2.0 * PI / m;
    delta = std::clamp(delta, 0.0, 2.0 * PI);
    double t0 = std::fmod(theta_from, 2.0 * PI);
    if (t0 < 0) t0 += 2.0 * PI;
    const double t1 = t0 + delta;
    // whole cells covered: [i0+1, i1) in node indices, wrap-aware
    const int i0 = static_cast<int>(std::floor(t0 / cell));
    const int i1 = static_cast<int>(std::floor(t1 / cell));
    auto cum = [&](int node) {  // cumulative at node index with wrap
        const int w = node / m;
        return pdq_[node % m] + w * pdq_[m];
    };
    if (i0 == i1) return pdq_partial_cell(t0, t1);
    double s = pdq_partial_cell(t0, (i0 + 1) * cell);
    s += cum(i1) - cum(i0 + 1);
    s += pdq_partial_cell(i1 * cell, t1);
    return s;
}

void ConvexCurve::build_antipode_table() {
    // Unwrapped tangent direction along the cache; strictly monotone for a
    // convex curve, so the antipode solves phi(theta_b) = phi(theta_a) + pi.
    const int m = cache_size();
    std::vector<double> phi(m + 1);
    double prev = std::atan2(v_[0].q, v_[0].p);
    phi[0] = prev;
    double offset = 0.0;
    for (int i = 1; i <= m; ++i) {
        const Vec2& v = v_[i % m];
        double a = std::atan2(v.q, v.p);
        double d = a - prev;
        while (d > PI) d -= 2.0 * PI;
        while (d < -PI) d += 2.0 * PI;
        if (d <= 0.0 && i < m)
            throw Error(Errc::root_not_bracketed, "tangent direction not monotone (non-convex?)");
        offset += d;
        phi[i] = phi[0] + offset;
        prev = a;
    }
    if (std::abs(phi[m] - phi[0] - 2.0 * PI) > 1e-6)
        throw Error(Errc::root_not_bracketed, "tangent winding is not one turn");
    antipode_.resize(m);
    const double cell = 2.0 * PI / m;
    for (int i = 0; i < m; ++i) {
        double target = phi[i] + PI;
        if (target >= phi[m]) target -= 2.0 * PI;
        // cell j with phi[j] <= target < phi[j+1]
        int lo_i = 0, hi_i = m;
        while (hi_i - lo_i > 1) {
            const int mid = (lo_i + hi_i) / 2;
            if (phi[mid] <= target)
                lo_i = mid;
            else
                hi_i = mid;
        }
        const Vec2 va = v_[i];
        auto f = [&](double th) { return wedge(va, velocity_at(point_at(th))); };
        double lo = lo_i * cell, hi = (lo_i + 1) * cell;
        double flo = f(lo);
        for (int it = 0; it < 52; ++it) {
            const double mid2 = 0.5 * (lo + hi);
            const double fm = f(mid2);
            if ((fm > 0) == (flo > 0)) {
                lo = mid2;
                flo = fm;
            } else {
                hi = mid2;
            }
        }
        antipode_[i] = 0.5 * (lo + hi);
    }
}

double ConvexCurve::antipode_of(double theta) const {
    const int m = cache_size();
    double t = std::fmod(theta, 2.0 * PI);
    if (t < 0) t += 2.0 * PI;
    const double cell = 2.0 * PI / m;
    const int i = std::min(static_cast<int>(t / cell), m - 1);
    // seed from the table (unwrap the node pair), then refine by bisection
    double a0 = antipode_[i];
    double a1 = antipode_[(i + 1) % m];
    if (a1 < a0) a1 += 2.0 * PI;
    const double s = (t - theta_[i]) / cell;
    const double seed = a0 + s * (a1 - a0);
    const Vec2 va = velocity_at(point_at(t));
    auto f = [&](double th) { return wedge(va, velocity_at(point_at(th))); };
    double lo = seed - 1.5 * cell, hi = seed + 1.5 * cell;
    double flo = f(lo), fhi = f(hi);
    if ((flo > 0) == (fhi > 0)) {
        lo = seed - 0.2;
        hi = seed + 0.2;
        flo = f(lo);
        fhi = f(hi);
        if ((flo > 0) == (fhi > 0))
            throw Error(Errc::root_not_bracketed, "antipode refinement lost its bracket");
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    double th = std::fmod(0.5 * (lo + hi), 2.0 * PI);
    if (th < 0) th += 2.0 * PI;
    return th;
}

void ConvexCurve::validate_level() const {
    // Convexity: the curvature numerator V'(q)^2 + p^2 V''(q) must keep one
    // sign along the whole level.
    double minval = 1e300;
    for (int i = 0; i < cache_size(); ++i) {
        const PhasePoint& x = x_[i];
        const double f = potential_d1(x.q) * potential_d1(x.q) + x.p * x.p * potential_d2(x.q);
        minval = std::min(minval, f);
    }
    if (minval <= 1e-10 * scale_ * scale_)
        throw Error(Errc::no_convex_level, "level curve is not strictly convex");
}

ConvexCurve ConvexCurve::build(CurveFamily family, const std::vector<double>& params, int n,
                               double hbar) {
    if (n < 0) throw Error(Errc::invalid_config, "quantum number n must be >= 0");
    if (!(hbar > 0.0)) throw Error(Errc::invalid_config, "hbar must be > 0");
    ConvexCurve c;
    c.family_ = family;
    c.params_ = params;
    c.n_ = n;
    c.hbar_ = hbar;
    c.action_ = hbar * (n + 0.5);
    const double target = 2.0 * PI * c.action_;

    // Energy cap of the solvable range: stay below the basin saddle.
    const double b = params.empty() ? 0.0 : params[0];
    double e_saddle = 1e300;
    if (family == CurveFamily::cubic_perturbed && b != 0.0) e_saddle = 1.0 / (54.0 * b * b);
    if (family == CurveFamily::quartic_perturbed && b < 0.0) e_saddle = -1.0 / (16.0 * b);

    // Solve A(E) = target by bisection on the direct quadrature.
    const double e_basin = 0.999 * e_saddle;
    double e_lo = 1e-12 * target, e_hi = std::min(1.0001 * target / (2.0 * PI), e_basin);
    while (c.quadrature_area(e_hi) < target) {
        if (e_hi >= e_basin)
            throw Error(Errc::no_convex_level,
                        "required Bohr-Sommerfeld area exceeds the convex basin");
        e_hi = std::min(2.0 * e_hi, e_basin);
        if (e_hi > 1e12)
            throw Error(Errc::quantization_root_not_bracketed, "area target unreachable");
    }
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (e_lo + e_hi);
        if (c.quadrature_area(mid) < target)
            e_lo = mid;
        else
            e_hi = mid;
    }
    c.energy_ = 0.5 * (e_lo + e_hi);
    c.e_cap_ = std::min(3.2 * c.energy_, 0.995 * e_saddle);
    c.solve_turning_points(c.energy_, c.q_lo_, c.q_hi_);
    c.scale_ = std::max({std::abs(c.q_lo_), std::abs(c.q_hi_), std::sqrt(2.0 * c.energy_)});
    c.build_interpolants();
    c.build_flow_cache();
    c.validate_level();
    c.build_antipode_table();
    return c;
}

ConvexCurve build_curve(CurveFamily family, const std::vector<double>& params, int n, double hbar) {
    return ConvexCurve::build(family, params, n, hbar);
}

}  // namespace chordfn
