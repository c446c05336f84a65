#include "chordfn/chord_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace chordfn {

namespace {

constexpr double PI = std::numbers::pi;

double wrap_2pi(double t) {
    double r = std::fmod(t, 2.0 * PI);
    if (r < 0) r += 2.0 * PI;
    return r;
}

/// Circular distance between two parameters.
double theta_dist(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * PI)); }

/// Sign-change roots of f on the curve's cache grid, bisected to ~1e-12.
template <class F>
std::vector<double> grid_roots(const ConvexCurve& curve, F&& f, std::vector<double>* grid_out) {
    const int m = curve.cache_size();
    std::vector<double> val(m);
    for (int i = 0; i < m; ++i) val[i] = f(curve.cached_theta(i));
    if (grid_out) *grid_out = val;
    std::vector<double> roots;
    const double cell = 2.0 * PI / m;
    for (int i = 0; i < m; ++i) {
        const double f0 = val[i], f1 = val[(i + 1) % m];
        if (f0 == 0.0) {
            roots.push_back(curve.cached_theta(i));
            continue;
        }
        if ((f0 > 0) == (f1 > 0)) continue;
        double lo = i * cell, hi = (i + 1) * cell, flo = f0;
        for (int it = 0; it < 48; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        roots.push_back(wrap_2pi(0.5 * (lo + hi)));
    }
    return roots;
}

/// Straight-segment contribution to oint p dq from a to b.
double segment_pdq(PhasePoint from, PhasePoint to) {
    return 0.5 * (from.p + to.p) * (to.q - from.q);
}

ChordRealization make_realization(const ConvexCurve& curve, double theta_minus, ChordVector xi) {
    ChordRealization r;
    r.theta_minus = theta_minus;
    r.x_minus = curve.point_at(theta_minus);
    r.x_plus = r.x_minus + xi;
    r.theta_plus = curve.theta_of_point(r.x_plus);
    r.centre = r.x_minus + 0.5 * xi;
    const double tol = 1e-9 * curve.action();
    if (std::abs(curve.action_at(r.x_plus) - curve.action()) > tol)
        throw Error(Errc::branch_resolution_failure, "chord tip misses the curve");
    r.bracket = wedge(curve.velocity_at(r.x_minus), curve.velocity_at(r.x_plus));
    const double dth = wrap_2pi(r.theta_plus - r.theta_minus);
    r.area = curve.arc_pdq(r.theta_minus, dth) + segment_pdq(r.x_plus, r.x_minus);
    return r;
}

}  // namespace

ChordSearchResult find_chord_realizations(const ConvexCurve& curve, ChordVector xi) {
    if (norm(xi) < 1e-12 * curve.scale())
        throw Error(Errc::at_origin, "zero chord: the short-chord caustic is out of scope");
    const double E = curve.energy();
    auto f = [&](double th) { return curve.hamiltonian(curve.point_at(th) + xi) - E; };
    const auto roots = grid_roots(curve, f, nullptr);
    if (roots.empty()) {
        const DiameterSample d = diameter_in_direction(curve, xi);
        return OutsideCaustic{norm(xi) - norm(d.xi_d), norm(d.xi_d)};
    }
    if (roots.size() != 2)
        throw Error(Errc::near_caustic_degenerate, "chord realizations not separable");
    if (theta_dist(roots[0], roots[1]) < THETA_MERGE_TOL)
        throw Error(Errc::near_caustic_degenerate, "chord realizations coalesced");

    ChordRealization ra = make_realization(curve, roots[0], xi);
    ChordRealization rb = make_realization(curve, roots[1], xi);

    // Label so that area_diff = A1 - A2 + wedge(eta, xi) >= 0.
    double d_ab = ra.area - rb.area + wedge(ra.centre - rb.centre, xi);
    if (std::abs(d_ab) < 1e-12 * curve.action()) {
        // exact tie: larger centre q, then larger p, is realization 1
        const bool a_first = (ra.centre.q != rb.centre.q) ? (ra.centre.q > rb.centre.q)
                                                          : (ra.centre.p > rb.centre.p);
        if (!a_first) std::swap(ra, rb);
        d_ab = std::abs(d_ab);
    } else if (d_ab < 0) {
        std::swap(ra, rb);
        d_ab = -d_ab;
    }
    if (ra.bracket < 0) {
        ra.bracket = -ra.bracket;
        rb.bracket = -rb.bracket;
    }

    ChordGeometry g;
    g.xi = xi;
    g.r1 = ra;
    g.r2 = rb;
    g.eta = ra.centre - rb.centre;
    g.midpoint = PhasePoint{0.5 * (ra.centre.p + rb.centre.p), 0.5 * (ra.centre.q + rb.centre.q)};
    g.area_sum = ra.area + rb.area;
    g.area_diff = d_ab;
    g.zeta = std::pow(0.75 * g.area_diff / curve.hbar(), 2.0 / 3.0);
    const double s1 = 1.0 / std::sqrt(std::abs(ra.bracket));
    const double s2 = 1.0 / std::sqrt(std::abs(rb.bracket));
    g.sigma_i = s1 + s2;
    g.delta_i = s1 - s2;
    return g;
}

DiameterCaustic diameter_locus(const ConvexCurve& curve, int m) {
    if (m < 8) throw Error(Errc::invalid_config, "diameter locus needs m >= 8 samples");
    DiameterCaustic locus;
    locus.samples.reserve(m);
    for (int j = 0; j < m; ++j) {
        DiameterSample s;
        s.theta_a = 2.0 * PI * j / m;
        s.theta_b = curve.antipode_of(s.theta_a);
        const PhasePoint a = curve.point_at(s.theta_a), b = curve.point_at(s.theta_b);
        s.xi_d = b - a;
        s.x_d = PhasePoint{0.5 * (a.p + b.p), 0.5 * (a.q + b.q)};
        locus.samples.push_back(s);
    }
    return locus;
}

DiameterSample diameter_in_direction(const ConvexCurve& curve, ChordVector direction) {
    if (norm(direction) <= 0.0)
        throw Error(Errc::invalid_config, "diameter direction must be nonzero");
    const double alpha = std::atan2(direction.q, direction.p);
    const int m = curve.cache_size();
    auto dir_misfit = [&](double theta_a) {
        const double tb = curve.antipode_of(theta_a);
        const ChordVector xd = curve.point_at(tb) - curve.point_at(theta_a);
        return std::remainder(std::atan2(xd.q, xd.p) - alpha, 2.0 * PI);
    };
    // Coarse scan on cache nodes (antipodes already tabulated there via
    // antipode_of's seed, so this is cheap) for the genuine sign change.
    const int coarse = 256;
    double prev_t = 0.0, prev_f = dir_misfit(0.0);
    double lo = -1, hi = -1, flo = 0;
    for (int i = 1; i <= coarse; ++i) {
        const double t = 2.0 * PI * i / coarse;
        const double fi = dir_misfit(t);
        if ((prev_f > 0) != (fi > 0) && std::abs(prev_f) < 0.5 * PI && std::abs(fi) < 0.5 * PI) {
            lo = prev_t;
            hi = t;
            flo = prev_f;
            break;
        }
        prev_t = t;
        prev_f = fi;
    }
    if (lo < 0)
        throw Error(Errc::root_not_bracketed, "no diameter matches the requested direction");
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = dir_misfit(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    DiameterSample s;
    s.theta_a = wrap_2pi(0.5 * (lo + hi));
    s.theta_b = curve.antipode_of(s.theta_a);
    const PhasePoint a = curve.point_at(s.theta_a), b = curve.point_at(s.theta_b);
    s.xi_d = b - a;
    s.x_d = PhasePoint{0.5 * (a.p + b.p), 0.5 * (a.q + b.q)};
    (void)m;
    return s;
}

CentreGeometry find_centre_chords(const ConvexCurve& curve, PhasePoint x) {
    const double E = curve.energy();
    const double act = curve.action();
    CentreGeometry out;
    out.x = x;

    const double ix = curve.action_at(x);
    if (std::abs(ix - act) < 1e-6 * act)
        throw Error(Errc::on_curve, "centre sits on the curve (short-chord caustic)");

    auto f = [&](double th) {
        const PhasePoint y = curve.point_at(th);
        return curve.hamiltonian(PhasePoint{2.0 * x.p - y.p, 2.0 * x.q - y.q}) - E;
    };
    std::vector<double> grid;
    const auto roots = grid_roots(curve, f, &grid);

    // A symmetric centre reflects the curve onto itself: f vanishes everywhere.
    double maxabs = 0.0;
    for (double v : grid) maxabs = std::max(maxabs, std::abs(v));
    if (maxabs < 1e-8 * E)
        throw Error(Errc::on_symmetry_centre, "continuum of diameters through the centre");

    if (roots.empty()) {
        out.region = CentreRegion::outside_curve;
        return out;
    }
    if (roots.size() != 2 && roots.size() != 6)
        throw Error(Errc::near_caustic_degenerate, "centre chords not separable");

    // Pair each root with the parameter of its reflected partner.
    std::vector<int> mate(roots.size(), -1);
    for (size_t i = 0; i < roots.size(); ++i) {
        const PhasePoint y = curve.point_at(roots[i]);
        const PhasePoint refl{2.0 * x.p - y.p, 2.0 * x.q - y.q};
        const double tm = curve.theta_of_point(refl);
        int best = -1;
        double bd = 1e300;
        for (size_t j = 0; j < roots.size(); ++j) {
            if (j == i) continue;
            const double d = theta_dist(roots[j], tm);
            if (d < bd) {
                bd = d;
                best = static_cast<int>(j);
            }
        }
        if (bd > 1e-6 * 2.0 * PI)
            throw Error(Errc::near_caustic_degenerate, "chord pairing is ambiguous");
        mate[i] = best;
    }
    for (size_t i = 0; i < roots.size(); ++i)
        if (mate[i] < 0 || mate[mate[i]] != static_cast<int>(i))
            throw Error(Errc::near_caustic_degenerate, "chord pairing is inconsistent");

    std::vector<char> used(roots.size(), 0);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        const size_t j = mate[i];
        used[i] = used[j] = 1;
        const PhasePoint a = curve.point_at(roots[i]);
        const PhasePoint b = curve.point_at(roots[j]);
        ChordVector xi = b - a;
        double th_minus = roots[i], th_plus = roots[j];
        if (xi.q < 0 || (xi.q == 0 && xi.p < 0)) {  // canonical orientation
            xi = -xi;
            std::swap(th_minus, th_plus);
        }
        CentredChord ch;
        ch.theta_minus = th_minus;
        ch.theta_plus = th_plus;
        ch.xi = xi;
        const PhasePoint xm = curve.point_at(th_minus), xp = curve.point_at(th_plus);
        ch.bracket = wedge(curve.velocity_at(xm), curve.velocity_at(xp));
        ch.area = curve.arc_pdq(th_minus, wrap_2pi(th_plus - th_minus)) + segment_pdq(xp, xm);
        out.chords.push_back(ch);
    }

    // Coalescing pair below the merge tolerance cannot feed the uniform
    // formula meaningfully.
    for (size_t i = 0; i < out.chords.size(); ++i)
        for (size_t j = i + 1; j < out.chords.size(); ++j) {
            const double d = std::min(theta_dist(out.chords[i].theta_minus, out.chords[j].theta_minus),
                                      theta_dist(out.chords[i].theta_minus, out.chords[j].theta_plus));
            if (d < THETA_MERGE_TOL)
                throw Error(Errc::near_caustic_degenerate, "centre chords coalesced");
        }

    out.region = (out.chords.size() == 3) ? CentreRegion::three_chord : CentreRegion::one_chord;

    // Tangency of f without a sign change marks a fold touch.
    if (out.chords.size() == 1) {
        const int mg = static_cast<int>(grid.size());
        for (int i = 0; i < mg; ++i) {
            const double g0 = grid[(i + mg - 1) % mg], g1 = grid[i], g2 = grid[(i + 1) % mg];
            if (std::abs(g1) < 1e-6 * E && (g1 > 0) == (g0 > 0) && (g1 > 0) == (g2 > 0) &&
                std::abs(g1) <= std::abs(g0) && std::abs(g1) <= std::abs(g2)) {
                const double d0 = theta_dist(curve.cached_theta(i), out.chords[0].theta_minus);
                const double d1 = theta_dist(curve.cached_theta(i), out.chords[0].theta_plus);
                if (d0 > 0.05 && d1 > 0.05) {
                    out.region = CentreRegion::on_fold_caustic;
                    break;
                }
            }
        }
    }
    return out;
}

double chord_area(const ConvexCurve& curve, const ChordRealization& r) {
    const double dth = wrap_2pi(r.theta_plus - r.theta_minus);
    return curve.arc_pdq(r.theta_minus, dth) + segment_pdq(r.x_plus, r.x_minus);
}

double centre_area(const ConvexCurve& curve, PhasePoint x, ChordVector xi) {
    const PhasePoint tm = x - 0.5 * xi, tp = x + 0.5 * xi;
    const double tol = 1e-8 * curve.action();
    if (std::abs(curve.action_at(tm) - curve.action()) > tol ||
        std::abs(curve.action_at(tp) - curve.action()) > tol)
        throw Error(Errc::not_a_centred_chord, "tips are not on the curve");
    if (norm(xi) < 1e-14 * curve.scale()) return 0.0;
    const double th_m = curve.theta_of_point(tm), th_p = curve.theta_of_point(tp);
    return curve.arc_pdq(th_m, wrap_2pi(th_p - th_m)) + segment_pdq(tp, tm);
}

double poisson_bracket(const ConvexCurve& curve, const ChordRealization& r) {
    return wedge(curve.velocity_at(r.x_minus), curve.velocity_at(r.x_plus));
}

TransitionalIngredients transitional_ingredients(const ConvexCurve& curve, ChordVector xi) {
    if (norm(xi) < 1e-12 * curve.scale())
        throw Error(Errc::at_origin, "zero chord");
    TransitionalIngredients t;
    const DiameterSample d = diameter_in_direction(curve, xi);
    t.anchor = d.x_d;
    t.xi_d = d.xi_d;

    const PhasePoint xp = t.anchor + 0.5 * xi;
    const PhasePoint xm = t.anchor - 0.5 * xi;
    const double act = curve.action();
    t.di_plus = act - curve.action_at(xp);
    t.di_minus = act - curve.action_at(xm);
    const Mat2 jp = curve.action_hessian(xp), jm = curve.action_hessian(xm);
    t.vel_plus = curve.velocity_at(xp);
    t.vel_minus = curve.velocity_at(xm);
    t.qform_plus = quadratic_form(jp, t.vel_plus, t.vel_plus);
    t.qform_minus = quadratic_form(jm, t.vel_minus, t.vel_minus);
    if (t.qform_plus <= 0 || t.qform_minus <= 0)
        throw Error(Errc::branch_resolution_failure, "non-positive Hessian form at the fold");

    t.inside = (t.di_plus >= 0.0 && t.di_minus >= 0.0);
    const double ap = std::abs(t.di_plus), am = std::abs(t.di_minus);
    t.tau_plus = std::sqrt(8.0 * ap / t.qform_plus);
    t.tau_minus = std::sqrt(8.0 * am / t.qform_minus);

    t.area12_estimate = (std::pow(t.tau_plus, 3) * t.qform_plus +
                         std::pow(t.tau_minus, 3) * t.qform_minus) / 12.0;
    t.cubic_combination = std::pow(ap, 1.5) / std::sqrt(t.qform_plus) +
                          std::pow(am, 1.5) / std::sqrt(t.qform_minus);

    const double cross_p = quadratic_form(jp, t.vel_minus, t.vel_plus);
    const double cross_m = quadratic_form(jm, t.vel_plus, t.vel_minus);
    t.bracket_estimate = 0.5 * (t.tau_plus * cross_p + t.tau_minus * cross_m);

    // T^{1/6} / |B|^{1/2} with the overall tau scale cancelled analytically,
    // so the prefactor stays finite at the caustic itself.
    double u;  // tau+ / tau-
    if (std::max(ap, am) > 1e-10 * act) {
        u = (t.tau_minus > 0) ? t.tau_plus / t.tau_minus : 1e150;
    } else {
        // both vanish: ratio of slopes of I along the ray
        const double inv = 1.0 / norm(xi);
        const Vec2 dir{xi.p * inv, xi.q * inv};
        const double gp = std::abs(dot(curve.action_gradient(xp), dir));
        const double gm = std::abs(dot(curve.action_gradient(xm), dir));
        u = std::sqrt((gp * t.qform_minus) / (gm * t.qform_plus));
    }
    const double cp = std::abs(cross_p), cm = std::abs(cross_m);
    if (u > 1e100) {
        t.amp_factor = std::pow(t.qform_plus, 1.0 / 6.0) / std::sqrt(cp);
    } else {
        t.amp_factor = std::pow(u * u * u * t.qform_plus + t.qform_minus, 1.0 / 6.0) /
                       std::sqrt(u * cp + cm);
    }

    const double hbar = curve.hbar();
    const double mag = std::cbrt(2.0) * std::pow(t.cubic_combination, 2.0 / 3.0) /
                       std::pow(hbar, 2.0 / 3.0);
    t.airy_argument = t.inside ? -mag : mag;

    // Phase carrier: twice the diameter's chord area (the realizations'
    // area sum is stationary there in the anchored frame).
    const double area_d = curve.arc_pdq(d.theta_a, wrap_2pi(d.theta_b - d.theta_a)) +
                          segment_pdq(curve.point_at(d.theta_b), curve.point_at(d.theta_a));
    t.area_sum = 2.0 * area_d;
    return t;
}

}  // namespace chordfn
