#include "chordfn/evaluators.hpp"

#include <algorithm>
#include <cmath>

#include "chordfn/special_functions.hpp"

namespace chordfn {

namespace {

constexpr double PI = std::numbers::pi;
const std::complex<double> I_UNIT{0.0, 1.0};

void airy_pair(double zeta, bool asymptotic_forms, double& ai, double& aip) {
    if (asymptotic_forms) {
        const auto [a, ap] = airy_asymptotic_negative(zeta);
        ai = a;
        aip = ap;
        return;
    }
    ai = airy_ai(-zeta);
    aip = airy_ai_prime(-zeta);
}

/// Airy evaluation that saturates to 0 deep on the decaying side instead of
/// tripping the |x| <= 100 domain guard.
double airy_decaying(double arg) {
    if (arg > 90.0) return 0.0;
    return airy_ai(arg);
}

ChordValue transitional_from_ingredients(const ConvexCurve& curve, ChordVector xi,
                                         const TransitionalIngredients& t,
                                         const EvaluatorOptions& opts) {
    const double hbar = curve.hbar();
    const double ai = airy_decaying(t.airy_argument);
    const std::complex<double> carrier =
        std::exp(I_UNIT * (0.5 * t.area_sum / hbar - 0.5 * PI));
    const std::complex<double> mid = opts.n_squared * std::cbrt(2.0) * t.amp_factor *
                                     std::pow(hbar, -2.0 / 3.0) * ai * carrier;
    ChordValue out;
    out.value = mid * std::exp(I_UNIT * (wedge(t.anchor, xi) / hbar));
    out.regime = t.inside ? Regime::transitional_window : Regime::evanescent;
    return out;
}

/// T^{1/6}/|B|^{1/2} for the Wigner fold, with the overall tau scale
/// cancelled (same construction as TransitionalIngredients::amp_factor).
double fold_amp_factor(double tau_p, double tau_m, double qf_p, double qf_m, double cross_p,
                       double cross_m) {
    const double u = (tau_m > 0) ? tau_p / tau_m : 1e150;
    const double cp = std::abs(cross_p), cm = std::abs(cross_m);
    if (u > 1e100) return std::pow(qf_p, 1.0 / 6.0) / std::sqrt(cp);
    return std::pow(u * u * u * qf_p + qf_m, 1.0 / 6.0) / std::sqrt(u * cp + cm);
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::oscillatory: return "oscillatory";
        case Regime::uniform_window: return "uniform-window";
        case Regime::transitional_window: return "transitional-window";
        case Regime::evanescent: return "evanescent";
    }
    return "?";
}

ChordValue chord_uniform(const ConvexCurve& curve, ChordVector xi, const EvaluatorOptions& opts) {
    const double hbar = curve.hbar();
    ChordSearchResult res{OutsideCaustic{}};
    try {
        res = find_chord_realizations(curve, xi);
    } catch (const Error& e) {
        if (e.code() == Errc::near_caustic_degenerate)
            return chord_transitional(curve, xi, opts);
        throw;
    }
    if (std::holds_alternative<OutsideCaustic>(res)) {
        // evanescent tail through the transitional machinery
        ChordValue v = chord_transitional(curve, xi, opts);
        v.regime = Regime::evanescent;
        return v;
    }
    const auto& g = std::get<ChordGeometry>(res);
    double ai, aip;
    airy_pair(g.zeta, opts.use_airy_asymptotic_forms, ai, aip);
    const double a34 = std::pow(0.75 * g.area_diff, 1.0 / 6.0);
    const std::complex<double> bracket =
        -I_UNIT * opts.broken_constant * a34 * g.sigma_i * ai /
            (std::sqrt(2.0) * std::pow(hbar, 2.0 / 3.0)) +
        g.delta_i * aip / (a34 * std::sqrt(2.0) * std::cbrt(hbar));
    const std::complex<double> mid =
        opts.n_squared * std::exp(I_UNIT * (0.5 * g.area_sum / hbar)) * bracket;
    ChordValue out;
    out.value = mid * std::exp(I_UNIT * (wedge(g.midpoint, xi) / hbar));
    out.regime = Regime::uniform_window;
    return out;
}

ChordValue chord_asymptotic(const ConvexCurve& curve, ChordVector xi,
                            const EvaluatorOptions& opts) {
    const double hbar = curve.hbar();
    const auto res = find_chord_realizations(curve, xi);
    if (!std::holds_alternative<ChordGeometry>(res))
        throw Error(Errc::too_close_to_caustic, "no realizations in the oscillatory regime");
    const auto& g = std::get<ChordGeometry>(res);
    if (g.area_diff < opts.oscillatory_min_area12 * hbar)
        throw Error(Errc::too_close_to_caustic, "area difference below the oscillatory threshold");
    const double phi1 = (g.r1.area + wedge(g.r1.centre, xi)) / hbar;
    const double phi2 = (g.r2.area + wedge(g.r2.centre, xi)) / hbar;
    const std::complex<double> sum =
        std::exp(I_UNIT * (phi1 - 0.25 * PI)) / std::sqrt(std::abs(g.r1.bracket)) +
        std::exp(I_UNIT * (phi2 + 0.25 * PI)) / std::sqrt(std::abs(g.r2.bracket));
    ChordValue out;
    out.value = opts.n_squared / (I_UNIT * std::sqrt(2.0 * PI * hbar)) * sum;
    out.regime = Regime::oscillatory;
    return out;
}

ChordValue chord_transitional(const ConvexCurve& curve, ChordVector xi,
                              const EvaluatorOptions& opts) {
    const auto t = transitional_ingredients(curve, xi);
    if (t.inside && -t.airy_argument > 6.5)
        throw Error(Errc::too_far_from_caustic, "transitional form misused in the deep "
                                                "oscillatory region");
    return transitional_from_ingredients(curve, xi, t, opts);
}

Regime select_regime(const ConvexCurve& curve, ChordVector xi, const EvaluatorOptions& opts) {
    const double hbar = curve.hbar();
    try {
        const auto res = find_chord_realizations(curve, xi);
        if (std::holds_alternative<ChordGeometry>(res)) {
            const auto& g = std::get<ChordGeometry>(res);
            if (g.area_diff >= opts.oscillatory_min_area12 * hbar) return Regime::oscillatory;
            if (g.zeta <= opts.transitional_max_zeta) return Regime::transitional_window;
            return Regime::uniform_window;
        }
    } catch (const Error& e) {
        if (e.code() != Errc::near_caustic_degenerate) throw;
        return Regime::transitional_window;
    }
    try {
        const auto t = transitional_ingredients(curve, xi);
        return (t.airy_argument > opts.evanescent_min_arg) ? Regime::evanescent
                                                           : Regime::transitional_window;
    } catch (const Error& e) {
        // so far beyond the caustic that the local data cannot be evaluated
        if (e.code() == Errc::domain_overflow) return Regime::evanescent;
        throw;
    }
}

ChordValue chord_auto(const ConvexCurve& curve, ChordVector xi, const EvaluatorOptions& opts) {
    const Regime r = select_regime(curve, xi, opts);
    ChordValue v;
    if (r == Regime::transitional_window || r == Regime::evanescent) {
        try {
            v = chord_transitional(curve, xi, opts);
        } catch (const Error& e) {
            if (e.code() != Errc::domain_overflow || r != Regime::evanescent) throw;
            v.value = 0.0;  // beyond any resolvable tail
        }
    } else {
        v = chord_uniform(curve, xi, opts);
    }
    v.regime = r;
    return v;
}

ChordValue origin_shift(const ChordValue& chi, ChordVector xi_prime, ChordVector xi, double hbar) {
    ChordValue out = chi;
    out.value *= std::exp(I_UNIT * (wedge(xi_prime, xi) / hbar));
    return out;
}

double correlation_semiclassical(const ConvexCurve& curve, ChordVector xi,
                                 const EvaluatorOptions& opts) {
    const double hbar = curve.hbar();
    const auto res = find_chord_realizations(curve, xi);
    if (!std::holds_alternative<ChordGeometry>(res))
        throw Error(Errc::too_close_to_caustic, "correlation needs the oscillatory regime");
    const auto& g = std::get<ChordGeometry>(res);
    if (g.area_diff < opts.oscillatory_min_area12 * hbar)
        throw Error(Errc::too_close_to_caustic, "area difference below the oscillatory threshold");
    const double b1 = std::abs(g.r1.bracket), b2 = std::abs(g.r2.bracket);
    const double n4 = opts.n_squared * opts.n_squared;
    return 2.0 * PI * hbar * n4 *
           (1.0 / b1 + 1.0 / b2 + 2.0 / std::sqrt(b1 * b2) * std::sin(g.area_diff / hbar));
}

double correlation_caustic(const ConvexCurve& curve, ChordVector xi,
                           const EvaluatorOptions& opts) {
    const ChordValue chi = chord_transitional(curve, xi, opts);
    const double f = 2.0 * PI * curve.hbar();
    return f * f * std::norm(chi.value);
}

WignerChordSet wigner_chord_set(const ConvexCurve& curve, PhasePoint x,
                                const EvaluatorOptions& opts) {
    CentreGeometry cg;
    try {
        cg = find_centre_chords(curve, x);
    } catch (const Error& e) {
        if (e.code() == Errc::on_symmetry_centre)
            throw Error(Errc::symmetric_degenerate, "fold caustic collapsed to the centre");
        throw;
    }
    WignerChordSet set;
    set.region = cg.region;
    if (cg.chords.empty()) return set;
    if (cg.chords.size() == 1) {
        set.chords = cg.chords;
        return set;
    }

    // Identify the coalescing pair as the two chords closest in unoriented
    // chord space; their distance shrinks to zero at the fold.
    const double full = curve.enclosed_area();
    int ii = 0, jj = 1;
    double best = 1e300;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            const double d = std::min(norm(cg.chords[a].xi - cg.chords[b].xi),
                                      norm(cg.chords[a].xi + cg.chords[b].xi));
            if (d < best) {
                best = d;
                ii = a;
                jj = b;
            }
        }
    CentredChord c1 = cg.chords[ii], c2 = cg.chords[jj];
    CentredChord c3 = cg.chords[3 - ii - jj];
    // joint orientation of the pair
    if (dot(c1.xi, c2.xi) < 0) {
        c2.xi = -c2.xi;
        std::swap(c2.theta_minus, c2.theta_plus);
        c2.area = full - c2.area;
        c2.bracket = -c2.bracket;
    }
    if (c1.area < c2.area) std::swap(c1, c2);
    set.chords = {c1, c2, c3};

    // Cusp guard: the separate chord must stay away from the coalescing pair.
    const double diam = 2.0 * curve.scale();
    const double d3 = std::min(
        std::min(norm(c3.xi - c1.xi), norm(c3.xi + c1.xi)),
        std::min(norm(c3.xi - c2.xi), norm(c3.xi + c2.xi)));
    if (d3 < opts.cusp_exclusion * diam)
        throw Error(Errc::at_cusp, "third chord coalesces with the pair (cusp region)");
    return set;
}

namespace {

/// cos(A/hbar - pi/4) branch value with the area measured on the side that
/// vanishes at the short-chord boundary.
double isolated_branch_term(const ConvexCurve& curve, const CentredChord& c,
                            const EvaluatorOptions& opts) {
    const double hbar = curve.hbar();
    const double a = std::min(c.area, curve.enclosed_area() - c.area);
    return 4.0 * opts.n_squared / std::sqrt(2.0 * PI * hbar) /
           std::sqrt(std::abs(c.bracket)) * std::cos(a / hbar - 0.25 * PI);
}

double pair_branch_term(const ConvexCurve& curve, const CentredChord& c, bool first,
                        const EvaluatorOptions& opts) {
    const double hbar = curve.hbar();
    const double shift = first ? -0.25 * PI : 0.25 * PI;
    return 4.0 * opts.n_squared / std::sqrt(2.0 * PI * hbar) /
           std::sqrt(std::abs(c.bracket)) * std::sin(c.area / hbar + shift);
}

}  // namespace

double wigner_branch_term(const ConvexCurve& curve, PhasePoint x, int chord_index,
                          const EvaluatorOptions& opts) {
    const auto set = wigner_chord_set(curve, x, opts);
    if (chord_index < 0 || chord_index >= static_cast<int>(set.chords.size()))
        throw Error(Errc::invalid_config, "chord index out of range");
    if (set.chords.size() == 1) return isolated_branch_term(curve, set.chords[0], opts);
    if (chord_index == 2) return isolated_branch_term(curve, set.chords[2], opts);
    const double a12 = set.chords[0].area - set.chords[1].area;
    if (a12 < opts.oscillatory_min_area12 * curve.hbar())
        throw Error(Errc::chord_near_coalescence,
                    "pair member has no isolated stationary-phase value near the fold");
    return pair_branch_term(curve, set.chords[chord_index], chord_index == 0, opts);
}

WignerValue wigner_uniform(const ConvexCurve& curve, PhasePoint x, const EvaluatorOptions& opts) {
    const double hbar = curve.hbar();
    const auto set = wigner_chord_set(curve, x, opts);
    WignerValue out;
    if (set.chords.empty()) {
        out.regime = Regime::evanescent;
        return out;
    }
    if (set.chords.size() == 1) {
        out.value = isolated_branch_term(curve, set.chords[0], opts);
        out.regime = Regime::oscillatory;
        out.contributing_chords = 1;
        return out;
    }
    const double a12 = set.chords[0].area - set.chords[1].area;
    const double sum = set.chords[0].area + set.chords[1].area;
    const double zeta = std::pow(0.75 * a12 / hbar, 2.0 / 3.0);
    double ai, aip;
    airy_pair(zeta, opts.use_airy_asymptotic_forms, ai, aip);
    const double s1 = 1.0 / std::sqrt(std::abs(set.chords[0].bracket));
    const double s2 = 1.0 / std::sqrt(std::abs(set.chords[1].bracket));
    const double a34 = std::pow(0.75 * a12, 1.0 / 6.0);
    const double pair =
        2.0 * std::sqrt(2.0) * opts.n_squared *
        (opts.broken_constant * a34 * (s1 + s2) * std::sin(0.5 * sum / hbar) * ai /
             std::pow(hbar, 2.0 / 3.0) +
         (s1 - s2) * std::cos(0.5 * sum / hbar) * aip / (std::cbrt(hbar) * a34));
    out.value = pair + isolated_branch_term(curve, set.chords[2], opts);
    out.regime = Regime::uniform_window;
    out.contributing_chords = 3;
    return out;
}

WignerValue wigner_asymptotic(const ConvexCurve& curve, PhasePoint x,
                              const EvaluatorOptions& opts) {
    const auto set = wigner_chord_set(curve, x, opts);
    if (set.chords.size() != 3)
        throw Error(Errc::too_close_to_caustic, "not in the three-chord region");
    const double a12 = set.chords[0].area - set.chords[1].area;
    if (a12 < opts.oscillatory_min_area12 * curve.hbar())
        throw Error(Errc::too_close_to_caustic, "area difference below the oscillatory threshold");
    WignerValue out;
    out.value = pair_branch_term(curve, set.chords[0], true, opts) +
                pair_branch_term(curve, set.chords[1], false, opts) +
                isolated_branch_term(curve, set.chords[2], opts);
    out.regime = Regime::oscillatory;
    out.contributing_chords = 3;
    return out;
}

WignerValue wigner_transitional(const ConvexCurve& curve, PhasePoint x,
                                const EvaluatorOptions& opts) {
    if (curve.centrally_symmetric())
        throw Error(Errc::symmetric_degenerate,
                    "the fold caustic of a symmetric curve collapses to a point");
    const double hbar = curve.hbar();
    const double act = curve.action();
    const auto set = wigner_chord_set(curve, x, opts);
    if (set.chords.empty())
        throw Error(Errc::too_far_from_caustic, "centre outside the curve");

    ChordVector xbar;
    double area_sum;
    bool inside_fold;
    const CentredChord* third = nullptr;
    if (set.chords.size() == 3) {
        xbar = 0.5 * (set.chords[0].xi + set.chords[1].xi);
        area_sum = set.chords[0].area + set.chords[1].area;
        third = &set.chords[2];
        inside_fold = true;
    } else {
        // one-chord side: continue through the nearest fold, i.e. the
        // diameter whose midpoint is closest to x
        const auto locus = diameter_locus(curve, 256);
        const DiameterSample* best = &locus.samples[0];
        double bd = 1e300;
        for (const auto& s : locus.samples) {
            const double d = norm(s.x_d - x);
            if (d < bd) {
                bd = d;
                best = &s;
            }
        }
        xbar = best->xi_d;
        const double area_d =
            centre_area(curve, best->x_d, best->xi_d);
        // first-order continuation of the pair phase off the fold
        const Vec2 grad = symplectic_apply(Vec2{xbar.p, xbar.q});
        area_sum = 2.0 * area_d + 2.0 * (grad.p * (x.p - best->x_d.p) +
                                         grad.q * (x.q - best->x_d.q));
        third = &set.chords[0];
        inside_fold = false;
    }

    const PhasePoint yp = x + 0.5 * xbar, ym = x - 0.5 * xbar;
    const double dip = act - curve.action_at(yp);
    const double dim = act - curve.action_at(ym);
    const Mat2 jp = curve.action_hessian(yp), jm = curve.action_hessian(ym);
    const Vec2 vp = curve.velocity_at(yp), vm = curve.velocity_at(ym);
    const double qfp = quadratic_form(jp, vp, vp), qfm = quadratic_form(jm, vm, vm);
    if (qfp <= 0 || qfm <= 0)
        throw Error(Errc::branch_resolution_failure, "non-positive Hessian form at the fold");
    const double tp = std::sqrt(8.0 * std::abs(dip) / qfp);
    const double tm = std::sqrt(8.0 * std::abs(dim) / qfm);
    const double cross_p = quadratic_form(jp, vm, vp);
    const double cross_m = quadratic_form(jm, vp, vm);

    double arg;
    if (inside_fold) {
        const double combo = std::pow(std::abs(dip), 1.5) / std::sqrt(qfp) +
                             std::pow(std::abs(dim), 1.5) / std::sqrt(qfm);
        arg = -std::cbrt(2.0) * std::pow(combo, 2.0 / 3.0) * std::pow(hbar, -2.0 / 3.0);
    } else {
        const double combo = std::abs(std::pow(std::abs(dip), 1.5) / std::sqrt(qfp) -
                                      std::pow(std::abs(dim), 1.5) / std::sqrt(qfm));
        arg = std::cbrt(2.0) * std::pow(combo, 2.0 / 3.0) * std::pow(hbar, -2.0 / 3.0);
    }
    if (std::abs(arg) > 6.5)
        throw Error(Errc::too_far_from_caustic, "outside the transitional window of the fold");

    const double amp = fold_amp_factor(tp, tm, qfp, qfm, cross_p, cross_m);
    const double pair = 8.0 * opts.n_squared * std::pow(2.0, -2.0 / 3.0) *
                        std::pow(hbar, -2.0 / 3.0) * amp * std::sin(0.5 * area_sum / hbar) *
                        airy_decaying(arg);
    WignerValue out;
    out.value = pair + isolated_branch_term(curve, *third, opts);
    out.regime = Regime::transitional_window;
    out.contributing_chords = static_cast<int>(set.chords.size());
    return out;
}

}  // namespace chordfn
