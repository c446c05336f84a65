#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace chordfn {

/// A point x = (p, q) of the phase plane. Units: both coordinates carry
/// dimension sqrt(action), so symplectic areas come out in units of action.
struct PhasePoint {
    double p = 0.0;
    double q = 0.0;
};

/// A chord (translation) vector xi = (xi_p, xi_q).
struct ChordVector {
    double p = 0.0;
    double q = 0.0;
};

/// Tangent-space vector (velocity, gradient).
struct Vec2 {
    double p = 0.0;
    double q = 0.0;
};

/// Symmetric 2x2 matrix, used for Hessians of scalar fields on phase space.
struct Mat2 {
    double pp = 0.0;
    double pq = 0.0;
    double qq = 0.0;
};

/// Skew product a ^ b = a_p b_q - a_q b_p. This is the convention fixed by
/// the generator of translations, xi ^ x = xi_p q - xi_q p, and it is the
/// (signed) symplectic area of the parallelogram spanned by a and b.
template <class A, class B>
constexpr double wedge(const A& a, const B& b) {
    return a.p * b.q - a.q * b.p;
}

template <class A, class B>
constexpr double dot(const A& a, const B& b) {
    return a.p * b.p + a.q * b.q;
}

template <class A>
constexpr double norm(const A& a) {
    return std::sqrt(a.p * a.p + a.q * a.q);
}

/// Standard symplectic matrix J = [[0,-1],[1,0]] acting on a (p,q) pair;
/// Hamilton's equations read xdot = J grad(H).
constexpr Vec2 symplectic_apply(const Vec2& g) { return Vec2{-g.q, g.p}; }

constexpr double quadratic_form(const Mat2& m, const Vec2& u, const Vec2& v) {
    return u.p * (m.pp * v.p + m.pq * v.q) + u.q * (m.pq * v.p + m.qq * v.q);
}

constexpr PhasePoint operator+(PhasePoint x, ChordVector d) { return {x.p + d.p, x.q + d.q}; }
constexpr PhasePoint operator-(PhasePoint x, ChordVector d) { return {x.p - d.p, x.q - d.q}; }
constexpr ChordVector operator-(PhasePoint a, PhasePoint b) { return {a.p - b.p, a.q - b.q}; }
constexpr ChordVector operator*(double s, ChordVector d) { return {s * d.p, s * d.q}; }
constexpr ChordVector operator-(ChordVector d) { return {-d.p, -d.q}; }
constexpr ChordVector operator+(ChordVector a, ChordVector b) { return {a.p + b.p, a.q + b.q}; }
constexpr ChordVector operator-(ChordVector a, ChordVector b) { return {a.p - b.p, a.q - b.q}; }
constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.p, s * v.q}; }
constexpr Vec2 operator-(Vec2 v) { return {-v.p, -v.q}; }

template <class A>
constexpr bool is_finite(const A& a) {
    return std::isfinite(a.p) && std::isfinite(a.q);
}

/// Failure modes surfaced to callers. Geometry routines throw Error with one
/// of these codes; soft outcomes (a chord outside the caustic, the evanescent
/// side of a fold) are ordinary return values, not errors.
enum class Errc {
    no_convex_level,
    quantization_root_not_bracketed,
    root_not_bracketed,
    gradient_vanishes,
    near_caustic_degenerate,
    on_symmetry_centre,
    on_curve,
    not_a_centred_chord,
    beyond_diameter,
    at_origin,
    too_close_to_caustic,
    too_far_from_caustic,
    at_cusp,
    on_short_chord_caustic,
    symmetric_degenerate,
    chord_near_coalescence,
    quadrature_not_converged,
    grid_too_coarse,
    domain_overflow,
    turning_point_region,
    branch_resolution_failure,
    no_crossed_frame,
    invalid_config,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace chordfn
