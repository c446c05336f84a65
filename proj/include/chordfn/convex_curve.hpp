#pragma once

#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "chordfn/phase_space.hpp"

namespace chordfn {

enum class CurveFamily { circle, cubic_perturbed, quartic_perturbed };

CurveFamily family_from_name(const std::string& name);
const char* family_name(CurveFamily f);

namespace detail {

/// Chebyshev interpolant on [a, b] (roots grid, Clenshaw evaluation).
class Chebyshev {
public:
    Chebyshev() = default;
    static Chebyshev fit(const std::function<double(double)>& f, double a, double b, int n);
    double operator()(double x) const;
    Chebyshev derivative() const;
    double lo() const { return a_; }
    double hi() const { return b_; }

private:
    double a_ = 0.0, b_ = 1.0;
    std::vector<double> c_;
};

}  // namespace detail

/// A quantized convex level curve {x : H(x) = E} of one of the built-in
/// Hamiltonian families
///
///   circle:            H = (p^2 + q^2)/2
///   cubic_perturbed:   H = (p^2 + q^2)/2 + beta q^3
///   quartic_perturbed: H = (p^2 + q^2)/2 + beta q^4
///
/// with E solved so the enclosed area satisfies the Bohr-Sommerfeld rule
/// oint p dq = 2 pi hbar (n + 1/2). All velocities and Hessians refer to the
/// action function I(x) = (area enclosed by the level through x) / 2 pi,
/// whose Hamiltonian flow has period 2 pi on every level; this is the
/// H-flow rescaled by T(E)/2 pi.
///
/// Immutable after construction (parametrization cache included); every
/// method is const and safe to call concurrently.
class ConvexCurve {
public:
    static ConvexCurve build(CurveFamily family, const std::vector<double>& params, int n,
                             double hbar);

    CurveFamily family() const { return family_; }
    const std::vector<double>& params() const { return params_; }
    int n() const { return n_; }
    double hbar() const { return hbar_; }
    double energy() const { return energy_; }
    /// Action of the quantized level, I = hbar (n + 1/2).
    double action() const { return action_; }
    /// Enclosed area 2 pi I.
    double enclosed_area() const { return 2.0 * std::numbers::pi * action_; }
    /// T(E)/2 pi at the quantized level.
    double angle_rescale() const { return period_at(energy_) / (2.0 * std::numbers::pi); }
    /// True for families with x -> -x symmetry about the elliptic centre.
    bool centrally_symmetric() const;

    double potential(double q) const;
    double potential_d1(double q) const;
    double potential_d2(double q) const;
    double hamiltonian(PhasePoint x) const { return 0.5 * x.p * x.p + potential(x.q); }

    /// Area A(E), period T(E) = A'(E) and T'(E) of the level at energy E.
    double area_at(double E) const;
    double period_at(double E) const;
    double period_d1_at(double E) const;

    /// I(x), grad I, Hessian of I, and the flow velocity J grad I.
    double action_at(PhasePoint x) const;
    Vec2 action_gradient(PhasePoint x) const;
    Mat2 action_hessian(PhasePoint x) const;
    Vec2 velocity_at(PhasePoint x) const;
    double hessian_form(PhasePoint x, Vec2 v) const;

    /// Angle-variable parametrization x(theta), period 2 pi, anchored on the
    /// positive-q axis; orientation gives oint p dq > 0. theta taken mod 2 pi.
    PhasePoint point_at(double theta) const;
    Vec2 tangent_at(double theta) const;
    /// Curve parameter of a point on (or near) the curve: minimizes distance.
    double theta_of_point(PhasePoint x) const;

    /// Turning points of the quantized level on the q axis (p = 0).
    double q_turn_lo() const { return q_lo_; }
    double q_turn_hi() const { return q_hi_; }

    /// Integral of p dq along the curve from theta_from over delta (>= 0,
    /// <= 2 pi), following the flow. Full loop gives the enclosed area.
    double arc_pdq(double theta_from, double delta) const;

    /// Parameter of the antipodal point (antiparallel tangent); the chord
    /// x(antipode) - x(theta) is the diameter through x(theta).
    double antipode_of(double theta) const;

    /// Parametrization cache (uniform theta grid), for scan-based root finding.
    int cache_size() const { return static_cast<int>(theta_.size()); }
    double cached_theta(int i) const { return theta_[i]; }
    const PhasePoint& cached_point(int i) const { return x_[i]; }
    const Vec2& cached_velocity(int i) const { return v_[i]; }

    /// Length scale (max curve extent), used for relative tolerances.
    double scale() const { return scale_; }

private:
    ConvexCurve() = default;
    void solve_turning_points(double E, double& qlo, double& qhi) const;
    double quadrature_area(double E) const;
    double quadrature_period(double E) const;
    void build_interpolants();
    void build_flow_cache();
    void build_antipode_table();
    void validate_level() const;
    double pdq_partial_cell(double a, double b) const;

    CurveFamily family_ = CurveFamily::circle;
    std::vector<double> params_;
    int n_ = 0;
    double hbar_ = 1.0;
    double energy_ = 0.0;
    double action_ = 0.0;
    double e_cap_ = 0.0;   // upper energy of the interpolant domain
    double q_lo_ = 0.0, q_hi_ = 0.0;
    double scale_ = 1.0;

    detail::Chebyshev area_cheb_;    // A(E)
    detail::Chebyshev period_cheb_;  // T(E)
    detail::Chebyshev period_d1_cheb_;

    std::vector<double> theta_;
    std::vector<PhasePoint> x_;
    std::vector<Vec2> v_;
    std::vector<double> pdq_;       // cumulative int p dq from theta = 0
    std::vector<double> antipode_;  // antipode parameter per cache node
};

/// Spec entry point: build a quantized curve. params: {} for circle,
/// {beta} for the perturbed families.
ConvexCurve build_curve(CurveFamily family, const std::vector<double>& params, int n, double hbar);

}  // namespace chordfn
