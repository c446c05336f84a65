#pragma once

#include <complex>
#include <functional>

#include "chordfn/convex_curve.hpp"

namespace chordfn {

/// Two-branch WKB data for the quantized curve, viewed in a frame rotated by
/// `alpha` (a canonical phase-plane rotation; both representations are
/// covariant under it). The action branches are tabulated along the curve
/// parameter, so their square-root turning-point behaviour never has to be
/// integrated in q directly.
class WkbBranches {
public:
    WkbBranches(const ConvexCurve& curve, double alpha = 0.0);

    double alpha() const { return alpha_; }
    double q_lo() const { return q_lo_; }           ///< left turning point
    double q_hi() const { return q_hi_; }           ///< right turning point
    double maslov_phase() const { return 0.5 * std::numbers::pi; }
    double norm_squared() const { return 1.0 / (2.0 * std::numbers::pi); }

    /// Curve parameter of the point with rotated coordinate q on the upper
    /// (branch 0, dI/dp > 0) or lower (branch 1) branch.
    double theta_of(double q, int branch) const;
    /// Momentum branches p_j(q).
    double momentum(double q, int branch) const;
    /// Action branches S_j(q), anchored S_0(q_lo) = 0, S_1 continued through
    /// the right turning point.
    double action(double q, int branch) const;
    /// WKB amplitude |dI/dp|^{-1/2} on the branch; diverges at the turning
    /// points as (q - q0)^{-1/4}.
    double amplitude(double q, int branch) const;

    /// Everything the oscillatory endpoint corrections need at one point of
    /// one branch, from a single parameter solve.
    struct BranchPoint {
        double p = 0.0;      ///< momentum
        double s = 0.0;      ///< action
        double a = 0.0;      ///< amplitude
        double dp_dq = 0.0;  ///< branch slope
        double da_dq = 0.0;  ///< amplitude derivative
    };
    BranchPoint branch_point(double q, int branch) const;

    /// Full two-branch WKB wave function (the lower branch carries the
    /// relative Maslov factor e^{i pi/2}). Throws TurningPointRegion within
    /// the Airy-width exclusion.
    std::complex<double> psi(double q) const;

    /// Airy-width scale at each turning point (the natural exclusion size).
    double turning_width_lo() const { return eps_lo_; }
    double turning_width_hi() const { return eps_hi_; }

    const ConvexCurve& curve() const { return *curve_; }

private:
    double arc_s(double theta) const;  ///< cumulative int p dq from theta0

    const ConvexCurve* curve_;
    double alpha_ = 0.0;
    double ca_ = 1.0, sa_ = 0.0;
    double q_lo_ = 0.0, q_hi_ = 0.0;
    double theta_qlo_ = 0.0, theta_qhi_ = 0.0;  // parameters of the extrema
    double eps_lo_ = 0.0, eps_hi_ = 0.0;
    std::vector<double> qrot_;  // rotated q at cache nodes
    std::vector<double> s_;     // cumulative int p dq from theta_qlo
};

struct OracleValue {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;  ///< half-exclusion sensitivity
};

/// Builds the branches in the natural frame (alpha = 0).
WkbBranches branch_actions(const ConvexCurve& curve);

/// Two-branch WKB wave function in the natural frame.
std::complex<double> wkb_psi(const ConvexCurve& curve, double q);

/// Chord function of the WKB state by direct oscillatory quadrature over the
/// wave-function overlap, with turning-point exclusions of Airy width
/// extrapolated to zero. The frame is rotated so both chord realizations are
/// crossed (tips on opposite branches) and all four tips stay clear of the
/// turning points; throws NoCrossedFrame if no rotation achieves that.
OracleValue chord_integral_numeric(const ConvexCurve& curve, ChordVector xi);

/// Same integral in a caller-fixed frame (used by the covariance checks).
OracleValue chord_integral_numeric_in_frame(const WkbBranches& frame, ChordVector xi);

struct WignerOracleValue {
    double value = 0.0;
    double imag_residual = 0.0;  ///< |Im| / |value|, quality metric
    double error_estimate = 0.0;
};

/// Wigner function of the WKB state by direct quadrature of the reflection
/// overlap (all four branch products included).
WignerOracleValue wigner_integral_numeric(const ConvexCurve& curve, PhasePoint x);

/// Same, restricted by a smooth window in the integration variable around
/// `centre` with half-width `width` (isolates one stationary chord's
/// contribution).
WignerOracleValue wigner_integral_windowed(const ConvexCurve& curve, PhasePoint x, double centre,
                                           double width);

struct ChordGrid {
    double xi_max = 0.0;         ///< half-extent of the square chord grid
    int count = 0;               ///< samples per axis (>= 2)
    double support_radius = 0.0; ///< phase-space reach used by the Nyquist check
};

/// Wigner value at x as the Fourier transform of a chord-function evaluator
/// over a truncated grid. Throws GridTooCoarse when the grid cannot resolve
/// the phase at reach support_radius + |x|.
double wigner_from_chord(const std::function<std::complex<double>(ChordVector)>& chord_fn,
                         double hbar, PhasePoint x, const ChordGrid& grid);

}  // namespace chordfn
