#pragma once

#include <variant>
#include <vector>

#include "chordfn/convex_curve.hpp"

namespace chordfn {

/// One placement of the chord xi with both tips on the curve.
/// `area` is the symplectic area enclosed between the chord segment and the
/// arc run from x_minus to x_plus along the flow; the two realizations of a
/// chord then carry complementary areas on centrally symmetric curves.
struct ChordRealization {
    double theta_minus = 0.0;
    double theta_plus = 0.0;
    PhasePoint x_minus, x_plus, centre;
    double bracket = 0.0;  ///< wedge(velocity(x-), velocity(x+)), see ChordGeometry
    double area = 0.0;
};

/// The two realizations of a chord and every derived quantity the uniform
/// formulas consume. Ordering: realization 1 carries the larger phase, which
/// makes area_diff = A1 - A2 + wedge(eta, xi) >= 0; the pair's bracket signs
/// are normalized so bracket1 > 0 (only a convention, amplitudes use |b|).
struct ChordGeometry {
    ChordVector xi;
    ChordRealization r1, r2;
    ChordVector eta;       ///< centre1 - centre2, shrinks to 0 at the caustic
    PhasePoint midpoint;   ///< of the two centres; the natural phase origin
    double area_sum = 0.0;   ///< A1 + A2
    double area_diff = 0.0;  ///< A1 - A2 + wedge(eta, xi), >= 0
    double zeta = 0.0;       ///< (3 area_diff / 4 hbar)^{2/3}
    double sigma_i = 0.0;    ///< |b1|^{-1/2} + |b2|^{-1/2}
    double delta_i = 0.0;    ///< |b1|^{-1/2} - |b2|^{-1/2}
};

/// Returned when |xi| exceeds the diameter of the curve in its direction.
struct OutsideCaustic {
    double distance = 0.0;         ///< |xi| - diameter_length
    double diameter_length = 0.0;  ///< |xi_D| along the ray through xi
};

using ChordSearchResult = std::variant<ChordGeometry, OutsideCaustic>;

/// Solves I(x(theta) + xi) = action for the two realizations of xi.
/// Throws NearCausticDegenerate when the realizations cannot be separated
/// (roots closer than the merge tolerance); use the transitional evaluator
/// there. Throws AtOrigin for xi = 0 (the short-chord caustic is out of scope).
ChordSearchResult find_chord_realizations(const ConvexCurve& curve, ChordVector xi);

/// Merge tolerance in theta below which realizations count as coalesced.
constexpr double THETA_MERGE_TOL = 1e-4 * 2.0 * std::numbers::pi;

struct DiameterSample {
    double theta_a = 0.0, theta_b = 0.0;
    ChordVector xi_d;  ///< x(theta_b) - x(theta_a), a maximal chord
    PhasePoint x_d;    ///< midpoint of the diameter
};

/// The locus of diameters: the fold caustic of the chord function.
struct DiameterCaustic {
    std::vector<DiameterSample> samples;
};

/// m >= 8 samples of the diameter locus, ordered in theta_a.
DiameterCaustic diameter_locus(const ConvexCurve& curve, int m);

/// The diameter pointing along `direction` (sign included).
DiameterSample diameter_in_direction(const ConvexCurve& curve, ChordVector direction);

/// A chord with prescribed centre x. `xi` is stored in a canonical
/// orientation (xi_q > 0, or xi_p > 0 when xi_q == 0); area and bracket refer
/// to that orientation, and flipping xi maps area -> enclosed_area - area.
struct CentredChord {
    double theta_minus = 0.0, theta_plus = 0.0;
    ChordVector xi;
    double bracket = 0.0;
    double area = 0.0;
};

enum class CentreRegion { outside_curve, one_chord, three_chord, on_fold_caustic };

struct CentreGeometry {
    PhasePoint x;
    std::vector<CentredChord> chords;  ///< empty outside, else 1 or 3
    CentreRegion region = CentreRegion::one_chord;
};

/// All chords centred on x, found from I(2x - x(theta)) = action.
/// Throws OnSymmetryCentre at the centre of a symmetric curve (the fold
/// collapses to a point there), OnCurve when x sits on the curve itself, and
/// NearCausticDegenerate when a chord pair cannot be separated.
CentreGeometry find_centre_chords(const ConvexCurve& curve, PhasePoint x);

/// Area between a chord realization and the curve (recomputed from scratch;
/// equals ChordRealization::area).
double chord_area(const ConvexCurve& curve, const ChordRealization& r);

/// Area between the chord xi centred at x and the curve, for the arc run
/// from x - xi/2 to x + xi/2 along the flow. Throws NotACentredChord if the
/// tips are off the curve.
double centre_area(const ConvexCurve& curve, PhasePoint x, ChordVector xi);

/// wedge(velocity(x-), velocity(x+)) for the realization as given (no pair
/// sign normalization).
double poisson_bracket(const ConvexCurve& curve, const ChordRealization& r);

/// Local quadratic data near the diameter caustic in xi's direction:
/// everything the transitional (near-fold) chord formula needs, valid on both
/// sides of the caustic. On the evanescent side (I(anchor +- xi/2) > action)
/// tau_* hold the magnitudes of the imaginary flight times and `inside` is
/// false.
struct TransitionalIngredients {
    PhasePoint anchor;      ///< midpoint of the diameter along xi's direction
    ChordVector xi_d;       ///< that diameter
    bool inside = true;
    double di_plus = 0.0;   ///< action - I(anchor + xi/2)
    double di_minus = 0.0;  ///< action - I(anchor - xi/2)
    double tau_plus = 0.0, tau_minus = 0.0;
    double qform_plus = 0.0, qform_minus = 0.0;
    Vec2 vel_plus, vel_minus;
    double bracket_estimate = 0.0;  ///< [tau+ (X-.J+.X+) + tau- (X+.J-.X-)] / 2
    double area12_estimate = 0.0;   ///< (tau+^3 qf+ + tau-^3 qf-) / 12
    double cubic_combination = 0.0; ///< |dI+|^{3/2}/sqrt(qf+) + |dI-|^{3/2}/sqrt(qf-)
    double airy_argument = 0.0;     ///< -(3 A12est / 4 hbar)^{2/3}, sign-flipped outside
    double amp_factor = 0.0;        ///< T^{1/6}/|B|^{1/2} with the tau scaling cancelled
    double area_sum = 0.0;          ///< 2 x diameter chord area (phase carrier)
};

TransitionalIngredients transitional_ingredients(const ConvexCurve& curve, ChordVector xi);

}  // namespace chordfn
