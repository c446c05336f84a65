#pragma once

#include <complex>

#include "chordfn/chord_geometry.hpp"

namespace chordfn {

enum class Regime { oscillatory, uniform_window, transitional_window, evanescent };
const char* regime_name(Regime r);

struct ChordValue {
    std::complex<double> value{0.0, 0.0};
    Regime regime = Regime::uniform_window;
};

struct WignerValue {
    double value = 0.0;
    Regime regime = Regime::uniform_window;
    int contributing_chords = 0;
};

/// Evaluation knobs. The normalization constant enters squared and defaults
/// to 1/(2 pi); outside the caustic it would in principle be re-derived, so
/// it stays an explicit parameter. The regime thresholds are the documented
/// defaults; overlap between windows is intentional so neighbouring
/// evaluators can be cross-checked.
struct EvaluatorOptions {
    double n_squared = 1.0 / (2.0 * std::numbers::pi);
    double oscillatory_min_area12 = 8.0;    ///< in units of hbar
    double transitional_max_zeta = 1.5;
    double evanescent_min_arg = 4.0;        ///< positive Airy argument
    double cusp_exclusion = 1e-2;           ///< fraction of the curve diameter
    /// Test fixture: scales the Airy-term constant of the uniform chord
    /// formula; anything but 1 must trip the asymptotic-matching regression.
    double broken_constant = 1.0;
    /// Replace Ai/Ai' by their oscillatory asymptotic forms inside the
    /// uniform formulas (the constant-fixing check: the result must then
    /// reproduce the stationary-phase evaluators identically).
    bool use_airy_asymptotic_forms = false;
};

/// Uniform (Airy) approximation of the chord function, the formula that stays
/// valid through the diameter caustic. Evaluated in the midpoint frame of the
/// two realizations, then carried back to the caller's origin. Falls back to
/// the transitional form where the realizations cannot be separated, and to
/// its evanescent continuation outside the caustic.
ChordValue chord_uniform(const ConvexCurve& curve, ChordVector xi,
                         const EvaluatorOptions& opts = {});

/// Two-branch stationary-phase (oscillatory) form; requires
/// area_diff >= oscillatory_min_area12 * hbar, else TooCloseToCaustic.
ChordValue chord_asymptotic(const ConvexCurve& curve, ChordVector xi,
                            const EvaluatorOptions& opts = {});

/// Near-caustic transitional form built from local quadratic data at the
/// diameter; valid on both sides of the caustic (decaying Airy tail outside).
/// Throws TooFarFromCaustic deep in the oscillatory region.
ChordValue chord_transitional(const ConvexCurve& curve, ChordVector xi,
                              const EvaluatorOptions& opts = {});

/// Regime- dispatching evaluation (what the CLI uses by default).
ChordValue chord_auto(const ConvexCurve& curve, ChordVector xi,
                      const EvaluatorOptions& opts = {});

/// Classifies a chord by area_diff/hbar and caustic distance.
Regime select_regime(const ConvexCurve& curve, ChordVector xi,
                     const EvaluatorOptions& opts = {});

/// Exact origin-shift covariance: multiplies by exp(i wedge(xi', xi)/hbar).
ChordValue origin_shift(const ChordValue& chi, ChordVector xi_prime, ChordVector xi, double hbar);

/// Semiclassical translation correlation in the oscillatory regime:
/// classical terms for the two realizations plus their interference. Equal by
/// construction to (2 pi hbar)^2 |chord_asymptotic|^2.
double correlation_semiclassical(const ConvexCurve& curve, ChordVector xi,
                                 const EvaluatorOptions& opts = {});

/// Near-caustic correlation |chi|^2 from the transitional form, scaled the
/// same way.
double correlation_caustic(const ConvexCurve& curve, ChordVector xi,
                           const EvaluatorOptions& opts = {});

/// The stationary chords of the Wigner function at centre x, labelled for the
/// uniform treatment: in the three-chord region chords[0], chords[1] are the
/// coalescing pair (jointly oriented, area0 >= area1) and chords[2] is the
/// separate one; one entry in the one-chord region.
struct WignerChordSet {
    std::vector<CentredChord> chords;
    CentreRegion region = CentreRegion::one_chord;
};
WignerChordSet wigner_chord_set(const ConvexCurve& curve, PhasePoint x,
                                const EvaluatorOptions& opts = {});

/// One oscillatory contribution (index into wigner_chord_set order). The
/// separate chord carries cos(A/hbar - pi/4) with the area measured on the
/// vanishing side; the coalescing pair members carry sin(A/hbar -+ pi/4).
/// Throws ChordNearCoalescence when the indexed chord is not isolated enough
/// for a stationary-phase value.
double wigner_branch_term(const ConvexCurve& curve, PhasePoint x, int chord_index,
                          const EvaluatorOptions& opts = {});

/// Uniform Wigner value: Airy pair for the coalescing chords plus the
/// separate-branch term in the three-chord region; the branch term alone in
/// the one-chord region; 0 outside the curve. Throws AtCusp within the cusp
/// exclusion and SymmetricDegenerate at a symmetric centre.
WignerValue wigner_uniform(const ConvexCurve& curve, PhasePoint x,
                           const EvaluatorOptions& opts = {});

/// Sum of the three stationary-phase terms; requires the three-chord region
/// with area_diff >= oscillatory_min_area12 * hbar.
WignerValue wigner_asymptotic(const ConvexCurve& curve, PhasePoint x,
                              const EvaluatorOptions& opts = {});

/// Transitional Wigner form near the fold caustic (asymmetric curves only:
/// the symmetric caustic collapses to a point and throws SymmetricDegenerate).
WignerValue wigner_transitional(const ConvexCurve& curve, PhasePoint x,
                                const EvaluatorOptions& opts = {});

}  // namespace chordfn
