#pragma once

#include <cmath>

#include "chordfn/phase_space.hpp"

namespace chordfn {

/// Harmonic-oscillator eigenstate: the quantized classical curve is the
/// circle p^2 + q^2 = 2 hbar (n + 1/2). Everything here is closed-form, which
/// makes this module the primary ground truth for the general machinery.
struct FockState {
    int n = 0;
    double hbar = 1.0;
    double action() const { return hbar * (n + 0.5); }
    double radius() const { return std::sqrt(2.0 * action()); }
    double diameter() const { return 2.0 * radius(); }
};

/// Exact chord function, exp(-xi^2/4hbar) L_n(xi^2/2hbar) / (2 pi hbar).
/// Real and radially symmetric.
double fock_chord_exact(const FockState& s, ChordVector xi);

/// Small-chord Bessel approximation J0(sqrt(2I)|xi|/hbar) / (2 pi hbar).
double fock_chord_small(const FockState& s, ChordVector xi);

/// Large-argument cosine form of the Bessel approximation.
double fock_chord_small_asymptotic(const FockState& s, ChordVector xi);

/// Lens area between the circle and its translation by xi (the phase of the
/// oscillatory regime). Throws BeyondDiameter for |xi| > diameter.
double fock_area(const FockState& s, ChordVector xi);

/// |{I+, I-}| = |xi| sqrt(2I - xi^2/4). Throws BeyondDiameter.
double fock_bracket(const FockState& s, ChordVector xi);

/// Long-chord uniform (Airy) approximation of the chord function. The
/// derivative-of-Airy term cancels by symmetry; the prefactor is finite up to
/// and including the diameter (the vanishing area power cancels the
/// diverging bracket power, handled explicitly near the caustic).
/// n_squared is the squared normalization constant, 1/(2 pi) by default.
double fock_chord_uniform(const FockState& s, ChordVector xi,
                          double n_squared = 1.0 / (2.0 * std::numbers::pi));

/// Oscillatory extrapolation of the uniform form (its Airy asymptotics).
double fock_chord_uniform_asymptotic(const FockState& s, ChordVector xi,
                                     double n_squared = 1.0 / (2.0 * std::numbers::pi));

/// Translation correlation C(xi) = (2 pi hbar)^2 |chi(xi)|^2, in [0, 1].
double fock_correlation(const FockState& s, ChordVector xi);

/// 2 pi hbar * integral of |chi|^2 over the chord plane, by adaptive radial
/// quadrature; equals C(0) = 1 for any pure state. Throws
/// QuadratureNotConverged if the refinement stalls.
double purity_check(const FockState& s);

}  // namespace chordfn
