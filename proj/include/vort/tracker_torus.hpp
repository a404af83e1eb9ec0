#pragma once
#include <complex>
#include <string>
#include <vector>

#include "vort/field.hpp"
#include "vort/steady.hpp"
#include "vort/util.hpp"

namespace vort {

// all torus shifts s in [0,2*pi)^2 with K s = 0 (mod 2*pi); always n == |det K|
struct LatticeSet {
  std::vector<Vec2> s;  // (0,0) first, then ascending (s1, s2)
  int n = 0;
};

LatticeSet lattice_solutions(const IMat2& K);

// Phase-tracking state for the translation vector of an orbit near a shifted
// steady state. Sequential: updates must be applied in time order by one
// owner; copies are cheap snapshots.
struct TorusTrackerState {
  ModePair modes;
  Vec2 p;       // representative in [-pi, pi)^2
  Vec2 p_lift;  // continuous lift, K * p_lift == b_lift
  Vec2 b;       // last measured phase offsets, components in [-pi, pi)
  Vec2 b_lift;  // continuous lift of b
  Vec2 pdot;    // last spectral velocity estimate
  bool init_tie = false;  // two starting branches were L2-indistinguishable
};

// Phase offsets b = (arg what_ref(k^j) - arg what(k^j))_j wrapped to
// [-pi, pi). The coefficients may not fall below half their reference
// amplitudes (tracker-degeneracy otherwise); beyond that point the argument
// no longer measures a translation.
Vec2 build_b(std::complex<double> w1, std::complex<double> w2, const ModePair& modes);

// Starting branch: among the |det K| candidates p = K^-1 b(0) + s the one
// closest to w0 in L2 after shifting the reference field. An exact tie
// (within 1e-12 of the same error) keeps the first candidate in lattice
// order and sets init_tie.
TorusTrackerState init_p(const ScalarField2D& w0, const ScalarField2D& wstar,
                         const ModePair& modes);

// Advances the state to the phase measurement b_new, unwrapping each
// component to the representative nearest the previous lift. A wrapped
// increment of magnitude pi is ambiguous and throws tracker-aliasing (the
// time step outran the phases).
void update_p(TorusTrackerState& st, Vec2 b_new);

// d/dt of the integral-normalized coefficient at k: -i k . (transform of
// u w)(k), products formed pointwise and dealiased. Pass u consistent with w
// (same grid, Biot-Savart of w for the Euler right side).
std::complex<double> mode_rhs(const ScalarField2D& w, const VectorField2D& u, IVec2 k);

// pdot = -K^-1 (Im(rhs_j / what_j))_j, stored in the state. Same amplitude
// floor as build_b.
Vec2 p_dot(TorusTrackerState& st, std::complex<double> w1, std::complex<double> w2,
           std::complex<double> rhs1, std::complex<double> rhs2);

// || w - wref(. - p) ||_L2 from the two spectra (Parseval, same grid)
double l2_shift_distance(const SpectralField2D& wh, const SpectralField2D& wrefh, Vec2 p);

// t,p1,p2,p1_lift,p2_lift,pdot1,pdot2,amp_k1,amp_k2,l2_drift
std::string tracker_csv_row(double t, const TorusTrackerState& st, double amp1, double amp2,
                            double l2_drift);

}  // namespace vort
