#pragma once
#include <string>
#include <utility>

#include "vort/field.hpp"

namespace vort {

// Odd non-decreasing cutoff: the identity on [-2, 2], a C^2 raised-cosine
// taper on [2, r_g], constant past r_g. The plateau height is forced by the
// taper length, 2 + (r_g - 2)/2, so the default r_g = 3 tops out at 2.5 and
// the wide variant r_g = 4 reaches exactly 3.
struct CutoffG {
  double r_g = 3;
  double plateau() const { return 2 + 0.5 * (r_g - 2); }
  static CutoffG standard() { return {3}; }
  static CutoffG wide() { return {4}; }
};

struct GEval {
  double g = 0, gp = 0;
};

GEval eval_g(const CutoffG& c, double s);

// Tracking functional over the upper half-plane: H(p) = sum of w * g(x1 - p)
// and its p-derivative, midpoint rule on the grid rows with x2 > 0
std::pair<double, double> eval_H(const ScalarField2D& w, double p, const CutoffG& g);

struct PlaneTrackerState {
  double p = 0;
  double H = 0;     // residual left by the solve
  double dHdp = 0;  // slope at the root
  double pdot = 0;
  bool in_regime = true;  // slope at or below -lamb_mass()/4
};

// Root of H in [p_guess - 1, p_guess + 1] by Newton steps with a bisection
// safeguard. H must straddle zero decreasingly across that window; a flat
// or same-signed pair of endpoint values is the two-dipole degeneracy and
// throws regime-loss. A root whose slope sits above -lamb_mass()/4 is kept
// but flagged out of regime.
PlaneTrackerState solve_p(const ScalarField2D& w, double p_guess, const CutoffG& g);

// pdot = -dH/dt / dH/dp with dH/dt = sum over x2 > 0 of w (u1 - 1) g'(x1-p).
// u is the fixed-frame velocity of w. Throws regime-loss below the slope
// floor, where the quotient stops meaning a translation speed.
double p_dot_plane(const ScalarField2D& w, const VectorField2D& u, double p, const CutoffG& g);

// The same integral with the analytic dipole fields in place of (w, u). It
// vanishes for the exact traveling wave, so its size on a given grid is the
// quadrature floor for pdot claims on that grid.
double lamb_cancellation_defect(const DomainSpec& d, double p, const CutoffG& g);

// || w - w_L(. - p e1) ||_L2 over the whole box, dipole sampled analytically
double l2_comoving_drift(const ScalarField2D& w, double p);

// t,p,pdot,H_residual,dHdp,l2_drift_comoving,regime_flag
std::string plane_tracker_csv_row(double t, const PlaneTrackerState& st, double l2_drift);

}  // namespace vort
