#pragma once
#include "vort/util.hpp"

namespace vort {

// Dipole constants. c_L is the first positive zero of J1; the dipole radius
// is 1 and the translation speed is 1.
struct LambConstants {
  double c_L;    // 3.8317059702075123...
  double J0_cL;  // J0 at c_L, in (-0.41, -0.40)
};

LambConstants lamb_constants();

// Upper-half-plane mass of the dipole, int_{x2>0} w_L dx. No closed form is
// used: composite 2x2 Gauss-Legendre over the polar rectangle where the
// integrand is smooth, computed at two resolutions with a self-convergence
// check.
double lamb_mass();

// w_L(x) = -(2 c_L / J0(c_L)) J1(c_L r) sin(theta) inside r<=1, 0 outside.
double lamb_vorticity(Vec2 x);

// Co-moving stream function, closed form:
//   r < 1 : -2 J1(c_L r) / (c_L J0(c_L)) sin(theta)
//   r >= 1: (1/r - r) sin(theta)
// C^1 across r = 1. Note the sign convention: this function satisfies
// Delta(psi) = -w_L; the velocity field induced by w_L through the
// divergence-free inversion is e1 - grad_perp(psi) (see lamb_velocity_fixed).
double lamb_stream_comoving(Vec2 x);

// grad-perp of lamb_stream_comoving, analytic branches. Tangent to r=1,
// value (1/J0(c_L), 0) at the origin, saddle points at (±1, 0).
Vec2 lamb_velocity_comoving(Vec2 x);

// Fixed-frame velocity of the dipole consistent with Biot-Savart of
// lamb_vorticity: u = e1 - lamb_velocity_comoving. At the origin this is
// (1 - 1/J0(c_L), 0) ~ (+3.4829, 0), the forward jet between the lobes.
Vec2 lamb_velocity_fixed(Vec2 x);

// Hessian of lamb_stream_comoving at the saddle (which=-1 -> (-1,0),
// which=+1 -> (+1,0)): [[0, ∓2], [∓2, 0]] for which = ±1.
Mat2 lamb_saddle_hessian(int which);

// Flux audit of an axis-aligned square of half-width eta centered at a saddle
// of the co-moving stream. Sides are sampled densely; the pair with positive
// outward normal flux is labeled outward and c0 is its minimum.
struct FluxSquare {
  double eta;
  double c0_measured;        // min outward flux over the outward side pair
  double max_inward;         // max (least negative) flux over the inward pair
  bool horizontal_outward;   // true if the x2 = ±eta pair carries the outflow
};

FluxSquare flux_square(int which, double eta, int samples_per_side = 512);

}  // namespace vort
