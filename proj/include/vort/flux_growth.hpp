#pragma once
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vort/field.hpp"
#include "vort/spectral.hpp"
#include "vort/util.hpp"

namespace vort {

// Hyperbolic probe: an open parallelogram D = {x0 + b1 q1 + b2 q2, |bi| < eta}
// around a stream-function saddle, with q1 the expanding unit eigenvector of
// the velocity linearization and q2 the contracting one. Sides are numbered
// clockwise; Gamma_1 and Gamma_3 are the q2-parallel pair at b1 = +eta and
// b1 = -eta, where the linearized flow leaves the box, Gamma_2 and Gamma_4
// sit at b2 = -eta and b2 = +eta, where it enters. c0 is the guaranteed
// outward-flux floor: half the linearization's side value, so the real field
// keeps a positive margin for perturbations up to the same size.
struct SaddleProbe {
  Vec2 x0;
  Vec2 q1, q2;
  double lam1 = 0;   // > 0, rate along q1
  double lam2 = 0;   // < 0, rate along q2
  double theta = 0;  // angle between q1 and q2, in (0, pi)
  double eta = 0;
  double c0 = 0;  // eta sin(theta) min(lam1, |lam2|) / 2

  ChartFrame frame() const { return {x0, q1, q2}; }
};

// Probe from the stream-function Hessian at x0: the linearization of
// grad-perp(phi) is [[-p12, -p22], [p11, p12]], trace-free, so a negative
// Hessian determinant gives a plus-minus eigenvalue pair ("no-saddle" when
// the determinant is not strictly negative). Eigenvectors are normalized
// with their first nonzero component positive.
SaddleProbe build_probe(const Mat2& hess_phi, Vec2 x0, double eta);

// Same, with the Hessian taken from the trigonometric interpolant of a
// periodic stream function at x0.
SaddleProbe build_probe(const ScalarField2D& phi, Vec2 x0, double eta);

// Point on side 1..4 at arclength fraction s in (0, 1), physical coordinates.
Vec2 probe_side_point(const SaddleProbe& pr, int side, double s);

// Outward unit normal of side 1..4.
Vec2 probe_side_normal(const SaddleProbe& pr, int side);

// Extrema of v . n_outward over n_samples uniform interior points of the
// side; the vertices are excluded. Needs n_samples >= 100.
std::pair<double, double> measure_flux(const VelocitySampler& v, const SaddleProbe& pr, int side,
                                       int n_samples);

// Outward flux at least c0/2 on the Gamma_1/Gamma_3 pair and inward flux at
// most -c0/2 on Gamma_2/Gamma_4, sampled as in measure_flux.
bool check_condition1(const VelocitySampler& v, const SaddleProbe& pr, int n_samples);

// C2 bump supported on (K, K+1) with f(K + 1/3) = 1, f(K + 2/3) = 2,
// 0 <= f <= 3 and |f'| < 10: piecewise quintics through value/slope/curvature
// knots (K,0,0,0), (K+1/3,1,4.5,0), (K+2/3,2,-7,0), (K+1,0,0,0). The slopes
// keep the dense-scan maximum of |f'| at 8.92.
double cutoff_f(double s, double K);

// Chart grid over the probe parallelogram, n nodes per axis (n >= 8). The
// grid is half-open like every domain, so the high faces carry no node row.
DomainSpec probe_chart_domain(const SaddleProbe& pr, int n);

// Level-set tracer mu = f(rho) transported by the flow through the probe.
// mass is the physical integral over D (chart sum times sin theta), band the
// measure of {1 <= mu <= 2} along Gamma_1. cond1_ok is maintained by the run
// loop's periodic check_condition1 audits, not by evolve_tracer itself.
struct TracerState {
  SaddleProbe probe;
  ScalarField2D mu;
  double K = 0;
  double time = 0;
  double mass = 0;
  double band = 0;
  bool cond1_ok = true;
};

TracerState make_tracer(const SaddleProbe& pr, int n, const std::function<double(Vec2)>& rho0,
                        double K);

// One semi-Lagrangian step with inflow value 0, then clamp mu to [0, 3]
// (interpolation overshoot limiter) and remeasure mass and band.
void evolve_tracer(TracerState& st, const VelocitySampler& v, double dt);

struct GrowthSample {
  double t = 0;
  double grad_max = 0;
  bool resolved = true;
};

// Gradient-growth diagnostics: the running trapezoidal integral of
// 1/grad_max and the sup of grad_max / (t log t) over samples with t > e.
struct GrowthSeries {
  std::vector<GrowthSample> samples;
  double inv_integral = 0;
  double tlogt_sup = 0;
};

// Appends a sample; t must increase strictly ("time-order") and grad_max
// must be positive and finite.
void grad_growth_metrics(GrowthSeries& gs, double t, double grad_max, bool resolved);

// t,grad_max,resolved,inv_integral,tlogt_ratio,flux_min_G1,flux_min_G3,
// flux_max_G2,flux_max_G4,tracer_mass,band_width; tlogt_ratio is the current
// sample's ratio (0 for t <= e). Needs a non-empty series.
std::string growth_csv_row(const GrowthSeries& gs, double flux_min_g1, double flux_min_g3,
                           double flux_max_g2, double flux_max_g4, double tracer_mass,
                           double band_width);

}  // namespace vort
