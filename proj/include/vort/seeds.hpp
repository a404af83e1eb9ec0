#pragma once
#include <string>
#include <vector>

#include "vort/field.hpp"
#include "vort/flux_growth.hpp"

namespace vort {

// Convolution with a compactly supported C-infinity bump of radius `scale`
// (exp(-1/(1-s^2)) profile, discretely normalized to unit mass, so constants
// and means are preserved to roundoff). Periodic in both directions; on a
// free-space box the wrap-around contributes exactly zero as long as the data
// support stays `scale` away from the box edge. Radius under two grid cells
// is rejected: the sampled kernel degenerates toward a single-node delta.
ScalarField2D mollify(const ScalarField2D& f, double scale);

// Area of the cells whose value exceeds rel_floor * max|f|. Zero field has
// zero support.
double support_area(const ScalarField2D& f, double rel_floor = 1e-14);

// ||x2 f||_L1 + ||f||_L2 by nodal quadrature, the weighted norm the
// free-space stability class is measured in.
double x_norm(const ScalarField2D& f);

// Perturbation of the cosine equilibrium alpha*cos x1 + beta*cos x2 by a
// pair of opposite-sign ridge bumps laid along the chart directions of a
// saddle probe. The ridges sit at b2 = +-eta/2 and span |b1| <= 2*eta, so
// each one crosses the probe parallelogram with both endpoints outside it.
struct TorusSeedSpec {
  double alpha = 1, beta = 1;
  double eps_target = 0.5;  // L2 budget for the distance to the equilibrium
  double margin = 0.1;      // how far above 2 the ridge values must land
  double r_t = 0.02;        // transverse decay length of the ridges
  double amp_override = -1; // >= 0 forces the ridge amplitude (0 = no bumps)
};

struct TorusSeed {
  ScalarField2D w;
  double amp = 0;       // ridge amplitude actually used
  double l2_dist = 0;   // measured ||w - w*||_L2
  double seg_min = 0;   // min of w sampled along the positive ridge line
  double seg_max = 0;   // max of w sampled along the negative ridge line
  bool segments_resolved = false;  // grid resolves the transverse profile
};

// Builds the seed on the given torus grid. The amplitude is solved so the
// field stays above 2 + margin on the positive ridge (below the mirrored
// bound on the negative one); the bump pair shares one amplitude, so the
// means cancel and a final constant shift of roundoff size restores exact
// mean zero. Throws "seed-radius" when the ridges would overlap (r_t >=
// eta/3), "seed-cap" when the amplitude would push the field past
// max|w*| + 3, "seed-budget" when the measured L2 distance reaches
// eps_target (the message carries the achievable distance), and
// "seed-segment" if the solved amplitude still leaves a sampled ridge value
// inside [-2, 2] on a grid that resolves the profile. Grids too coarse for
// the transverse profile (r_t under two cells) skip that last check and
// report segments_resolved = false instead.
TorusSeed build_torus_seed(const TorusSeedSpec& spec, const SaddleProbe& probe,
                           const DomainSpec& dom);

// Perturbation of the Lamb dipole: mollified vorticity with two segments
// pinned to exactly +-2 by a partition-of-unity blend, odd in x2 by
// construction. The positive segment is {-3/2 <= x1 <= -1/2, x2 = eta/2}.
struct PlaneSeedSpec {
  double eps_target = 0.5;  // budget for ||w - w_L|| in the x_norm metric
  double moll_scale = 0.012;
  double eta = 0.08;         // saddle-square scale; segment offset is eta/2
  double pin_half = 0.0105;  // half-width of the exactly-pinned plateau
  double skirt = 0.014;      // decay length of the blend weight
};

struct PlaneSeed {
  ScalarField2D w;
  double x_dist = 0;    // measured distance to the sampled dipole
  double support = 0;   // measured support area
  double pin_lo = 0, pin_hi = 0;  // extremes sampled along the pinned segment
  bool pins_resolved = false;
};

// Builds the seed on the given free-space grid. Throws "seed-budget",
// "seed-support" (support area past 4), "seed-cap" (past max|w_L| + 2),
// "seed-negative" (negative mass above 1e-10 left on the upper half after
// the blend; smaller residue is clamped to zero), and "seed-pin" if a grid
// that resolves the plateau fails to hold the segment at exactly 2.
PlaneSeed build_plane_seed(const PlaneSeedSpec& spec, const DomainSpec& dom);

// One admissibility condition: measured value against its limit.
struct AdmitCheck {
  std::string name;
  double measured = 0;
  double limit = 0;
  bool ok = false;
};

struct AdmitVerdict {
  bool pass = false;
  std::vector<AdmitCheck> checks;
};

// Hypothesis thresholds for candidate initial data near a built seed. The
// sup-distance cap of 1 and the support budget of 5 are the admissibility
// constants of the stability statements; the floors are numerical slack for
// exact-zero conditions.
struct AdmitTolerances {
  double linf_dist = 1.0;
  double x_dist = 0.25;
  double support_budget = 5.0;
  double mean_floor = 1e-10;
  double odd_floor = 1e-10;
  double neg_mass_floor = 1e-10;
};

// Checks every hypothesis for the candidate against the seed on the seed's
// own domain kind: torus candidates must stay within linf_dist of the seed
// and keep mean zero; free-space candidates must stay within linf_dist and
// x_dist, keep their support inside the budget, be odd in x2, and carry no
// negative mass on the upper half plane. Never throws; a grid mismatch comes
// back as a failed check.
AdmitVerdict admit_initial_data(const ScalarField2D& candidate, const ScalarField2D& seed,
                                const AdmitTolerances& tol = {});

// "check,measured,limit,ok" header plus one row per condition.
std::string admit_csv(const AdmitVerdict& v);

}  // namespace vort
