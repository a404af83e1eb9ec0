#pragma once
#include <string>
#include <vector>

#include "vort/field.hpp"
#include "vort/util.hpp"

namespace vort {

// the alpha*cos x1 + beta*cos x2 family of torus equilibria
struct CosineState {
  double alpha = 1, beta = 1;  // both > 0
};

struct CosineEval {
  double w = 0;    // vorticity
  double phi = 0;  // stream function, u = perp-grad of phi
  Vec2 u;
};

CosineEval eval_cosine(const CosineState& s, Vec2 x);

enum class CritKind : unsigned char { saddle, unresolved };

struct SaddleReport {
  Vec2 x0;
  Mat2 hess;  // second derivatives of phi at x0, symmetric (b == c)
  double lam_plus = 0, lam_minus = 0;
  CritKind kind = CritKind::saddle;
};

// Hyperbolic critical points of a periodic stream function. Grid cells where
// both gradient components change sign seed a Newton iteration on the
// trigonometric interpolant; converged points whose Hessian eigenvalues have
// opposite signs are reported as saddles, duplicates merged. Seeded cells
// where the iteration stalls or the Hessian is singular come back flagged
// unresolved (location = cell centre) rather than being dropped. Cells whose
// gradient is below 1e-9 of the grid maximum are treated as flat and skipped,
// so ringing in the tail of a windowed field does not flood the output.
std::vector<SaddleReport> find_saddles(const ScalarField2D& phi, double tol_grad = 1e-10);

// x0_1,x0_2,h11,h12,h22,lam_plus,lam_minus
std::string saddle_csv_row(const SaddleReport& r);

// Second derivatives of the trigonometric interpolant at an arbitrary point,
// the same evaluation find_saddles converges on. Exact for band-limited data.
Mat2 trig_hessian(const ScalarField2D& phi, Vec2 x);

struct IVec2 {
  int k1 = 0, k2 = 0;
  bool operator==(const IVec2&) const = default;
};

// Two independent wave-vectors with the magnitude and argument of their
// reference coefficients; rows of K. The phases anchor later phase-offset
// measurements against the same reference spectrum.
struct ModePair {
  IVec2 a, b;
  double amp_a = 0, amp_b = 0;
  double phase_a = 0, phase_b = 0;
  IMat2 K() const { return {a.k1, a.k2, b.k1, b.k2}; }
};

// Picks two linearly independent wave-vectors among the modes with
// |what(k)| >= floor, maximizing the smaller of the two magnitudes; ties
// prefer shorter, then lexicographically smaller vectors. Coefficients are
// in integral normalization (field.hpp). floor < 0 selects the default
// 1e-8 * max |what|. Throws "degenerate-modes" when all candidates are
// collinear and "empty-spectrum" when none clear the floor.
ModePair nonzero_independent_modes(const SpectralField2D& wh, double floor = -1);

// True when no nonzero shift s of the torus satisfies k.s in 2*pi*Z for
// every mode above the floor, i.e. the field repeats on no finer lattice.
// The candidate shifts are the det(K) solutions of K s = 0 (mod 2*pi) for
// the mode pair chosen above; each is then checked against every mode.
bool check_minimal_period(const SpectralField2D& wh, double floor = -1);

}  // namespace vort
