#pragma once
#include <functional>

#include "vort/field.hpp"

namespace vort {

// u = grad_perp(Delta^{-1} w) on the torus: u_hat(k) = -i k_perp w_hat(k)/|k|^2,
// u_hat(0) = 0. Nyquist rows are dropped: their sign is ambiguous under
// differentiation, and 2/3 dealiasing removes them from every dynamic path.
// Rejects input whose mean exceeds 1e-12 * max|w|.
VectorField2D biot_savart_torus(const ScalarField2D& w);

// Torus: spectral differentiation. Free space: 4th-order centered differences
// (fields there are only Lipschitz at the dipole rim; spectral differentiation
// rings). Index wrap at the box edge is harmless for compactly supported data.
VectorField2D gradient_spectral(const ScalarField2D& f);

// Solves Delta(phi) = w spectrally on the torus, zero-mean solution.
ScalarField2D poisson_torus(const ScalarField2D& w);

// 2/3 rule for the quadratic term: zeroes modes with 3|m1| > nx or 3 m2 > ny.
void dealias_23(SpectralField2D& f);

// dt = safety * min(dx, dy) / max(||v||_inf, 1e-12); the caller caps by dt_max
double cfl_dt(const VectorField2D& v, double safety);

// One classical RK4 step of the dealiased pseudo-spectral transport system
//   dw/dt = -(u - drift) . grad(w),  u = grad_perp(Delta^{-1} w).
// Velocity inversion is spectral on the torus and padded-convolution in free
// space. The k = 0 tendency mode is zeroed, so the mean is preserved exactly.
ScalarField2D step_rk4(const ScalarField2D& w, Vec2 drift, double dt);

// Affine chart b -> x0 + b1 q1 + b2 q2 mapping a local box onto a physical
// parallelogram. q1, q2 need not be orthogonal, only independent.
struct ChartFrame {
  Vec2 x0, q1, q2;

  Vec2 to_phys(Vec2 b) const {
    return {x0.x + b.x * q1.x + b.y * q2.x, x0.y + b.x * q1.y + b.y * q2.y};
  }
};

// velocity sampler in physical coordinates, defined on the whole plane
using VelocitySampler = std::function<Vec2(Vec2)>;

// Catmull-Rom bicubic at chart point b (node units derived from f.dom).
// Stencils are clamped at the grid edge, so queries up to one cell outside
// the box evaluate the one-sided edge cubic. Needs at least 4 nodes per axis.
double sample_bicubic(const ScalarField2D& f, Vec2 b);

// Catmull-Rom bicubic on a periodic field: stencil indices wrap, any point
// of the plane is valid. Grid-node queries reproduce node values.
double sample_bicubic_torus(const ScalarField2D& f, Vec2 p);

// One semi-Lagrangian step of d(mu)/dt + v . grad(mu) = 0 on a chart box
// [-eta, eta)^2 whose b2 faces are inflow (mu = 0 there) and whose b1 faces
// are outflow. Feet are traced back with RK2 in chart coordinates, where the
// chart velocity is Q^{-1} v(x0 + Q b). A foot past the b2 node hull reads
// zero (the half-open grid puts its last row one spacing below the high
// face, so the inflow value binds there); the inflow rule also wins at
// corners. A foot past a b1 face only is read by one-sided extrapolation.
// Any foot component beyond eta plus one cell means the step outran the
// scheme's locality ("step-size").
ScalarField2D advect_semilagrangian(const ScalarField2D& mu, const VelocitySampler& v,
                                    const ChartFrame& frame, double dt);

}  // namespace vort
