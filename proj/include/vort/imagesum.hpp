#pragma once
#include "vort/field.hpp"

namespace vort {

// Validation oracle, not a production path: torus velocity at one point,
// evaluated as a truncated sum over periodic images of the plane kernel
//   (1/2pi) sum_{|m| <= m_max} int (x - y + 2pi m)_perp / |x - y + 2pi m|^2 w(y) dy,
// where images with |m| >= 2 get the constant (2pi m)_perp/|2pi m|^2
// subtracted; against mean-zero data that makes the tail O(1/|m|^2) and the
// truncated sum converge to the spectral inversion. Images are truncated to
// the Euclidean disc |m| <= m_max. Quadrature is nodal; the zero-displacement
// cell contributes 0 (odd kernel). Accuracy statements assume x on a grid
// node, where displacement symmetry cancels the leading quadrature error.
Vec2 biot_savart_image_sum(const ScalarField2D& w, Vec2 x, int m_max);

}  // namespace vort
