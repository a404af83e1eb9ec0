#pragma once
#include "vort/field.hpp"

namespace vort {

// Free-space fields must vanish near the box edge: transport arguments need
// genuinely compact support, so running into the boundary is a hard stop,
// never a periodic wrap. Checks a `margin`-cell frame against
// rel_threshold * max|w|.
void require_compact_support(const ScalarField2D& w, int margin = 1,
                             double rel_threshold = 1e-12);

// Free-space Biot-Savart by zero-padded FFT convolution (pad factor from the
// domain) directly with the velocity kernel K(z) = z_perp / (2 pi |z|^2),
// K(0) := 0, which is the exact cell average of the odd kernel over the
// origin cell. Far-field decay ~ circulation/|x| within the box.
VectorField2D biot_savart_free(const ScalarField2D& w);

}  // namespace vort
