#pragma once

namespace vort {

// Bessel functions of the first kind, orders 0 and 1, in-house so results are
// bit-reproducible across libm versions. Ascending series (long-double
// accumulation) for |x| <= 12; 64-node trapezoid of the cosine integral
// representation beyond, which is spectrally accurate for the entire
// integrand. Absolute error <= 1e-13 on [0, 30].
double bessel_j(int n, double x);

}  // namespace vort
