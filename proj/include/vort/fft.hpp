#pragma once
#include "vort/field.hpp"

namespace vort {

// Forward/inverse real 2D transforms with cached FFTW plans (FFTW_ESTIMATE
// only: plan choice must not depend on runtime timing, reruns have to be
// bit-identical). Inverse is normalized (ifft(fft(f)) == f up to roundoff).
SpectralField2D fft_forward(const ScalarField2D& f);
ScalarField2D fft_inverse(const SpectralField2D& s);

// raw-size transforms used by the padded free-space convolution; layout as in
// SpectralField2D but without domain semantics
void fft_forward_raw(int nx, int ny, const double* in, std::complex<double>* out);
void fft_inverse_raw(int nx, int ny, const std::complex<double>* in, double* out);

}  // namespace vort
