#include "vort/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "vort/util.hpp"

namespace vort {
namespace {

// One set of plans + scratch buffers per grid size. fftw_execute_dft_* on
// caller buffers would need alignment guarantees, so transforms run through
// the plan's own scratch arrays and copy in/out.
struct PlanSet {
  int nx, ny;
  double* real;
  fftw_complex* cplx;
  fftw_plan fwd, inv;

  PlanSet(int nx_, int ny_) : nx(nx_), ny(ny_) {
    real = fftw_alloc_real(size_t(nx) * ny);
    cplx = fftw_alloc_complex(size_t(nx) * (ny / 2 + 1));
    fwd = fftw_plan_dft_r2c_2d(nx, ny, real, cplx, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_2d(nx, ny, cplx, real, FFTW_ESTIMATE);
  }
};

PlanSet& plans_for(int nx, int ny) {
  static std::map<std::pair<int, int>, PlanSet*> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  // Thread count is latched before the first plan is built; estimate-mode
  // threaded plans partition work statically, so results stay reproducible
  // for a fixed VORT_THREADS.
  static bool threaded = [] {
    int nt = thread_count();
    if (nt > 1 && fftw_init_threads()) fftw_plan_with_nthreads(nt);
    return nt > 1;
  }();
  (void)threaded;
  auto key = std::make_pair(nx, ny);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, new PlanSet(nx, ny)).first;
  return *it->second;
}

}  // namespace

void fft_forward_raw(int nx, int ny, const double* in, std::complex<double>* out) {
  PlanSet& p = plans_for(nx, ny);
  size_t nr = size_t(nx) * ny, nc = size_t(nx) * (ny / 2 + 1);
  for (size_t i = 0; i < nr; ++i) p.real[i] = in[i];
  fftw_execute(p.fwd);
  for (size_t i = 0; i < nc; ++i) out[i] = {p.cplx[i][0], p.cplx[i][1]};
}

void fft_inverse_raw(int nx, int ny, const std::complex<double>* in, double* out) {
  PlanSet& p = plans_for(nx, ny);
  size_t nr = size_t(nx) * ny, nc = size_t(nx) * (ny / 2 + 1);
  for (size_t i = 0; i < nc; ++i) {
    p.cplx[i][0] = in[i].real();
    p.cplx[i][1] = in[i].imag();
  }
  fftw_execute(p.inv);
  double s = 1.0 / double(nr);
  for (size_t i = 0; i < nr; ++i) out[i] = p.real[i] * s;
}

SpectralField2D fft_forward(const ScalarField2D& f) {
  SpectralField2D s(f.dom);
  fft_forward_raw(f.dom.nx, f.dom.ny, f.v.data(), s.c.data());
  return s;
}

ScalarField2D fft_inverse(const SpectralField2D& s) {
  ScalarField2D f(s.dom);
  fft_inverse_raw(s.dom.nx, s.dom.ny, s.c.data(), f.v.data());
  return f;
}

}  // namespace vort
