#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "vort/errors.hpp"
#include "vort/util.hpp"

namespace vort {

enum class DomainKind : uint8_t { torus = 0, free_space = 1 };

// Uniform node-centered grid. Torus: [-pi,pi)^2 periodic. Free space:
// [-L,L)^2, fields compactly supported away from the box edge.
struct DomainSpec {
  DomainKind kind = DomainKind::torus;
  int nx = 0, ny = 0;
  double origin_x = 0, origin_y = 0;
  double len_x = 0, len_y = 0;
  int pad_factor = 2;  // free-space Poisson padding, >= 2

  double dx() const { return len_x / nx; }
  double dy() const { return len_y / ny; }
  double x(int i) const { return origin_x + i * dx(); }
  double y(int j) const { return origin_y + j * dy(); }
  double cell_area() const { return dx() * dy(); }
  bool same_grid(const DomainSpec& o) const {
    return kind == o.kind && nx == o.nx && ny == o.ny && origin_x == o.origin_x &&
           origin_y == o.origin_y && len_x == o.len_x && len_y == o.len_y;
  }

  static DomainSpec torus(int nx, int ny) {
    if (nx < 16 || ny < 16 || nx % 2 || ny % 2)
      throw config_error("torus grid must be even and at least 16x16");
    return {DomainKind::torus, nx, ny, -M_PI, -M_PI, 2 * M_PI, 2 * M_PI};
  }
  static DomainSpec free_box(int n, double L, int pad = 2) {
    if (n < 16 || n % 2) throw config_error("free-space grid must be even and at least 16");
    if (L < 4.0) throw config_error("free-space half-width L must be >= 4");
    if (pad < 2) throw config_error("free-space pad factor must be >= 2");
    return {DomainKind::free_space, n, n, -L, -L, 2 * L, 2 * L, pad};
  }
};

// row-major, index (i,j) -> i*ny + j, i along x
struct ScalarField2D {
  DomainSpec dom;
  std::vector<double> v;

  ScalarField2D() = default;
  explicit ScalarField2D(const DomainSpec& d) : dom(d), v(size_t(d.nx) * d.ny, 0.0) {}

  double& at(int i, int j) { return v[size_t(i) * dom.ny + j]; }
  double at(int i, int j) const { return v[size_t(i) * dom.ny + j]; }

  double max_abs() const {
    double m = 0;
    for (double a : v) m = std::max(m, std::abs(a));
    return m;
  }
  double mean() const {
    double s = 0;
    for (double a : v) s += a;
    return s / double(v.size());
  }
  double l2() const {  // continuum L2 norm via nodal quadrature
    double s = 0;
    for (double a : v) s += a * a;
    return std::sqrt(s * dom.cell_area());
  }
  double integral() const {
    double s = 0;
    for (double a : v) s += a;
    return s * dom.cell_area();
  }
};

struct VectorField2D {
  DomainSpec dom;
  std::vector<double> ux, uy;

  VectorField2D() = default;
  explicit VectorField2D(const DomainSpec& d)
      : dom(d), ux(size_t(d.nx) * d.ny, 0.0), uy(size_t(d.nx) * d.ny, 0.0) {}

  Vec2 at(int i, int j) const {
    size_t k = size_t(i) * dom.ny + j;
    return {ux[k], uy[k]};
  }
  double max_norm() const {
    double m = 0;
    for (size_t k = 0; k < ux.size(); ++k) m = std::max(m, std::hypot(ux[k], uy[k]));
    return m;
  }
};

// Half-complex spectrum of a real torus field (FFTW r2c layout, raw
// unnormalized coefficients). Continuous Fourier coefficients
//   what(k) = int_{T^2} e^{-i k.x} w(x) dx
// relate to the raw ones by what = dx*dy*(-1)^{k1+k2}*raw for origin (-pi,-pi);
// the sign is e^{-i k.origin}.
struct SpectralField2D {
  DomainSpec dom;
  std::vector<std::complex<double>> c;  // nx * (ny/2+1)

  SpectralField2D() = default;
  explicit SpectralField2D(const DomainSpec& d) : dom(d), c(size_t(d.nx) * (d.ny / 2 + 1)) {}

  int nk2() const { return dom.ny / 2 + 1; }
  std::complex<double>& raw(int i, int j2) { return c[size_t(i) * nk2() + j2]; }
  std::complex<double> raw(int i, int j2) const { return c[size_t(i) * nk2() + j2]; }

  // wavenumber of row index i
  int k1_of(int i) const { return i <= dom.nx / 2 ? i : i - dom.nx; }

  // continuous coefficient for arbitrary integer wavevector within the band
  std::complex<double> coeff(int k1, int k2) const {
    double scale = dom.cell_area() * (((k1 + k2) % 2 == 0) ? 1.0 : -1.0);
    auto lookup = [&](int a, int b) {
      int i = a >= 0 ? a : a + dom.nx;
      return raw(i, b);
    };
    std::complex<double> r;
    if (k2 > 0 || (k2 == 0 && k1 >= 0))
      r = lookup(k1, k2);
    else
      r = std::conj(lookup(-k1, -k2));
    return scale * r;
  }
};

}  // namespace vort
