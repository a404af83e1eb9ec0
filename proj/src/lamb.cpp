#include "vort/lamb.hpp"

#include <cmath>
#include <vector>

#include "vort/bessel.hpp"
#include "vort/errors.hpp"

namespace vort {

LambConstants lamb_constants() {
  static LambConstants k = [] {
    // first positive zero of J1: Newton with a bisection safeguard on a
    // bracket that contains exactly one sign change
    double lo = 3.5, hi = 4.2;
    double flo = bessel_j(1, lo);
    double x = 3.8;
    for (int it = 0; it < 200; ++it) {
      double f = bessel_j(1, x);
      if (std::abs(f) < 1e-15) break;
      if ((f > 0) == (flo > 0))
        lo = x;
      else
        hi = x;
      double fp = bessel_j(0, x) - f / x;  // J1' = J0 - J1/x
      double xn = x - f / fp;
      if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
      if (std::abs(xn - x) < 1e-16 * x) {
        x = xn;
        break;
      }
      x = xn;
    }
    return LambConstants{x, bessel_j(0, x)};
  }();
  return k;
}

namespace {

double mass_quadrature(int n) {
  // int over (r, theta) in [0,1] x [0,pi] of A J1(c r) sin(theta) r,
  // composite 2-point Gauss-Legendre per cell in each direction
  LambConstants lc = lamb_constants();
  double A = -2.0 * lc.c_L / lc.J0_cL;
  double hr = 1.0 / n, ht = M_PI / n;
  double g = 0.5 / std::sqrt(3.0);
  std::vector<double> rnode(2 * n), rfac(2 * n), tfac(2 * n);
  for (int i = 0; i < n; ++i) {
    double c = (i + 0.5) * hr;
    rnode[2 * i] = c - g * hr;
    rnode[2 * i + 1] = c + g * hr;
  }
  for (int i = 0; i < 2 * n; ++i) rfac[i] = bessel_j(1, lc.c_L * rnode[i]) * rnode[i];
  for (int j = 0; j < n; ++j) {
    double c = (j + 0.5) * ht;
    tfac[2 * j] = std::sin(c - g * ht);
    tfac[2 * j + 1] = std::sin(c + g * ht);
  }
  // integrand separates, so the double sum collapses to a product of sums
  double rsum = 0, tsum = 0;
  for (int i = 0; i < 2 * n; ++i) rsum += rfac[i];
  for (int j = 0; j < 2 * n; ++j) tsum += tfac[j];
  return A * rsum * tsum * (hr / 2) * (ht / 2);
}

}  // namespace

double lamb_mass() {
  static double m = [] {
    double coarse = mass_quadrature(1024);
    double fine = mass_quadrature(2048);
    if (std::abs(fine - coarse) > 1e-8 * std::abs(fine))
      throw numerical_error("quadrature", "half-plane dipole mass did not self-converge");
    return fine;
  }();
  return m;
}

double lamb_vorticity(Vec2 x) {
  double r = x.norm();
  if (r >= 1.0 || r == 0.0) return 0.0;
  LambConstants lc = lamb_constants();
  double A = -2.0 * lc.c_L / lc.J0_cL;
  return A * bessel_j(1, lc.c_L * r) * (x.y / r);
}

double lamb_stream_comoving(Vec2 x) {
  double r = x.norm();
  if (r >= 1.0) return x.y * (1.0 / (r * r) - 1.0);
  LambConstants lc = lamb_constants();
  double B = -2.0 / (lc.c_L * lc.J0_cL);
  if (r < 1e-12) return B * (lc.c_L / 2.0) * x.y;  // J1(s)/s -> 1/2
  return B * bessel_j(1, lc.c_L * r) * (x.y / r);
}

Vec2 lamb_velocity_comoving(Vec2 x) {
  // psi = f(r) sin(theta); u = (-d2 psi, d1 psi)
  //   d1 psi = sin cos (f' - f/r),  d2 psi = f' sin^2 + (f/r) cos^2
  LambConstants lc = lamb_constants();
  double r = x.norm();
  double B = -2.0 / (lc.c_L * lc.J0_cL);
  if (r < 1e-12) return {-B * lc.c_L / 2.0, 0.0};
  double s = x.y / r, c = x.x / r;
  double fp, fr;  // f'(r) and f(r)/r
  if (r < 1.0) {
    double j1 = bessel_j(1, lc.c_L * r);
    double j0 = bessel_j(0, lc.c_L * r);
    fp = B * lc.c_L * (j0 - j1 / (lc.c_L * r));
    fr = B * j1 / r;
  } else {
    fp = -1.0 / (r * r) - 1.0;
    fr = 1.0 / (r * r) - 1.0;
  }
  return {-(fp * s * s + fr * c * c), s * c * (fp - fr)};
}

Vec2 lamb_velocity_fixed(Vec2 x) {
  Vec2 cm = lamb_velocity_comoving(x);
  return {1.0 - cm.x, -cm.y};
}

Mat2 lamb_saddle_hessian(int which) {
  if (which == -1) return {0, 2, 2, 0};
  if (which == 1) return {0, -2, -2, 0};
  throw config_error("saddle selector must be -1 or +1");
}

FluxSquare flux_square(int which, double eta, int samples_per_side) {
  Vec2 c{double(which), 0.0};
  auto side_min = [&](Vec2 base, Vec2 along, Vec2 n) {
    double mn = 1e300;
    for (int k = 0; k < samples_per_side; ++k) {
      double t = -eta + (k + 0.5) * (2 * eta / samples_per_side);
      Vec2 p = base + along * t;
      mn = std::min(mn, n.dot(lamb_velocity_comoving(p)));
    }
    return mn;
  };
  auto side_max = [&](Vec2 base, Vec2 along, Vec2 n) {
    double mx = -1e300;
    for (int k = 0; k < samples_per_side; ++k) {
      double t = -eta + (k + 0.5) * (2 * eta / samples_per_side);
      Vec2 p = base + along * t;
      mx = std::max(mx, n.dot(lamb_velocity_comoving(p)));
    }
    return mx;
  };
  // vertical pair x1 = c.x ± eta (normal ±e1), horizontal pair x2 = ±eta
  double vmin = std::min(side_min({c.x + eta, 0}, {0, 1}, {1, 0}),
                         side_min({c.x - eta, 0}, {0, 1}, {-1, 0}));
  double hmin = std::min(side_min({c.x, eta}, {1, 0}, {0, 1}),
                         side_min({c.x, -eta}, {1, 0}, {0, -1}));
  FluxSquare out;
  out.eta = eta;
  out.horizontal_outward = hmin > vmin;
  if (out.horizontal_outward) {
    out.c0_measured = hmin;
    out.max_inward = std::max(side_max({c.x + eta, 0}, {0, 1}, {1, 0}),
                              side_max({c.x - eta, 0}, {0, 1}, {-1, 0}));
  } else {
    out.c0_measured = vmin;
    out.max_inward = std::max(side_max({c.x, eta}, {1, 0}, {0, 1}),
                              side_max({c.x, -eta}, {1, 0}, {0, -1}));
  }
  return out;
}

}  // namespace vort
