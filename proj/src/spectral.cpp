#include "vort/spectral.hpp"

#include <atomic>
#include <cmath>
#include <complex>

#include "vort/errors.hpp"
#include "vort/fft.hpp"
#include "vort/freespace.hpp"

namespace vort {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

void check_mean_zero(const ScalarField2D& w) {
  if (std::abs(w.mean()) > 1e-12 * w.max_abs())
    throw invariant_error("mean-zero", "torus vorticity must be mean-zero");
}

// u = grad_perp(phi) with phi_hat = -w_hat/|k|^2, so u_hat = -i k_perp w_hat/|k|^2
// (k = 2 pi m / len; Nyquist rows zeroed)
void invert_velocity(const SpectralField2D& wh, SpectralField2D& u1h, SpectralField2D& u2h) {
  const DomainSpec& d = wh.dom;
  double sx = 2 * M_PI / d.len_x, sy = 2 * M_PI / d.len_y;
  for (int i = 0; i < d.nx; ++i) {
    int m1 = wh.k1_of(i);
    for (int j2 = 0; j2 < wh.nk2(); ++j2) {
      int m2 = j2;
      if ((m1 == 0 && m2 == 0) || std::abs(m1) == d.nx / 2 || m2 == d.ny / 2) {
        u1h.raw(i, j2) = 0;
        u2h.raw(i, j2) = 0;
        continue;
      }
      double k1 = sx * m1, k2 = sy * m2;
      std::complex<double> f = I * wh.raw(i, j2) / (k1 * k1 + k2 * k2);
      u1h.raw(i, j2) = k2 * f;
      u2h.raw(i, j2) = -k1 * f;
    }
  }
}

// spectral gradient of wh written into gx, gy (Nyquist zeroed)
void spectral_grad(const SpectralField2D& wh, SpectralField2D& gx, SpectralField2D& gy) {
  const DomainSpec& d = wh.dom;
  double sx = 2 * M_PI / d.len_x, sy = 2 * M_PI / d.len_y;
  for (int i = 0; i < d.nx; ++i) {
    int m1 = wh.k1_of(i);
    for (int j2 = 0; j2 < wh.nk2(); ++j2) {
      int m2 = j2;
      if (std::abs(m1) == d.nx / 2 || m2 == d.ny / 2) {
        gx.raw(i, j2) = 0;
        gy.raw(i, j2) = 0;
        continue;
      }
      std::complex<double> f = I * wh.raw(i, j2);
      gx.raw(i, j2) = sx * m1 * f;
      gy.raw(i, j2) = sy * m2 * f;
    }
  }
}

// -(u - drift) . grad(w) in spectral space, dealiased, zero-mean
SpectralField2D tendency(const SpectralField2D& wh, Vec2 drift) {
  const DomainSpec& d = wh.dom;
  SpectralField2D wd = wh;
  dealias_23(wd);

  SpectralField2D gx(d), gy(d);
  spectral_grad(wd, gx, gy);
  ScalarField2D wx = fft_inverse(gx);
  ScalarField2D wy = fft_inverse(gy);

  ScalarField2D u1, u2;
  if (d.kind == DomainKind::torus) {
    SpectralField2D u1h(d), u2h(d);
    invert_velocity(wd, u1h, u2h);
    u1 = fft_inverse(u1h);
    u2 = fft_inverse(u2h);
  } else {
    VectorField2D u = biot_savart_free(fft_inverse(wd));
    u1 = ScalarField2D(d);
    u2 = ScalarField2D(d);
    u1.v = std::move(u.ux);
    u2.v = std::move(u.uy);
  }

  ScalarField2D adv(d);
  for (size_t k = 0; k < adv.v.size(); ++k)
    adv.v[k] = -((u1.v[k] - drift.x) * wx.v[k] + (u2.v[k] - drift.y) * wy.v[k]);

  SpectralField2D th = fft_forward(adv);
  dealias_23(th);
  th.raw(0, 0) = 0;  // exact mean preservation
  return th;
}

}  // namespace

VectorField2D biot_savart_torus(const ScalarField2D& w) {
  if (w.dom.kind != DomainKind::torus)
    throw config_error("spectral Biot-Savart requires a torus field");
  check_mean_zero(w);
  SpectralField2D wh = fft_forward(w);
  SpectralField2D u1h(w.dom), u2h(w.dom);
  invert_velocity(wh, u1h, u2h);
  VectorField2D u(w.dom);
  u.ux = fft_inverse(u1h).v;
  u.uy = fft_inverse(u2h).v;
  return u;
}

VectorField2D gradient_spectral(const ScalarField2D& f) {
  VectorField2D g(f.dom);
  if (f.dom.kind == DomainKind::torus) {
    SpectralField2D fh = fft_forward(f);
    SpectralField2D gx(f.dom), gy(f.dom);
    spectral_grad(fh, gx, gy);
    g.ux = fft_inverse(gx).v;
    g.uy = fft_inverse(gy).v;
    return g;
  }
  // 4th-order centered differences; wrapped indices only ever read zeros when
  // the support stays inside the box
  int nx = f.dom.nx, ny = f.dom.ny;
  double cx = 1.0 / (12.0 * f.dom.dx()), cy = 1.0 / (12.0 * f.dom.dy());
  for (int i = 0; i < nx; ++i) {
    int im2 = (i - 2 + nx) % nx, im1 = (i - 1 + nx) % nx;
    int ip1 = (i + 1) % nx, ip2 = (i + 2) % nx;
    for (int j = 0; j < ny; ++j) {
      int jm2 = (j - 2 + ny) % ny, jm1 = (j - 1 + ny) % ny;
      int jp1 = (j + 1) % ny, jp2 = (j + 2) % ny;
      size_t k = size_t(i) * ny + j;
      g.ux[k] = cx * (f.at(im2, j) - 8 * f.at(im1, j) + 8 * f.at(ip1, j) - f.at(ip2, j));
      g.uy[k] = cy * (f.at(i, jm2) - 8 * f.at(i, jm1) + 8 * f.at(i, jp1) - f.at(i, jp2));
    }
  }
  return g;
}

ScalarField2D poisson_torus(const ScalarField2D& w) {
  if (w.dom.kind != DomainKind::torus) throw config_error("spectral Poisson solve needs a torus");
  check_mean_zero(w);
  SpectralField2D wh = fft_forward(w);
  double sx = 2 * M_PI / w.dom.len_x, sy = 2 * M_PI / w.dom.len_y;
  for (int i = 0; i < w.dom.nx; ++i) {
    int m1 = wh.k1_of(i);
    for (int j2 = 0; j2 < wh.nk2(); ++j2) {
      double k1 = sx * m1, k2 = sy * j2;
      double k2n = k1 * k1 + k2 * k2;
      wh.raw(i, j2) = (m1 == 0 && j2 == 0) ? 0 : wh.raw(i, j2) / (-k2n);
    }
  }
  return fft_inverse(wh);
}

void dealias_23(SpectralField2D& f) {
  const DomainSpec& d = f.dom;
  for (int i = 0; i < d.nx; ++i) {
    int m1 = std::abs(f.k1_of(i));
    for (int j2 = 0; j2 < f.nk2(); ++j2) {
      if (3 * m1 > d.nx || 3 * j2 > d.ny) f.raw(i, j2) = 0;
    }
  }
}

double cfl_dt(const VectorField2D& v, double safety) {
  if (!(safety > 0) || safety > 1) throw config_error("CFL safety factor must be in (0, 1]");
  double h = std::min(v.dom.dx(), v.dom.dy());
  return safety * h / std::max(v.max_norm(), 1e-12);
}

ScalarField2D step_rk4(const ScalarField2D& w, Vec2 drift, double dt) {
  if (!(dt > 0) || !std::isfinite(dt) || !std::isfinite(drift.x) || !std::isfinite(drift.y))
    throw config_error("time step must be positive and drift finite");

  SpectralField2D wh = fft_forward(w);
  dealias_23(wh);  // the discrete system lives on the dealiased band

  SpectralField2D k1 = tendency(wh, drift);
  SpectralField2D s = wh;
  for (size_t t = 0; t < s.c.size(); ++t) s.c[t] = wh.c[t] + 0.5 * dt * k1.c[t];
  SpectralField2D k2 = tendency(s, drift);
  for (size_t t = 0; t < s.c.size(); ++t) s.c[t] = wh.c[t] + 0.5 * dt * k2.c[t];
  SpectralField2D k3 = tendency(s, drift);
  for (size_t t = 0; t < s.c.size(); ++t) s.c[t] = wh.c[t] + dt * k3.c[t];
  SpectralField2D k4 = tendency(s, drift);
  for (size_t t = 0; t < wh.c.size(); ++t)
    wh.c[t] += (dt / 6.0) * (k1.c[t] + 2.0 * k2.c[t] + 2.0 * k3.c[t] + k4.c[t]);

  ScalarField2D out = fft_inverse(wh);
  for (double a : out.v)
    if (!std::isfinite(a)) throw numerical_error("blow-up", "non-finite vorticity after a step");
  return out;
}

namespace {

// Catmull-Rom cubic through p1 (t = 0) and p2 (t = 1), centered tangents
double catmull(double p0, double p1, double p2, double p3, double t) {
  double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
  double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
  double c = 0.5 * (p2 - p0);
  return ((a * t + b) * t + c) * t + p1;
}

// Out-of-range stencil index resolved as a linear combination of the two
// nearest interior nodes. Linear ghosts keep node queries interpolatory and
// reproduce affine data exactly, tangents included, which a stencil shift
// does not.
struct GhostIx {
  int i0, i1;
  double w0, w1;
};

GhostIx ghost_ix(int q, int n) {
  if (q <= -1) return {0, 1, 2.0, -1.0};
  if (q >= n) return {n - 1, n - 2, 2.0, -1.0};
  return {q, q, 1.0, 0.0};
}

}  // namespace

double sample_bicubic(const ScalarField2D& f, Vec2 b) {
  const DomainSpec& d = f.dom;
  if (d.nx < 4 || d.ny < 4) throw config_error("bicubic sampling needs at least 4 nodes per axis");
  double xi = (b.x - d.origin_x) / d.dx();
  double yj = (b.y - d.origin_y) / d.dy();
  int i0 = int(std::floor(xi)), j0 = int(std::floor(yj));
  double tx = xi - i0, ty = yj - j0;
  // clamp to a real cell; t runs outside [0, 1] there, so edge queries
  // extrapolate the boundary cell's cubic one-sidedly
  if (i0 < 0) tx += i0, i0 = 0;
  if (i0 > d.nx - 2) tx += i0 - (d.nx - 2), i0 = d.nx - 2;
  if (j0 < 0) ty += j0, j0 = 0;
  if (j0 > d.ny - 2) ty += j0 - (d.ny - 2), j0 = d.ny - 2;

  if (i0 >= 1 && i0 <= d.nx - 3 && j0 >= 1 && j0 <= d.ny - 3) {
    double col[4];
    for (int a = 0; a < 4; ++a) {
      const double* row = &f.v[size_t(i0 - 1 + a) * d.ny + (j0 - 1)];
      col[a] = catmull(row[0], row[1], row[2], row[3], ty);
    }
    return catmull(col[0], col[1], col[2], col[3], tx);
  }

  GhostIx gi[4], gj[4];
  for (int a = 0; a < 4; ++a) {
    gi[a] = ghost_ix(i0 - 1 + a, d.nx);
    gj[a] = ghost_ix(j0 - 1 + a, d.ny);
  }
  double col[4];
  for (int a = 0; a < 4; ++a) {
    double p[4];
    for (int bq = 0; bq < 4; ++bq) {
      double r0 = gj[bq].w0 * f.at(gi[a].i0, gj[bq].i0) + gj[bq].w1 * f.at(gi[a].i0, gj[bq].i1);
      double r1 = gj[bq].w0 * f.at(gi[a].i1, gj[bq].i0) + gj[bq].w1 * f.at(gi[a].i1, gj[bq].i1);
      p[bq] = gi[a].w0 * r0 + gi[a].w1 * r1;
    }
    col[a] = catmull(p[0], p[1], p[2], p[3], ty);
  }
  return catmull(col[0], col[1], col[2], col[3], tx);
}

double sample_bicubic_torus(const ScalarField2D& f, Vec2 p) {
  const DomainSpec& d = f.dom;
  if (d.nx < 4 || d.ny < 4) throw config_error("bicubic sampling needs at least 4 nodes per axis");
  double xi = (p.x - d.origin_x) / d.dx();
  double yj = (p.y - d.origin_y) / d.dy();
  int i0 = int(std::floor(xi)), j0 = int(std::floor(yj));
  double tx = xi - i0, ty = yj - j0;
  auto wrap = [](int q, int n) {
    q %= n;
    return q < 0 ? q + n : q;
  };
  double col[4];
  for (int a = 0; a < 4; ++a) {
    int i = wrap(i0 - 1 + a, d.nx);
    double p0 = f.at(i, wrap(j0 - 1, d.ny));
    double p1 = f.at(i, wrap(j0, d.ny));
    double p2 = f.at(i, wrap(j0 + 1, d.ny));
    double p3 = f.at(i, wrap(j0 + 2, d.ny));
    col[a] = catmull(p0, p1, p2, p3, ty);
  }
  return catmull(col[0], col[1], col[2], col[3], tx);
}

ScalarField2D advect_semilagrangian(const ScalarField2D& mu, const VelocitySampler& v,
                                    const ChartFrame& frame, double dt) {
  const DomainSpec& d = mu.dom;
  if (!(dt > 0) || !std::isfinite(dt)) throw config_error("time step must be positive");
  if (d.nx < 4 || d.ny < 4) throw config_error("advection grid needs at least 4 nodes per axis");
  if (!v) throw config_error("advection needs a velocity sampler");
  double det = frame.q1.cross(frame.q2);
  double qs = std::max(frame.q1.norm(), frame.q2.norm());
  if (!(std::abs(det) > 1e-12 * qs * qs)) throw config_error("chart frame is degenerate");

  // the grid is half-open, so the high edges sit one spacing past the last
  // node row; feet are classified against the closed box
  const double lox = d.origin_x, hix = d.origin_x + d.len_x;
  const double loy = d.origin_y, hiy = d.origin_y + d.len_y;
  const double hx = d.dx(), hy = d.dy();

  auto vchart = [&](Vec2 b) -> Vec2 {
    Vec2 vp = v(frame.to_phys(b));
    return {vp.cross(frame.q2) / det, frame.q1.cross(vp) / det};
  };

  ScalarField2D out(d);
  std::atomic<bool> outran{false};
  parallel_rows(d.nx, [&](int ib, int ie) {
    for (int i = ib; i < ie; ++i)
      for (int j = 0; j < d.ny; ++j) {
        Vec2 b{d.x(i), d.y(j)};
        Vec2 k1 = vchart(b);
        Vec2 k2 = vchart({b.x - 0.5 * dt * k1.x, b.y - 0.5 * dt * k1.y});
        Vec2 bb{b.x - dt * k2.x, b.y - dt * k2.y};
        if (!(bb.x >= lox - hx && bb.x <= hix + hx && bb.y >= loy - hy && bb.y <= hiy + hy)) {
          outran.store(true, std::memory_order_relaxed);
          out.at(i, j) = 0;
          continue;
        }
        // The inflow read binds at the node hull: the half-open grid has no
        // row on the high face, so a geometric-face test would never trigger
        // for dt smaller than a cell and the boundary value could not enter.
        if (bb.y < loy || bb.y > hiy - hy) {
          out.at(i, j) = 0;  // inflow faces, and they win at corners
          continue;
        }
        out.at(i, j) = sample_bicubic(mu, bb);
      }
  });
  if (outran.load())
    throw numerical_error("step-size", "back-trace foot left the one-cell halo of the chart box");
  return out;
}

}  // namespace vort
