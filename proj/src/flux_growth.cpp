#include "vort/flux_growth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vort/errors.hpp"
#include "vort/steady.hpp"

namespace vort {

namespace {

// eigenvector of the trace-free linearization for eigenvalue lam: both rows
// of (A - lam I) are normal to it, so either candidate below spans it; one
// can degenerate to zero when A is diagonal, so take the larger.
Vec2 eigvec(const Mat2& A, double lam) {
  Vec2 v1{A.b, lam - A.a};
  Vec2 v2{lam - A.d, A.c};
  Vec2 v = v1.norm() >= v2.norm() ? v1 : v2;
  double n = v.norm();
  v = v * (1.0 / n);
  // deterministic sign: first component positive, with a noise band so a
  // rounded zero cannot flip the vector
  if (v.x < -1e-12 || (std::abs(v.x) <= 1e-12 && v.y < 0)) v = v * -1.0;
  return v;
}

double tracer_mass_of(const ScalarField2D& mu, const SaddleProbe& pr) {
  double s = 0;
  for (double a : mu.v) s += a;
  return std::sin(pr.theta) * s * mu.dom.cell_area();
}

// measure of {1 <= mu <= 2} along the b1 = +eta side, 4096 interpolated
// samples; |q2| = 1, so the chart step is already a physical length
double band_width_of(const ScalarField2D& mu, const SaddleProbe& pr) {
  const int nb = 4096;
  double step = 2 * pr.eta / nb, width = 0;
  for (int k = 0; k < nb; ++k) {
    double b2 = -pr.eta + (k + 0.5) * step;
    double m = sample_bicubic(mu, {pr.eta, b2});
    if (m >= 1.0 && m <= 2.0) width += step;
  }
  return width;
}

// quintic Hermite span with zero curvature at both knots
double quintic_span(double f0, double d0, double f1, double d1, double h, double t) {
  double t3 = t * t * t;
  double h3 = t3 * (10 - 15 * t + 6 * t * t);
  double h1 = t - t3 * (6 - 8 * t + 3 * t * t);
  double h4 = -t3 * (4 - 7 * t + 3 * t * t);
  return f0 + (f1 - f0) * h3 + h * (d0 * h1 + d1 * h4);
}

}  // namespace

SaddleProbe build_probe(const Mat2& hess_phi, Vec2 x0, double eta) {
  if (!(eta > 0) || !std::isfinite(eta)) throw config_error("probe half-width must be positive");
  double scale = std::max({std::abs(hess_phi.a), std::abs(hess_phi.b), std::abs(hess_phi.c),
                           std::abs(hess_phi.d), 1e-300});
  double det = hess_phi.det();
  if (!(det < -1e-12 * scale * scale))
    throw invariant_error("no-saddle",
                          "stream Hessian must have strictly negative determinant at the probe");

  // linearization of grad-perp(phi); trace-free, det equal to det(Hess phi)
  Mat2 A{-hess_phi.b, -hess_phi.d, hess_phi.a, hess_phi.b};
  double lam = std::sqrt(-A.det());

  SaddleProbe pr;
  pr.x0 = x0;
  pr.q1 = eigvec(A, lam);
  pr.q2 = eigvec(A, -lam);
  pr.lam1 = lam;
  pr.lam2 = -lam;
  pr.theta = std::atan2(std::abs(pr.q1.cross(pr.q2)), pr.q1.dot(pr.q2));
  pr.eta = eta;
  pr.c0 = 0.5 * eta * std::sin(pr.theta) * lam;
  return pr;
}

SaddleProbe build_probe(const ScalarField2D& phi, Vec2 x0, double eta) {
  return build_probe(trig_hessian(phi, x0), x0, eta);
}

Vec2 probe_side_point(const SaddleProbe& pr, int side, double s) {
  if (side < 1 || side > 4) throw config_error("probe side index must be 1..4");
  double t = (2 * s - 1) * pr.eta;
  Vec2 b;
  switch (side) {
    case 1: b = {pr.eta, t}; break;
    case 2: b = {t, -pr.eta}; break;
    case 3: b = {-pr.eta, t}; break;
    default: b = {t, pr.eta}; break;
  }
  return pr.frame().to_phys(b);
}

Vec2 probe_side_normal(const SaddleProbe& pr, int side) {
  if (side < 1 || side > 4) throw config_error("probe side index must be 1..4");
  if (side == 1 || side == 3) {
    Vec2 m = pr.q2.perp();
    if (m.dot(pr.q1) < 0) m = m * -1.0;
    return side == 1 ? m : m * -1.0;
  }
  Vec2 m = pr.q1.perp();
  if (m.dot(pr.q2) < 0) m = m * -1.0;
  return side == 4 ? m : m * -1.0;
}

std::pair<double, double> measure_flux(const VelocitySampler& v, const SaddleProbe& pr, int side,
                                       int n_samples) {
  if (!v) throw config_error("flux measurement needs a velocity sampler");
  if (n_samples < 100) throw config_error("flux measurement needs at least 100 samples per side");
  Vec2 n = probe_side_normal(pr, side);
  double lo = 0, hi = 0;
  for (int k = 0; k < n_samples; ++k) {
    double s = (k + 0.5) / n_samples;  // interior points only, vertices excluded
    double f = v(probe_side_point(pr, side, s)).dot(n);
    if (k == 0) lo = hi = f;
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  return {lo, hi};
}

bool check_condition1(const VelocitySampler& v, const SaddleProbe& pr, int n_samples) {
  double half = 0.5 * pr.c0;
  return measure_flux(v, pr, 1, n_samples).first >= half &&
         measure_flux(v, pr, 3, n_samples).first >= half &&
         measure_flux(v, pr, 2, n_samples).second <= -half &&
         measure_flux(v, pr, 4, n_samples).second <= -half;
}

double cutoff_f(double s, double K) {
  double u = s - K;
  if (!(u > 0 && u < 1)) return 0;
  const double h = 1.0 / 3.0;
  if (u < h) return quintic_span(0, 0, 1, 4.5, h, u / h);
  if (u < 2 * h) return quintic_span(1, 4.5, 2, -7.0, h, (u - h) / h);
  return quintic_span(2, -7.0, 0, 0, h, (u - 2 * h) / h);
}

DomainSpec probe_chart_domain(const SaddleProbe& pr, int n) {
  if (n < 8) throw config_error("tracer chart needs at least 8 nodes per axis");
  DomainSpec d;
  d.kind = DomainKind::free_space;
  d.nx = d.ny = n;
  d.origin_x = d.origin_y = -pr.eta;
  d.len_x = d.len_y = 2 * pr.eta;
  return d;
}

TracerState make_tracer(const SaddleProbe& pr, int n, const std::function<double(Vec2)>& rho0,
                        double K) {
  if (!rho0) throw config_error("tracer needs an initial level sampler");
  DomainSpec d = probe_chart_domain(pr, n);
  ChartFrame fr = pr.frame();
  TracerState st;
  st.probe = pr;
  st.K = K;
  st.mu = ScalarField2D(d);
  for (int i = 0; i < d.nx; ++i)
    for (int j = 0; j < d.ny; ++j)
      st.mu.at(i, j) = cutoff_f(rho0(fr.to_phys({d.x(i), d.y(j)})), K);
  st.mass = tracer_mass_of(st.mu, pr);
  st.band = band_width_of(st.mu, pr);
  return st;
}

void evolve_tracer(TracerState& st, const VelocitySampler& v, double dt) {
  st.mu = advect_semilagrangian(st.mu, v, st.probe.frame(), dt);
  for (double& a : st.mu.v) a = std::clamp(a, 0.0, 3.0);  // interpolation overshoot limiter
  st.time += dt;
  st.mass = tracer_mass_of(st.mu, st.probe);
  st.band = band_width_of(st.mu, st.probe);
}

void grad_growth_metrics(GrowthSeries& gs, double t, double grad_max, bool resolved) {
  if (!std::isfinite(t)) throw config_error("growth sample time must be finite");
  if (!(grad_max > 0) || !std::isfinite(grad_max))
    throw config_error("gradient sample must be positive and finite");
  if (!gs.samples.empty()) {
    const GrowthSample& last = gs.samples.back();
    if (!(t > last.t))
      throw invariant_error("time-order", "growth samples must have strictly increasing time");
    gs.inv_integral += 0.5 * (1.0 / last.grad_max + 1.0 / grad_max) * (t - last.t);
  }
  if (t > M_E) gs.tlogt_sup = std::max(gs.tlogt_sup, grad_max / (t * std::log(t)));
  gs.samples.push_back({t, grad_max, resolved});
}

std::string growth_csv_row(const GrowthSeries& gs, double flux_min_g1, double flux_min_g3,
                           double flux_max_g2, double flux_max_g4, double tracer_mass,
                           double band_width) {
  if (gs.samples.empty()) throw config_error("growth csv row needs at least one sample");
  const GrowthSample& last = gs.samples.back();
  double ratio = last.t > M_E ? last.grad_max / (last.t * std::log(last.t)) : 0.0;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", last.t,
                last.grad_max, last.resolved ? 1 : 0, gs.inv_integral, ratio, flux_min_g1,
                flux_min_g3, flux_max_g2, flux_max_g4, tracer_mass, band_width);
  return buf;
}

}  // namespace vort
