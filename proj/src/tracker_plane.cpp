#include "vort/tracker_plane.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vort/errors.hpp"
#include "vort/lamb.hpp"

namespace vort {

GEval eval_g(const CutoffG& c, double s) {
  if (!(c.r_g > 2)) throw config_error("cutoff taper must extend past the linear branch");
  double a = std::abs(s), sg = s < 0 ? -1.0 : 1.0;
  if (a <= 2) return {s, 1};
  if (a >= c.r_g) return {sg * c.plateau(), 0};
  double L = c.r_g - 2, t = a - 2;
  double gv = 2 + 0.5 * (t + (L / M_PI) * std::sin(M_PI * t / L));
  return {sg * gv, 0.5 * (1 + std::cos(M_PI * t / L))};
}

namespace {

void require_plane(const DomainSpec& d) {
  if (d.kind != DomainKind::free_space)
    throw config_error("the translation functional lives on the free plane");
}

}  // namespace

std::pair<double, double> eval_H(const ScalarField2D& w, double p, const CutoffG& g) {
  require_plane(w.dom);
  const DomainSpec& d = w.dom;
  double H = 0, dH = 0;
  for (int i = 0; i < d.nx; ++i) {
    double x = d.x(i);
    GEval e = eval_g(g, x - p);
    for (int j = 0; j < d.ny; ++j) {
      if (d.y(j) <= 0) continue;
      double wv = w.at(i, j);
      H += wv * e.g;
      dH -= wv * e.gp;
    }
  }
  return {H * d.cell_area(), dH * d.cell_area()};
}

PlaneTrackerState solve_p(const ScalarField2D& w, double p_guess, const CutoffG& g) {
  double mL = lamb_mass();
  double tolH = 1e-12 * mL * g.plateau();

  double lo = p_guess - 1, hi = p_guess + 1;
  double Hlo = eval_H(w, lo, g).first;
  double Hhi = eval_H(w, hi, g).first;
  // H must cross zero downward with real margin; a flat span is the
  // superposed-dipole degeneracy where the root means nothing
  if (!(Hlo > tolH && Hhi < -tolH))
    throw numerical_error("regime-loss",
                          "tracking functional does not straddle zero across the window");

  PlaneTrackerState st;
  double p = p_guess;
  auto [H, dH] = eval_H(w, p, g);
  for (int it = 0; it < 80 && std::abs(H) > tolH; ++it) {
    double pn = dH < 0 ? p - H / dH : lo;
    if (!(pn > lo && pn < hi)) pn = 0.5 * (lo + hi);
    auto [Hn, dHn] = eval_H(w, pn, g);
    (Hn > 0 ? lo : hi) = pn;
    p = pn;
    H = Hn;
    dH = dHn;
  }
  st.p = p;
  st.H = H;
  st.dHdp = dH;
  st.in_regime = dH <= -0.25 * mL;
  return st;
}

double p_dot_plane(const ScalarField2D& w, const VectorField2D& u, double p, const CutoffG& g) {
  require_plane(w.dom);
  if (!w.dom.same_grid(u.dom)) throw config_error("velocity grid does not match the vorticity");
  const DomainSpec& d = w.dom;
  double Ht = 0, dH = 0;
  for (int i = 0; i < d.nx; ++i) {
    double gp = eval_g(g, d.x(i) - p).gp;
    if (gp == 0) continue;
    for (int j = 0; j < d.ny; ++j) {
      if (d.y(j) <= 0) continue;
      double wv = w.at(i, j);
      Ht += wv * (u.ux[size_t(i) * d.ny + j] - 1) * gp;
      dH -= wv * gp;
    }
  }
  Ht *= d.cell_area();
  dH *= d.cell_area();
  if (!(dH <= -0.25 * lamb_mass()))
    throw numerical_error("regime-loss", "tracking slope fell above its floor");
  return -Ht / dH;
}

double lamb_cancellation_defect(const DomainSpec& d, double p, const CutoffG& g) {
  require_plane(d);
  double Ht = 0;
  for (int i = 0; i < d.nx; ++i) {
    double x = d.x(i);
    double gp = eval_g(g, x - p).gp;
    if (gp == 0) continue;
    for (int j = 0; j < d.ny; ++j) {
      double y = d.y(j);
      if (y <= 0) continue;
      Vec2 q{x, y};
      Ht += lamb_vorticity(q) * (lamb_velocity_fixed(q).x - 1) * gp;
    }
  }
  return Ht * d.cell_area();
}

double l2_comoving_drift(const ScalarField2D& w, double p) {
  require_plane(w.dom);
  const DomainSpec& d = w.dom;
  double sum = 0;
  for (int i = 0; i < d.nx; ++i)
    for (int j = 0; j < d.ny; ++j) {
      double r = w.at(i, j) - lamb_vorticity({d.x(i) - p, d.y(j)});
      sum += r * r;
    }
  return std::sqrt(sum * d.cell_area());
}

std::string plane_tracker_csv_row(double t, const PlaneTrackerState& st, double l2_drift) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d", t, st.p, st.pdot,
                st.H, st.dHdp, l2_drift, st.in_regime ? 1 : 0);
  return buf;
}

}  // namespace vort
