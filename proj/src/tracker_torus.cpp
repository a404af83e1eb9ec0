#include "vort/tracker_torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include "vort/errors.hpp"
#include "vort/fft.hpp"
#include "vort/spectral.hpp"

namespace vort {

namespace {

Vec2 wrap_box(Vec2 x) { return {wrap_pi(x.x), wrap_pi(x.y)}; }

long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

void check_floor(std::complex<double> w1, std::complex<double> w2, const ModePair& mp) {
  if (std::abs(w1) < 0.5 * mp.amp_a || std::abs(w2) < 0.5 * mp.amp_b)
    throw numerical_error("tracker-degeneracy",
                          "tracked coefficient fell below half its reference amplitude");
}

}  // namespace

LatticeSet lattice_solutions(const IMat2& K) {
  long long d = K.det();
  if (d == 0) throw config_error("lattice solutions need det K != 0");
  IMat2 A = K.adj();  // K * A = det(K) * I
  long long e = std::llabs(d);
  long long sg = d > 0 ? 1 : -1;

  // s = (2*pi/det) A m, m over a fundamental |det| x |det| block; the residue
  // of (sign(det) A m) mod |det| indexes s exactly, so duplicates drop out in
  // integer arithmetic and the set comes back sorted with (0,0) first.
  std::set<std::pair<long long, long long>> keys;
  for (long long m1 = 0; m1 < e; ++m1)
    for (long long m2 = 0; m2 < e; ++m2)
      keys.insert({mod_floor(sg * (A.a * m1 + A.b * m2), e),
                   mod_floor(sg * (A.c * m1 + A.d * m2), e)});

  LatticeSet out;
  for (auto& [r1, r2] : keys) {
    Vec2 s{2 * M_PI * double(r1) / double(e), 2 * M_PI * double(r2) / double(e)};
    double q1 = (K.a * s.x + K.b * s.y) / (2 * M_PI);
    double q2 = (K.c * s.x + K.d * s.y) / (2 * M_PI);
    if (std::abs(q1 - std::round(q1)) > 1e-12 || std::abs(q2 - std::round(q2)) > 1e-12)
      throw invariant_error("lattice-residue", "candidate shift fails K s = 0 (mod 2*pi)");
    out.s.push_back(s);
  }
  out.n = int(out.s.size());
  if (out.n != int(e)) throw invariant_error("lattice-count", "|S| != |det K|");
  return out;
}

Vec2 build_b(std::complex<double> w1, std::complex<double> w2, const ModePair& modes) {
  check_floor(w1, w2, modes);
  return {wrap_pi(modes.phase_a - std::arg(w1)), wrap_pi(modes.phase_b - std::arg(w2))};
}

double l2_shift_distance(const SpectralField2D& wh, const SpectralField2D& wrefh, Vec2 p) {
  const DomainSpec& d = wh.dom;
  if (!d.same_grid(wrefh.dom)) throw config_error("shift distance needs matching grids");
  if (d.kind != DomainKind::torus) throw config_error("shift distance is a torus quantity");
  double sum = 0;
  for (int i = 0; i < d.nx; ++i) {
    int k1 = i <= d.nx / 2 ? i : i - d.nx;
    for (int j2 = 0; j2 <= d.ny / 2; ++j2) {
      double wgt = (j2 == 0 || 2 * j2 == d.ny) ? 1.0 : 2.0;
      std::complex<double> ph = std::polar(1.0, -(k1 * p.x + j2 * p.y));
      sum += wgt * std::norm(wh.raw(i, j2) - wrefh.raw(i, j2) * ph);
    }
  }
  double scale = d.cell_area() * d.cell_area() / (d.len_x * d.len_y);
  return std::sqrt(scale * sum);
}

TorusTrackerState init_p(const ScalarField2D& w0, const ScalarField2D& wstar,
                         const ModePair& modes) {
  SpectralField2D w0h = fft_forward(w0);
  SpectralField2D wsh = fft_forward(wstar);
  Vec2 b = build_b(w0h.coeff(modes.a.k1, modes.a.k2), w0h.coeff(modes.b.k1, modes.b.k2), modes);

  Mat2 Kinv = modes.K().toMat().inverse();
  Vec2 base = Kinv.apply(b);
  LatticeSet lat = lattice_solutions(modes.K());

  std::vector<double> dist(lat.s.size());
  for (size_t i = 0; i < lat.s.size(); ++i)
    dist[i] = l2_shift_distance(w0h, wsh, {base.x + lat.s[i].x, base.y + lat.s[i].y});
  double best = *std::min_element(dist.begin(), dist.end());

  // an exact tie keeps the earliest lattice element, flagged
  TorusTrackerState st;
  st.modes = modes;
  size_t pick = 0, tied = 0;
  for (size_t i = 0; i < dist.size(); ++i)
    if (dist[i] - best <= 1e-12 && ++tied == 1) pick = i;
  st.init_tie = tied > 1;
  st.p_lift = wrap_box({base.x + lat.s[pick].x, base.y + lat.s[pick].y});
  st.p = st.p_lift;
  st.b_lift = st.modes.K().toMat().apply(st.p_lift);
  st.b = wrap_box(st.b_lift);
  return st;
}

void update_p(TorusTrackerState& st, Vec2 b_new) {
  Vec2 delta{wrap_pi(b_new.x - st.b_lift.x), wrap_pi(b_new.y - st.b_lift.y)};
  if (std::abs(delta.x) >= M_PI - 1e-9 || std::abs(delta.y) >= M_PI - 1e-9)
    throw numerical_error("tracker-aliasing",
                          "phase moved half a turn in one step; increment is ambiguous");
  st.b_lift.x += delta.x;
  st.b_lift.y += delta.y;
  st.b = wrap_box(st.b_lift);
  st.p_lift = st.modes.K().toMat().inverse().apply(st.b_lift);
  st.p = wrap_box(st.p_lift);
}

std::complex<double> mode_rhs(const ScalarField2D& w, const VectorField2D& u, IVec2 k) {
  const DomainSpec& d = w.dom;
  if (!d.same_grid(u.dom)) throw config_error("mode right side needs matching grids");
  ScalarField2D q1(d), q2(d);
  for (size_t i = 0; i < w.v.size(); ++i) {
    q1.v[i] = u.ux[i] * w.v[i];
    q2.v[i] = u.uy[i] * w.v[i];
  }
  SpectralField2D q1h = fft_forward(q1);
  SpectralField2D q2h = fft_forward(q2);
  dealias_23(q1h);
  dealias_23(q2h);
  std::complex<double> flux =
      double(k.k1) * q1h.coeff(k.k1, k.k2) + double(k.k2) * q2h.coeff(k.k1, k.k2);
  return std::complex<double>(0, -1) * flux;
}

Vec2 p_dot(TorusTrackerState& st, std::complex<double> w1, std::complex<double> w2,
           std::complex<double> rhs1, std::complex<double> rhs2) {
  check_floor(w1, w2, st.modes);
  Vec2 darg{std::imag(rhs1 / w1), std::imag(rhs2 / w2)};
  Vec2 pd = st.modes.K().toMat().inverse().apply(darg);
  st.pdot = {-pd.x, -pd.y};
  return st.pdot;
}

std::string tracker_csv_row(double t, const TorusTrackerState& st, double amp1, double amp2,
                            double l2_drift) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", t, st.p.x, st.p.y,
                st.p_lift.x, st.p_lift.y, st.pdot.x, st.pdot.y, amp1, amp2, l2_drift);
  return buf;
}

}  // namespace vort
