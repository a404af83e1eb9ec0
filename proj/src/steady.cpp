#include "vort/steady.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "vort/errors.hpp"
#include "vort/fft.hpp"
#include "vort/spectral.hpp"

namespace vort {
namespace {

// Dense trigonometric interpolant of a torus field, for evaluation between
// grid nodes. Entries cover the full wavenumber band once each; coefficients
// below 1e-15 of the largest are dropped, which collapses the table to a
// handful of terms for band-limited data.
struct TrigTable {
  std::vector<double> k1, k2;
  std::vector<std::complex<double>> a;

  explicit TrigTable(const ScalarField2D& f) {
    SpectralField2D fh = fft_forward(f);
    int nx = f.dom.nx, ny = f.dom.ny;
    double inv = 1.0 / (f.dom.len_x * f.dom.len_y);
    std::vector<std::complex<double>> full;
    std::vector<int> m1s, m2s;
    double amax = 0;
    for (int m1 = -nx / 2 + 1; m1 <= nx / 2; ++m1)
      for (int m2 = -ny / 2 + 1; m2 <= ny / 2; ++m2) {
        if (m1 == 0 && m2 == 0) continue;  // constant term, gradient-free
        std::complex<double> c = fh.coeff(m1, m2) * inv;
        amax = std::max(amax, std::abs(c));
        full.push_back(c);
        m1s.push_back(m1);
        m2s.push_back(m2);
      }
    for (size_t t = 0; t < full.size(); ++t) {
      if (std::abs(full[t]) < 1e-15 * amax) continue;
      a.push_back(full[t]);
      k1.push_back(m1s[t]);
      k2.push_back(m2s[t]);
    }
  }

  void eval(Vec2 x, Vec2* g, Mat2* h) const {
    double g1 = 0, g2 = 0, h11 = 0, h12 = 0, h22 = 0;
    for (size_t t = 0; t < a.size(); ++t) {
      double ph = k1[t] * x.x + k2[t] * x.y;
      double c = std::cos(ph), s = std::sin(ph);
      double re = a[t].real() * c - a[t].imag() * s;
      double im = a[t].real() * s + a[t].imag() * c;
      g1 -= k1[t] * im;
      g2 -= k2[t] * im;
      h11 -= k1[t] * k1[t] * re;
      h12 -= k1[t] * k2[t] * re;
      h22 -= k2[t] * k2[t] * re;
    }
    if (g) *g = {g1, g2};
    if (h) *h = {h11, h12, h12, h22};
  }
};

void eigs_sym(const Mat2& h, double* lp, double* lm) {
  double mid = 0.5 * (h.a + h.d);
  double rad = std::hypot(0.5 * (h.a - h.d), h.b);
  *lp = mid + rad;
  *lm = mid - rad;
}

Vec2 wrap_box(Vec2 x) { return {wrap_pi(x.x), wrap_pi(x.y)}; }

struct Mode {
  IVec2 k;
  double amp;
};

// Half-plane representatives (k2 > 0, or k2 == 0 with k1 > 0) above the
// floor, sorted by amplitude, then |k|^2, then row-major (k2, k1) position.
// A conjugate pair contributes one entry; the discarded partner is collinear
// with it, so independence questions are unaffected.
std::vector<Mode> collect_modes(const SpectralField2D& wh, double floor_in) {
  if (wh.dom.kind != DomainKind::torus)
    throw config_error("mode analysis needs a torus spectrum");
  int nx = wh.dom.nx, ny = wh.dom.ny;
  std::vector<Mode> ms;
  double amax = 0;
  for (int m2 = 0; m2 <= ny / 2; ++m2) {
    int lo = (m2 == 0) ? 1 : -nx / 2 + 1;
    for (int m1 = lo; m1 <= nx / 2; ++m1) {
      double amp = std::abs(wh.coeff(m1, m2));
      amax = std::max(amax, amp);
      ms.push_back({{m1, m2}, amp});
    }
  }
  if (amax == 0) throw invariant_error("empty-spectrum", "no nonzero modes");
  if (std::abs(wh.coeff(0, 0)) > 1e-9 * amax)
    throw invariant_error("mean-zero", "spectrum has a nonzero mean mode");
  double floor = floor_in < 0 ? 1e-8 * amax : floor_in;
  std::erase_if(ms, [&](const Mode& m) { return m.amp < floor; });
  std::sort(ms.begin(), ms.end(), [](const Mode& x, const Mode& y) {
    if (x.amp != y.amp) return x.amp > y.amp;
    long long nx2 = (long long)x.k.k1 * x.k.k1 + (long long)x.k.k2 * x.k.k2;
    long long ny2 = (long long)y.k.k1 * y.k.k1 + (long long)y.k.k2 * y.k.k2;
    if (nx2 != ny2) return nx2 < ny2;
    if (x.k.k2 != y.k.k2) return x.k.k2 < y.k.k2;
    return x.k.k1 < y.k.k1;
  });
  return ms;
}

long long cross_k(IVec2 a, IVec2 b) {
  return (long long)a.k1 * b.k2 - (long long)a.k2 * b.k1;
}

}  // namespace

CosineEval eval_cosine(const CosineState& s, Vec2 x) {
  if (!(s.alpha > 0) || !(s.beta > 0))
    throw config_error("cosine state needs positive amplitudes");
  CosineEval e;
  e.w = s.alpha * std::cos(x.x) + s.beta * std::cos(x.y);
  e.phi = -e.w;
  e.u = {-s.beta * std::sin(x.y), s.alpha * std::sin(x.x)};
  return e;
}

std::vector<SaddleReport> find_saddles(const ScalarField2D& phi, double tol_grad) {
  if (phi.dom.kind != DomainKind::torus)
    throw config_error("saddle scan needs a torus field");
  int nx = phi.dom.nx, ny = phi.dom.ny;
  double hx = phi.dom.dx(), hy = phi.dom.dy();

  VectorField2D g = gradient_spectral(phi);
  double gmax = 0;
  for (size_t t = 0; t < g.ux.size(); ++t)
    gmax = std::max(gmax, std::max(std::abs(g.ux[t]), std::abs(g.uy[t])));
  double flat = 1e-9 * gmax;
  if (gmax == 0) return {};

  TrigTable tab(phi);
  std::vector<SaddleReport> saddles, unresolved;

  for (int i = 0; i < nx; ++i) {
    int ip = (i + 1) % nx;
    for (int j = 0; j < ny; ++j) {
      int jp = (j + 1) % ny;
      double gx[4] = {g.at(i, j).x, g.at(ip, j).x, g.at(i, jp).x, g.at(ip, jp).x};
      double gy[4] = {g.at(i, j).y, g.at(ip, j).y, g.at(i, jp).y, g.at(ip, jp).y};
      auto straddles = [](const double* v) {
        double lo = std::min(std::min(v[0], v[1]), std::min(v[2], v[3]));
        double hi = std::max(std::max(v[0], v[1]), std::max(v[2], v[3]));
        return lo <= 0 && hi >= 0;
      };
      auto below = [&](const double* v) {
        return std::abs(v[0]) < flat && std::abs(v[1]) < flat && std::abs(v[2]) < flat &&
               std::abs(v[3]) < flat;
      };
      if (below(gx) && below(gy)) continue;
      if (!straddles(gx) || !straddles(gy)) continue;

      Vec2 x{phi.dom.x(i) + 0.5 * hx, phi.dom.y(j) + 0.5 * hy};
      Vec2 gr;
      Mat2 h;
      bool converged = false;
      for (int it = 0; it < 50; ++it) {
        tab.eval(x, &gr, &h);
        if (gr.norm() <= tol_grad) {
          converged = true;
          break;
        }
        double scale = std::max({std::abs(h.a), std::abs(h.b), std::abs(h.d)});
        if (std::abs(h.det()) <= 1e-13 * scale * scale) break;
        Vec2 d = h.inverse().apply(gr) * -1.0;
        // cell-sized step cap so a bad Hessian cannot fling the iterate
        double dn = std::max(std::abs(d.x), std::abs(d.y));
        double cap = std::max(hx, hy);
        if (dn > cap) d = d * (cap / dn);
        x = wrap_box(x + d);
      }

      if (!converged) {
        Vec2 c{phi.dom.x(i) + 0.5 * hx, phi.dom.y(j) + 0.5 * hy};
        SaddleReport r;
        r.x0 = wrap_box(c);
        tab.eval(c, nullptr, &r.hess);
        eigs_sym(r.hess, &r.lam_plus, &r.lam_minus);
        r.kind = CritKind::unresolved;
        unresolved.push_back(r);
        continue;
      }

      double lp, lm;
      eigs_sym(h, &lp, &lm);
      if (!(lp > 0 && lm < 0)) continue;  // extremum or degenerate, not ours
      Vec2 x0 = wrap_box(x);
      bool dup = false;
      for (const auto& s : saddles) {
        double dx = wrap_pi(s.x0.x - x0.x), dy = wrap_pi(s.x0.y - x0.y);
        if (std::hypot(dx, dy) < 1e-6) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      saddles.push_back({x0, h, lp, lm, CritKind::saddle});
    }
  }

  auto byloc = [](const SaddleReport& a, const SaddleReport& b) {
    if (a.x0.x != b.x0.x) return a.x0.x < b.x0.x;
    return a.x0.y < b.x0.y;
  };
  std::sort(saddles.begin(), saddles.end(), byloc);
  std::sort(unresolved.begin(), unresolved.end(), byloc);
  saddles.insert(saddles.end(), unresolved.begin(), unresolved.end());
  return saddles;
}

std::string saddle_csv_row(const SaddleReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.x0.x, r.x0.y,
                r.hess.a, r.hess.b, r.hess.d, r.lam_plus, r.lam_minus);
  return buf;
}

Mat2 trig_hessian(const ScalarField2D& phi, Vec2 x) {
  Mat2 h;
  TrigTable(phi).eval(x, nullptr, &h);
  return h;
}

ModePair nonzero_independent_modes(const SpectralField2D& wh, double floor) {
  std::vector<Mode> ms = collect_modes(wh, floor);
  if (ms.empty()) throw invariant_error("empty-spectrum", "no modes above the floor");

  // Walk down the amplitude ordering until the prefix stops being collinear;
  // the newest entry then fixes the best attainable min-amplitude. Every
  // independent pair at that level competes on the tie-break keys.
  size_t t = 1;
  for (; t < ms.size(); ++t) {
    bool indep = false;
    for (size_t s = 0; s < t && !indep; ++s) indep = cross_k(ms[s].k, ms[t].k) != 0;
    if (indep) break;
  }
  if (t == ms.size())
    throw invariant_error("degenerate-modes", "all modes above the floor are collinear");

  double vstar = ms[t].amp;
  ModePair best;
  long long bestnorm = 0;
  bool have = false;
  for (size_t i = 0; i <= t; ++i)
    for (size_t j = i + 1; j <= t; ++j) {
      if (std::min(ms[i].amp, ms[j].amp) < vstar) continue;
      if (cross_k(ms[i].k, ms[j].k) == 0) continue;
      long long n2 = (long long)ms[i].k.k1 * ms[i].k.k1 + (long long)ms[i].k.k2 * ms[i].k.k2 +
                     (long long)ms[j].k.k1 * ms[j].k.k1 + (long long)ms[j].k.k2 * ms[j].k.k2;
      if (!have || n2 < bestnorm) {
        best = {ms[i].k, ms[j].k, ms[i].amp, ms[j].amp};
        bestnorm = n2;
        have = true;
      }
    }
  best.phase_a = std::arg(wh.coeff(best.a.k1, best.a.k2));
  best.phase_b = std::arg(wh.coeff(best.b.k1, best.b.k2));
  return best;
}

bool check_minimal_period(const SpectralField2D& wh, double floor) {
  ModePair mp = nonzero_independent_modes(wh, floor);
  std::vector<Mode> ms = collect_modes(wh, floor);
  IMat2 K = mp.K();
  long long d = K.det();
  long long ad = std::llabs(d);
  IMat2 A = K.adj();

  // Shifts fixing both selected modes: s = 2*pi*adj(K)*m/det over integer m,
  // of which |det| classes are distinct mod 2*pi. Each candidate must then
  // leave every mode's phase unchanged.
  double twopi = 2.0 * M_PI;
  for (long long m1 = 0; m1 < ad; ++m1)
    for (long long m2 = 0; m2 < ad; ++m2) {
      double s1 = wrap_2pi(twopi * double(A.a * m1 + A.b * m2) / double(d));
      double s2 = wrap_2pi(twopi * double(A.c * m1 + A.d * m2) / double(d));
      auto near_cycle = [&](double v) {
        double r = v / twopi;
        return std::abs(r - std::round(r)) < 1e-9;
      };
      if (near_cycle(s1) && near_cycle(s2)) continue;  // the identity shift
      bool all = true;
      for (const Mode& m : ms) {
        double r = (m.k.k1 * s1 + m.k.k2 * s2) / twopi;
        if (std::abs(r - std::round(r)) > 1e-9 * (1 + std::abs(r))) {
          all = false;
          break;
        }
      }
      if (all) return false;
    }
  return true;
}

}  // namespace vort
