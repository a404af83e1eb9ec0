#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "vort/errors.hpp"
#include "vort/fft.hpp"
#include "vort/spectral.hpp"
#include "vort/steady.hpp"
#include "vort/tracker_torus.hpp"

using namespace vort;
using testutil::random_bandlimited;
using testutil::sample;

static double tdist(Vec2 a, Vec2 b) {
  return std::hypot(wrap_pi(a.x - b.x), wrap_pi(a.y - b.y));
}

static ScalarField2D cosine_shifted(const DomainSpec& d, Vec2 s) {
  return sample(d, [&](Vec2 x) { return std::cos(x.x - s.x) + std::cos(x.y - s.y); });
}

static bool contains_shift(const LatticeSet& L, Vec2 s) {
  for (const Vec2& e : L.s)
    if (std::hypot(e.x - s.x, e.y - s.y) <= 1e-12) return true;
  return false;
}

TEST_CASE("lattice solutions enumerate the torus kernel of K") {
  LatticeSet id = lattice_solutions({1, 0, 0, 1});
  CHECK(id.n == 1);
  CHECK(id.s[0].x == 0);
  CHECK(id.s[0].y == 0);

  LatticeSet half = lattice_solutions({2, 0, 0, 1});
  CHECK(half.n == 2);
  CHECK(contains_shift(half, {0, 0}));
  CHECK(contains_shift(half, {M_PI, 0}));

  LatticeSet skew = lattice_solutions({1, 1, 1, -1});
  CHECK(skew.n == 2);
  CHECK(contains_shift(skew, {0, 0}));
  CHECK(contains_shift(skew, {M_PI, M_PI}));

  LatticeSet quad = lattice_solutions({2, 0, 0, 2});
  CHECK(quad.n == 4);
  CHECK(contains_shift(quad, {0, M_PI}));
  CHECK(contains_shift(quad, {M_PI, 0}));
  CHECK(contains_shift(quad, {M_PI, M_PI}));
  CHECK(quad.s[0].x == 0);  // zero shift listed first
  CHECK(quad.s[0].y == 0);

  // a non-diagonal K: the count is the sublattice index and every element
  // solves K s = 0 (mod 2*pi)
  IMat2 K{2, 1, 0, 3};
  LatticeSet big = lattice_solutions(K);
  CHECK(big.n == 6);
  CHECK(big.s[0].x == 0);
  CHECK(big.s[0].y == 0);
  for (const Vec2& e : big.s) {
    CHECK(e.x >= 0);
    CHECK(e.x < 2 * M_PI);
    CHECK(e.y >= 0);
    CHECK(e.y < 2 * M_PI);
    double q1 = (K.a * e.x + K.b * e.y) / (2 * M_PI);
    double q2 = (K.c * e.x + K.d * e.y) / (2 * M_PI);
    CHECK(std::abs(q1 - std::round(q1)) <= 1e-12);
    CHECK(std::abs(q2 - std::round(q2)) <= 1e-12);
  }
  for (size_t i = 0; i < big.s.size(); ++i)
    for (size_t j = i + 1; j < big.s.size(); ++j)
      CHECK(std::hypot(big.s[i].x - big.s[j].x, big.s[i].y - big.s[j].y) > 1e-9);

  try {
    lattice_solutions({1, 2, 2, 4});
    FAIL("singular K accepted");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::config);
  }
}

TEST_CASE("phase offsets read a translation off the tracked coefficients") {
  DomainSpec d = DomainSpec::torus(64, 64);
  ScalarField2D wstar = cosine_shifted(d, {0, 0});
  ModePair mp = nonzero_independent_modes(fft_forward(wstar));
  Mat2 K = mp.K().toMat();

  ScalarField2D w0 = cosine_shifted(d, {0, 0});
  SpectralField2D w0h = fft_forward(w0);
  Vec2 b0 = build_b(w0h.coeff(mp.a.k1, mp.a.k2), w0h.coeff(mp.b.k1, mp.b.k2), mp);
  CHECK(std::abs(b0.x) <= 1e-12);
  CHECK(std::abs(b0.y) <= 1e-12);

  Vec2 s{0.3, -0.2};
  SpectralField2D wsh = fft_forward(cosine_shifted(d, s));
  Vec2 bs = build_b(wsh.coeff(mp.a.k1, mp.a.k2), wsh.coeff(mp.b.k1, mp.b.k2), mp);
  Vec2 Ks = K.apply(s);
  CHECK(std::abs(wrap_pi(bs.x - Ks.x)) <= 1e-9);
  CHECK(std::abs(wrap_pi(bs.y - Ks.y)) <= 1e-9);

  // coefficient shrunk below half its reference amplitude
  try {
    build_b(std::polar(0.4 * mp.amp_a, 0.7), w0h.coeff(mp.b.k1, mp.b.k2), mp);
    FAIL("weak coefficient accepted");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::numerical);
    CHECK(e.code == "tracker-degeneracy");
  }
}

TEST_CASE("spectral shift distance agrees with the sampled norm") {
  DomainSpec d = DomainSpec::torus(64, 64);
  Vec2 p{0.9, -1.7};
  ScalarField2D wa = random_bandlimited(64, 5, 42);
  ScalarField2D wb = cosine_shifted(d, {0, 0});
  ScalarField2D wbp = cosine_shifted(d, p);
  ScalarField2D diff(d);
  for (size_t i = 0; i < diff.v.size(); ++i) diff.v[i] = wa.v[i] - wbp.v[i];
  double spectral = l2_shift_distance(fft_forward(wa), fft_forward(wb), p);
  CHECK(spectral == doctest::Approx(diff.l2()).epsilon(1e-12));
  CHECK(l2_shift_distance(fft_forward(wb), fft_forward(wb), {0, 0}) <= 1e-13);
}

TEST_CASE("initial branch minimizes the distance to the shifted reference") {
  DomainSpec d = DomainSpec::torus(64, 64);
  ScalarField2D wstar = cosine_shifted(d, {0, 0});
  ModePair mp = nonzero_independent_modes(fft_forward(wstar));

  TorusTrackerState rest = init_p(wstar, wstar, mp);
  CHECK(std::hypot(rest.p.x, rest.p.y) <= 1e-9);
  CHECK(!rest.init_tie);

  Vec2 s{0.3, -0.2};
  TorusTrackerState moved = init_p(cosine_shifted(d, s), wstar, mp);
  CHECK(tdist(moved.p, s) <= 1e-6);
  Vec2 res = moved.modes.K().toMat().apply(moved.p);
  CHECK(std::abs(wrap_pi(res.x - moved.b.x)) <= 1e-8);
  CHECK(std::abs(wrap_pi(res.y - moved.b.y)) <= 1e-8);
}

TEST_CASE("branch choice is decided by the full field, not the tracked modes") {
  // dominant modes on the doubled lattice, weak modes breaking its symmetry:
  // the tracked phases alone cannot tell the four branches apart, the
  // whole-field distances can
  DomainSpec d = DomainSpec::torus(64, 64);
  auto base = [](Vec2 x) {
    return std::cos(2 * x.x) + std::cos(2 * x.y) + 0.5 * (std::cos(x.x) + std::cos(x.y));
  };
  ScalarField2D wstar = sample(d, base);
  ModePair mp = nonzero_independent_modes(fft_forward(wstar));
  CHECK(std::llabs(mp.K().det()) == 4);

  Vec2 strue{M_PI + 0.1, 0};
  ScalarField2D w0 = sample(d, [&](Vec2 x) { return base({x.x - strue.x, x.y - strue.y}); });
  TorusTrackerState st = init_p(w0, wstar, mp);
  CHECK(!st.init_tie);
  CHECK(tdist(st.p, strue) <= 1e-6);

  // exhaustive optimality over the candidate set
  SpectralField2D w0h = fft_forward(w0);
  SpectralField2D wsh = fft_forward(wstar);
  double chosen = l2_shift_distance(w0h, wsh, st.p);
  Vec2 b = build_b(w0h.coeff(mp.a.k1, mp.a.k2), w0h.coeff(mp.b.k1, mp.b.k2), mp);
  Vec2 basep = mp.K().toMat().inverse().apply(b);
  for (const Vec2& e : lattice_solutions(mp.K()).s)
    CHECK(chosen <= l2_shift_distance(w0h, wsh, {basep.x + e.x, basep.y + e.y}) + 1e-12);

  // with the symmetry-breaking modes removed the four branches carry the
  // same field and the tie is flagged, first lattice element kept
  auto pure = [](Vec2 x) { return std::cos(2 * x.x) + std::cos(2 * x.y); };
  ScalarField2D vstar = sample(d, pure);
  ModePair mq = nonzero_independent_modes(fft_forward(vstar));
  ScalarField2D v0 = sample(d, [&](Vec2 x) { return pure({x.x - strue.x, x.y - strue.y}); });
  TorusTrackerState tied = init_p(v0, vstar, mq);
  CHECK(tied.init_tie);
  CHECK(tdist(tied.p, {0.1, 0}) <= 1e-6);
}

TEST_CASE("phase updates lift continuously across the seam") {
  ModePair mp;  // identity K, synthetic phases
  mp.a = {1, 0};
  mp.b = {0, 1};
  mp.amp_a = mp.amp_b = 1;

  TorusTrackerState st;
  st.modes = mp;

  // slow ramp b = (t, 0) through pi; the lift must come out straight
  double maxjump = 0, maxres = 0;
  for (double t = 0.05; t <= 3.3 + 1e-12; t += 0.05) {
    Vec2 prev = st.p_lift;
    update_p(st, {wrap_pi(t), 0});
    maxjump = std::max(maxjump, std::hypot(st.p_lift.x - prev.x, st.p_lift.y - prev.y));
    Vec2 res = mp.K().toMat().apply(st.p);
    maxres = std::max({maxres, std::abs(wrap_pi(res.x - st.b.x)), std::abs(wrap_pi(res.y - st.b.y))});
  }
  CHECK(st.p_lift.x == doctest::Approx(3.3).epsilon(1e-12));
  CHECK(st.p_lift.y == 0);
  CHECK(st.p.x == doctest::Approx(3.3 - 2 * M_PI).epsilon(1e-12));
  CHECK(maxjump <= 0.05 + 1e-12);  // well under the pi branch-jump bound
  CHECK(maxres <= 1e-8);

  // constant phases hold p fixed
  TorusTrackerState cs;
  cs.modes = mp;
  update_p(cs, {0.4, -1.1});
  Vec2 held = cs.p;
  for (int i = 0; i < 5; ++i) update_p(cs, {0.4, -1.1});
  CHECK(cs.p.x == held.x);
  CHECK(cs.p.y == held.y);

  // a legal step close to the limit still unwraps to the nearest lift
  TorusTrackerState far;
  far.modes = mp;
  update_p(far, {3.0, 0});
  update_p(far, {wrap_pi(6.0), 0});
  CHECK(far.b_lift.x == doctest::Approx(6.0).epsilon(1e-12));

  // a half-turn increment is ambiguous
  TorusTrackerState bad;
  bad.modes = mp;
  try {
    update_p(bad, {-M_PI, 0});
    FAIL("ambiguous increment accepted");
  } catch (const Error& e) {
    CHECK(e.kind == ErrKind::numerical);
    CHECK(e.code == "tracker-aliasing");
  }
}

TEST_CASE("mode right side vanishes on equilibria and matches a time difference") {
  DomainSpec d = DomainSpec::torus(64, 64);
  ScalarField2D wstar = cosine_shifted(d, {0, 0});
  ModePair mp = nonzero_independent_modes(fft_forward(wstar));
  VectorField2D ustar = biot_savart_torus(wstar);
  CHECK(std::abs(mode_rhs(wstar, ustar, mp.a)) <= 1e-10);
  CHECK(std::abs(mode_rhs(wstar, ustar, mp.b)) <= 1e-10);

  ScalarField2D zero(d);
  VectorField2D uzero(d);
  CHECK(std::abs(mode_rhs(zero, uzero, {1, 0})) == 0);

  // centered difference of the tracked coefficient across two explicit
  // steps; halving dt must cut the defect fourfold
  ScalarField2D w0 = random_bandlimited(64, 8, 77);
  IVec2 probes[] = {{1, 0}, {0, 1}, {3, 2}, {5, -4}};
  SpectralField2D w0h = fft_forward(w0);
  double defect[2][4];
  int pass = 0;
  for (double dt : {1e-3, 5e-4}) {
    ScalarField2D w1 = step_rk4(w0, {0, 0}, dt);
    ScalarField2D w2 = step_rk4(w1, {0, 0}, dt);
    SpectralField2D w2h = fft_forward(w2);
    VectorField2D u1 = biot_savart_torus(w1);
    for (int i = 0; i < 4; ++i) {
      IVec2 k = probes[i];
      std::complex<double> fd = (w2h.coeff(k.k1, k.k2) - w0h.coeff(k.k1, k.k2)) / (2 * dt);
      std::complex<double> rhs = mode_rhs(w1, u1, k);
      defect[pass][i] = std::abs(fd - rhs);
      CHECK(defect[pass][i] <= 1e-5 * (1 + std::abs(rhs)));
    }
    ++pass;
  }
  for (int i = 0; i < 4; ++i) {
    double ratio = defect[0][i] / defect[1][i];
    CHECK(ratio >= 3.2);  // second order in time, measured ratio 4.0
    CHECK(ratio <= 4.8);
  }
}

TEST_CASE("spectral velocity estimate recovers a rigid translation") {
  DomainSpec d = DomainSpec::torus(64, 64);
  ScalarField2D wstar = cosine_shifted(d, {0, 0});
  ModePair mp = nonzero_independent_modes(fft_forward(wstar));
  SpectralField2D wsh = fft_forward(wstar);

  // equilibrium: no phase motion
  TorusTrackerState rest = init_p(wstar, wstar, mp);
  VectorField2D ustar = biot_savart_torus(wstar);
  Vec2 pd0 = p_dot(rest, wsh.coeff(mp.a.k1, mp.a.k2), wsh.coeff(mp.b.k1, mp.b.k2),
                   mode_rhs(wstar, ustar, mp.a), mode_rhs(wstar, ustar, mp.b));
  CHECK(std::hypot(pd0.x, pd0.y) <= 1e-10);
  CHECK(rest.pdot.x == pd0.x);

  // uniform transport of the shifted state: pdot equals the carrier velocity
  Vec2 s0{1.1, 0.7};
  ScalarField2D w0 = cosine_shifted(d, s0);
  SpectralField2D w0h = fft_forward(w0);
  VectorField2D carrier(d);
  std::fill(carrier.ux.begin(), carrier.ux.end(), 0.01);
  TorusTrackerState st = init_p(w0, wstar, mp);
  CHECK(tdist(st.p, s0) <= 1e-6);
  Vec2 pd = p_dot(st, w0h.coeff(mp.a.k1, mp.a.k2), w0h.coeff(mp.b.k1, mp.b.k2),
                  mode_rhs(w0, carrier, mp.a), mode_rhs(w0, carrier, mp.b));
  CHECK(std::abs(pd.x - 0.01) <= 1e-6);
  CHECK(std::abs(pd.y) <= 1e-6);

  try {
    p_dot(st, 0.3 * w0h.coeff(mp.a.k1, mp.a.k2), w0h.coeff(mp.b.k1, mp.b.k2), 0.0, 0.0);
    FAIL("weak coefficient accepted");
  } catch (const Error& e) {
    CHECK(e.code == "tracker-degeneracy");
  }
}

TEST_CASE("tracker holds a translated equilibrium fixed over a long run") {
  DomainSpec d = DomainSpec::torus(64, 64);
  ScalarField2D wstar = cosine_shifted(d, {0, 0});
  SpectralField2D wsh = fft_forward(wstar);
  ModePair mp = nonzero_independent_modes(wsh);
  Vec2 s{0.3, -0.2};

  ScalarField2D w = cosine_shifted(d, s);
  TorusTrackerState st = init_p(w, wstar, mp);

  double dt = 0.01;
  double maxdev = tdist(st.p, s), maxres = 0, maxjump = 0, maxdrift = 0;
  std::string row;
  for (int n = 1; n <= 500; ++n) {
    w = step_rk4(w, {0, 0}, dt);
    SpectralField2D wh = fft_forward(w);
    std::complex<double> c1 = wh.coeff(mp.a.k1, mp.a.k2);
    std::complex<double> c2 = wh.coeff(mp.b.k1, mp.b.k2);
    Vec2 prev = st.p_lift;
    update_p(st, build_b(c1, c2, mp));
    maxdev = std::max(maxdev, tdist(st.p, s));
    maxjump = std::max(maxjump, std::hypot(st.p_lift.x - prev.x, st.p_lift.y - prev.y));
    Vec2 res = mp.K().toMat().apply(st.p);
    maxres = std::max({maxres, std::abs(wrap_pi(res.x - st.b.x)), std::abs(wrap_pi(res.y - st.b.y))});
    maxdrift = std::max(maxdrift, l2_shift_distance(wh, wsh, st.p));
    if (n == 500) row = tracker_csv_row(n * dt, st, std::abs(c1), std::abs(c2),
                                        l2_shift_distance(wh, wsh, st.p));
  }
  CHECK(maxdev <= 1e-6);
  CHECK(maxres <= 1e-8);
  CHECK(maxjump < M_PI);  // identity K, so the branch-jump bound is pi
  CHECK(maxdrift <= 1e-8);

  // t,p1,p2,p1_lift,p2_lift,pdot1,pdot2,amp_k1,amp_k2,l2_drift
  CHECK(std::count(row.begin(), row.end(), ',') == 9);
  CHECK(std::strtod(row.c_str(), nullptr) == doctest::Approx(5.0));
  size_t comma = row.find(',');
  CHECK(std::strtod(row.c_str() + comma + 1, nullptr) == st.p.x);
}

TEST_CASE("perturbed equilibrium stays tracked with small phase velocity") {
  DomainSpec d = DomainSpec::torus(64, 64);
  ScalarField2D wstar = cosine_shifted(d, {0, 0});
  SpectralField2D wsh = fft_forward(wstar);
  ModePair mp = nonzero_independent_modes(wsh);

  double delta = 0.05;
  ScalarField2D pert = random_bandlimited(64, 4, 123);
  double gain = delta / pert.l2();
  ScalarField2D w = wstar;
  for (size_t i = 0; i < w.v.size(); ++i) w.v[i] += gain * pert.v[i];

  TorusTrackerState st = init_p(w, wstar, mp);
  double p0 = std::hypot(st.p.x, st.p.y);

  double dt = 0.01;
  double maxpd = 0, maxdrift = 0, maxres = 0;
  for (int n = 1; n <= 2000; ++n) {
    w = step_rk4(w, {0, 0}, dt);
    SpectralField2D wh = fft_forward(w);
    std::complex<double> c1 = wh.coeff(mp.a.k1, mp.a.k2);
    std::complex<double> c2 = wh.coeff(mp.b.k1, mp.b.k2);
    update_p(st, build_b(c1, c2, mp));
    VectorField2D u = biot_savart_torus(w);
    Vec2 pd = p_dot(st, c1, c2, mode_rhs(w, u, mp.a), mode_rhs(w, u, mp.b));
    maxpd = std::max(maxpd, std::hypot(pd.x, pd.y));
    maxdrift = std::max(maxdrift, l2_shift_distance(wh, wsh, st.p));
    Vec2 res = mp.K().toMat().apply(st.p);
    maxres = std::max({maxres, std::abs(wrap_pi(res.x - st.b.x)), std::abs(wrap_pi(res.y - st.b.y))});
  }

  MESSAGE("start offset |p(0)| = " << p0 << ", |p(0)|/delta = " << p0 / delta);
  MESSAGE("max |pdot| over t <= 20: " << maxpd);
  MESSAGE("max L2 drift over t <= 20: " << maxdrift << ", drift/delta = " << maxdrift / delta);

  CHECK(maxres <= 1e-8);
  CHECK(maxpd <= 1.0 * delta);
  CHECK(p0 <= 0.2 * delta);       // measured 0.057 * delta
  CHECK(maxdrift <= 2.0 * delta); // measured 1.29 * delta
}
