#pragma once
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace vort {

struct Vec2 {
  double x = 0, y = 0;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  Vec2 perp() const { return {-y, x}; }  // 90 deg counterclockwise
};

struct Mat2 {
  // [[a, b], [c, d]]
  double a = 0, b = 0, c = 0, d = 0;
  Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  double det() const { return a * d - b * c; }
  Mat2 inverse() const {
    double dd = det();
    return {d / dd, -b / dd, -c / dd, a / dd};
  }
};

// integer 2x2 (tracker mode matrix K, rows are the two wavevectors)
struct IMat2 {
  long long a = 0, b = 0, c = 0, d = 0;
  long long det() const { return a * d - b * c; }
  // adjugate: K * adj = det * I
  IMat2 adj() const { return {d, -b, -c, a}; }
  Mat2 toMat() const { return {double(a), double(b), double(c), double(d)}; }
};

inline double wrap_pi(double a) {  // wrap into [-pi, pi)
  double t = std::remainder(a, 2.0 * M_PI);
  if (t >= M_PI) t -= 2.0 * M_PI;
  if (t < -M_PI) t += 2.0 * M_PI;
  return t;
}

inline double wrap_2pi(double a) {  // wrap into [0, 2pi)
  double t = std::fmod(a, 2.0 * M_PI);
  if (t < 0) t += 2.0 * M_PI;
  if (t >= 2.0 * M_PI) t -= 2.0 * M_PI;
  return t;
}

// Thread cap from the environment (VORT_THREADS). Default 1: every code path
// is bit-reproducible; threads are only used for pointwise maps whose result
// does not depend on the schedule.
inline int thread_count() {
  static int n = [] {
    const char* e = std::getenv("VORT_THREADS");
    if (!e) return 1;
    int v = std::atoi(e);
    if (v < 1) v = 1;
    int hw = int(std::thread::hardware_concurrency());
    if (hw > 0 && v > hw) v = hw;
    return v;
  }();
  return n;
}

// static row-split parallel map; fn(begin, end) must touch disjoint state
inline void parallel_rows(int n, const std::function<void(int, int)>& fn) {
  int nt = thread_count();
  if (nt <= 1 || n < 4 * nt) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> ts;
  int chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    int b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    ts.emplace_back(fn, b, e);
  }
  for (auto& t : ts) t.join();
}

}  // namespace vort
