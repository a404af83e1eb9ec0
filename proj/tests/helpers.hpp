#pragma once
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "vort/field.hpp"

namespace testutil {

// mean-zero band-limited torus field from a fixed seed: a sum of cosines over
// half the mode plane (conjugates are implicit), amplitudes decaying in |m|
inline vort::ScalarField2D random_bandlimited(int n, int kmax, unsigned seed,
                                              double amp = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(0, 2 * M_PI);
  std::normal_distribution<double> G(0, 1);
  struct Mode {
    int k1, k2;
    double a, phi;
  };
  std::vector<Mode> modes;
  for (int k1 = -kmax; k1 <= kmax; ++k1) {
    for (int k2 = 0; k2 <= kmax; ++k2) {
      if (k2 == 0 && k1 <= 0) continue;
      modes.push_back({k1, k2, amp * G(rng) / (1 + k1 * k1 + k2 * k2), U(rng)});
    }
  }
  vort::ScalarField2D f(vort::DomainSpec::torus(n, n));
  for (int i = 0; i < n; ++i) {
    double x = f.dom.x(i);
    for (int j = 0; j < n; ++j) {
      double y = f.dom.y(j), s = 0;
      for (const Mode& m : modes) s += m.a * std::cos(m.k1 * x + m.k2 * y + m.phi);
      f.at(i, j) = s;
    }
  }
  return f;
}

inline vort::ScalarField2D sample(const vort::DomainSpec& d,
                                  const std::function<double(vort::Vec2)>& fn) {
  vort::ScalarField2D f(d);
  for (int i = 0; i < d.nx; ++i)
    for (int j = 0; j < d.ny; ++j) f.at(i, j) = fn({d.x(i), d.y(j)});
  return f;
}

}  // namespace testutil
