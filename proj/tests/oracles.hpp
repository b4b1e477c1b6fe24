#ifndef NORMDERIV_TESTS_ORACLES_HPP
#define NORMDERIV_TESTS_ORACLES_HPP

// Reference computations that share no code with the library beyond norm
// evaluation.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "normderiv/normderiv.hpp"

namespace oracle {

using normderiv::NormedSpace;
using normderiv::Vector;

/// One-sided difference quotient (|x+ty| - |x|)/t, Richardson-extrapolated.
/// Exact for piecewise-linear norms once t is below the kink distance.
inline double one_sided_quotient(const NormedSpace& s, const Vector& x, const Vector& y, bool right,
                                 double t = 1e-6) {
  const double sign = right ? 1.0 : -1.0;
  const double nx = normderiv::norm_eval(s, x);
  const auto q = [&](double h) { return (normderiv::norm_eval(s, x + sign * h * y) - nx) / (sign * h); };
  return 2.0 * q(t / 2) - q(t);
}

inline double rho_plus(const NormedSpace& s, const Vector& x, const Vector& y) {
  return normderiv::norm_eval(s, x) * one_sided_quotient(s, x, y, true);
}

inline double rho_minus(const NormedSpace& s, const Vector& x, const Vector& y) {
  return normderiv::norm_eval(s, x) * one_sided_quotient(s, x, y, false);
}

/// min over a dense grid of |x + l y| - |x|; >= -eps iff x ⊥B y (up to grid).
inline double birkhoff_gap(const NormedSpace& s, const Vector& x, const Vector& y, int steps = 20001) {
  const double nx = normderiv::norm_eval(s, x);
  const double ny = normderiv::norm_eval(s, y);
  if (nx == 0 || ny == 0) return 0;
  const double span = 2.0 * nx / ny + 1.0;
  double best = nx;
  double arg = 0;
  for (int i = 0; i < steps; ++i) {
    const double l = -span + 2.0 * span * i / (steps - 1);
    const double v = normderiv::norm_eval(s, x + l * y);
    if (v < best) best = v, arg = l;
  }
  // refine around the best grid point
  double lo = arg - 2.0 * span / (steps - 1), hi = arg + 2.0 * span / (steps - 1);
  for (int i = 0; i < 2001; ++i) {
    const double l = lo + (hi - lo) * i / 2000;
    best = std::min(best, normderiv::norm_eval(s, x + l * y));
  }
  return best - nx;
}

/// Whether a rho*-Thalesian decomposition of x exists in l_inf R^2 for generic x.
inline bool thalesian_exists_linf2(const Vector& x, double lambda) {
  const double a = std::abs(x[0]), b = std::abs(x[1]);
  if (lambda == 0) return true;
  return std::min(a, b) * (1 + lambda) >= std::max(a, b);
}

/// Whether a rho*-Thalesian decomposition of x exists in l1 R^3 for generic x:
/// some coordinate subset D has sum_D |x_i| < lambda |x|_1 / (2(1+lambda)).
inline bool thalesian_exists_l1_3(const Vector& x, double lambda) {
  if (lambda == 0) return true;
  const double n1 = x.cwiseAbs().sum();
  const double bound = lambda * n1 / (2 * (1 + lambda));
  for (int mask = 1; mask < 8; ++mask) {
    double s = 0;
    for (int i = 0; i < 3; ++i)
      if (mask & (1 << i)) s += std::abs(x[i]);
    if (s < bound) return true;
  }
  return false;
}

}  // namespace oracle

#endif  // NORMDERIV_TESTS_ORACLES_HPP
