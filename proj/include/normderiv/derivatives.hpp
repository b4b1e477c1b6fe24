#ifndef NORMDERIV_DERIVATIVES_HPP
#define NORMDERIV_DERIVATIVES_HPP

#include <cmath>
#include <limits>

#include "core.hpp"
#include "norms.hpp"

namespace normderiv {

enum class Method { closed_form, numeric_limit };
enum class Side { left, right };

/// A one-sided norm derivative rho_-(x,y) or rho_+(x,y).
struct DerivativeResult {
  double value = 0;
  Method method = Method::closed_form;
  double err_estimate = 0;  ///< 0 for closed forms, last quotient gap otherwise.
  bool converged = true;
};

/// rho_+(x,y) = |x| * lim_{t->0+} (|x+ty| - |x|)/t.
inline DerivativeResult rho_plus(const NormedSpace& space, const Vector& x, const Vector& y,
                                 const Tolerance& tol = {}) {
  const double nx = norm_eval(space, x);
  const double d = exact_dplus(space, x, y, tol);
  return {nx == 0 ? 0.0 : nx * d, Method::closed_form, 0.0, true};
}

inline DerivativeResult rho_minus(const NormedSpace& space, const Vector& x, const Vector& y,
                                  const Tolerance& tol = {}) {
  const double nx = norm_eval(space, x);
  const double d = exact_dminus(space, x, y, tol);
  return {nx == 0 ? 0.0 : nx * d, Method::closed_form, 0.0, true};
}

/// Milicic's functional <y,x>_g: mean of the one-sided derivatives.
inline double rho(const NormedSpace& space, const Vector& x, const Vector& y, const Tolerance& tol = {}) {
  return 0.5 * (rho_minus(space, x, y, tol).value + rho_plus(space, x, y, tol).value);
}

inline double rho_star(const NormedSpace& space, const Vector& x, const Vector& y, const Tolerance& tol = {}) {
  return rho_minus(space, x, y, tol).value * rho_plus(space, x, y, tol).value;
}

/// Independent oracle for rho_-/rho_+ from one-sided difference quotients.
///
/// q(t) = (|x+ty| - |x|)/t is monotone in t by convexity. Steps shrink
/// geometrically and the last three quotients are Aitken-extrapolated, which
/// removes a leading c*t^a term for any a > 0 (a = 1 for smooth points, a < 1
/// at zero coordinates of lp norms with p < 2). When the quotient differences
/// are not geometric (rounding dominated) the Richardson O(t) estimate is used.
/// Iteration stops once successive estimates differ by less than the tolerance
/// plus the rounding noise at that step on two consecutive steps, or when the
/// step drops below `limit_floor`.
inline DerivativeResult numeric_one_sided(const NormedSpace& space, const Vector& x, const Vector& y, Side side,
                                          const Tolerance& tol = {}) {
  tol.validate();
  const double nx = norm_eval(space, x);
  const double ny = norm_eval(space, y);
  DerivativeResult out{0.0, Method::numeric_limit, 0.0, true};
  if (nx == 0) return out;
  if (ny == 0) return out;

  const double sign = side == Side::right ? 1.0 : -1.0;
  const double eps = std::numeric_limits<double>::epsilon();
  const double s = tol.limit_shrink;
  const double q_noise = 2.0 * static_cast<double>(space.dim() + 2) * eps;
  auto quotient = [&](double t) { return (detail::unchecked_norm(space, x + t * y) - nx) / t; };

  double step = tol.limit_t0 * (nx + 1.0) / (ny + 1.0);
  double q0 = quotient(sign * step);
  step *= s;
  if (step < tol.limit_floor) {
    out.value = nx * q0;
    out.converged = false;
    return out;
  }
  double q1 = quotient(sign * step);
  double r_prev = (q1 - s * q0) / (1.0 - s);
  double gap = std::numeric_limits<double>::infinity();
  double cur = r_prev;
  bool hit_floor = false;
  int settled = 0;
  for (;;) {
    step *= s;
    if (step < tol.limit_floor) {
      hit_floor = true;
      break;
    }
    const double q2 = quotient(sign * step);
    const double d1 = q1 - q0, d2 = q2 - q1;
    double amplify = (1.0 + s) / (1.0 - s);
    if (d1 == 0 || d2 == 0) {
      cur = q2;
      amplify = 1.0;
    } else if (const double r = d2 / d1; r > 0 && r <= 0.95) {
      cur = q2 + d2 * r / (1.0 - r);
      amplify = 1.0 + 4.0 / (1.0 - r);
    } else {
      cur = (q2 - s * q1) / (1.0 - s);
    }
    const double noise = q_noise * amplify * (nx + step * ny) / step;
    gap = std::abs(cur - r_prev);
    settled = gap <= tol.abs_tol + tol.rel_tol * std::abs(cur) + noise ? settled + 1 : 0;
    if (settled == 2) break;
    q0 = q1;
    q1 = q2;
    r_prev = cur;
  }
  out.value = nx * cur;
  out.err_estimate = nx * (std::isfinite(gap) ? gap : 0.0);
  if (hit_floor && gap > 10.0 * (tol.abs_tol + tol.rel_tol * std::abs(cur))) out.converged = false;
  return out;
}

/// The semi-inner product [y|x] of a smooth space, which is rho(x,y).
inline double sip_smooth(const NormedSpace& space, const Vector& x, const Vector& y, const Tolerance& tol = {}) {
  if (!space.smooth_by_construction())
    throw domain_error("semi-inner product not unique: " + space.label() + " is not smooth");
  return rho(space, x, y, tol);
}

}  // namespace normderiv

#endif  // NORMDERIV_DERIVATIVES_HPP
