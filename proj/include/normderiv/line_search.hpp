#ifndef NORMDERIV_LINE_SEARCH_HPP
#define NORMDERIV_LINE_SEARCH_HPP

#include <cmath>

namespace normderiv {

struct ScalarMinimum {
  double argmin;
  double value;
  int evaluations;
};

/// Golden-section search for a convex (unimodal) f on [lo, hi]. Returns the
/// best evaluated point, so the reported value is always attained.
template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double x_tol, int max_iter = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  ScalarMinimum best = fc <= fd ? ScalarMinimum{c, fc, 0} : ScalarMinimum{d, fd, 0};
  for (int it = 0; it < max_iter && (hi - lo) > x_tol; ++it) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
      if (fc < best.value) best = {c, fc, 0};
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
      if (fd < best.value) best = {d, fd, 0};
    }
    ++evals;
  }
  best.evaluations = evals;
  return best;
}

}  // namespace normderiv

#endif  // NORMDERIV_LINE_SEARCH_HPP
