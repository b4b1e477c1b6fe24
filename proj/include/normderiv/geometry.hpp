#ifndef NORMDERIV_GEOMETRY_HPP
#define NORMDERIV_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "derivatives.hpp"
#include "norms.hpp"
#include "orthogonality.hpp"
#include "sampling.hpp"

namespace normderiv {

/// Sampled delta-parallelogram law: r(z,w) = (|z+w|^2 + |z-w|^2 - 2|w|^2) / (2|z|^2)
/// must stay in [1 - delta, 1 + delta].
struct ParallelogramReport {
  double delta_min_feasible = 0;
  double r_min = 1;
  double r_max = 1;
  std::pair<Vector, Vector> argmin;
  std::pair<Vector, Vector> argmax;
  bool admissible = true;  ///< some delta < 1 fits the sample
  std::string note;
};

struct ModulusSample {
  double arg;
  double value;
};

struct ModuliReport {
  std::vector<ModulusSample> sigma_samples;   ///< (eps, upper estimate of the modulus of convexity)
  std::vector<ModulusSample> varrho_samples;  ///< (t, lower estimate of the modulus of smoothness)
};

struct GeometryReport {
  ParallelogramReport parallelogram;
  ModuliReport moduli;
};

namespace detail {

inline std::vector<Vector> normalized_probes(const NormedSpace& space) {
  std::vector<Vector> out;
  for (auto& p : probe_vectors(space)) out.push_back(p / unchecked_norm(space, p));
  return out;
}

}  // namespace detail

inline ParallelogramReport parallelogram_delta(const NormedSpace& space, std::size_t n, Seed seed) {
  if (n < 32) throw domain_error("parallelogram_delta: n must be >= 32");
  ParallelogramReport rep;
  rep.r_min = std::numeric_limits<double>::infinity();
  rep.r_max = -std::numeric_limits<double>::infinity();
  auto visit = [&](const Vector& z, const Vector& w) {
    const double nz = detail::unchecked_norm(space, z);
    if (nz == 0) return;
    const double a = detail::unchecked_norm(space, z + w);
    const double b = detail::unchecked_norm(space, z - w);
    const double nw = detail::unchecked_norm(space, w);
    const double r = (a * a + b * b - 2.0 * nw * nw) / (2.0 * nz * nz);
    if (r < rep.r_min) {
      rep.r_min = r;
      rep.argmin = {z, w};
    }
    if (r > rep.r_max) {
      rep.r_max = r;
      rep.argmax = {z, w};
    }
  };
  const auto probes = probe_vectors(space);
  for (const auto& z : probes)
    for (const auto& w : probes) visit(z, w);
  Rng rng(seed.derive(31));
  const auto zs = sample_unit_vectors(space.dim(), n, seed.derive(32), space);
  const auto ws = sample_unit_vectors(space.dim(), n, seed.derive(33), space);
  for (std::size_t i = 0; i < n; ++i) visit(zs[i], rng.uniform(0.25, 4.0) * ws[i]);
  rep.delta_min_feasible = std::max({rep.r_max - 1.0, 1.0 - rep.r_min, 0.0});
  rep.admissible = rep.delta_min_feasible < 1.0;
  if (!rep.admissible) rep.note = "no delta < 1 admissible on sample";
  return rep;
}

/// Upper estimates of sigma(eps) = inf{1 - |(x+y)/2| : |x| = |y| = 1, |x-y| >= eps}
/// and lower estimates of varrho(t) = sup{(|x+y| + |x-y|)/2 - 1 : |x| = 1, |y| = t}.
/// Both are regularized to be nondecreasing without losing their direction.
inline ModuliReport moduli_estimates(const NormedSpace& space, std::vector<double> eps_grid,
                                     std::vector<double> t_grid, std::size_t n, Seed seed) {
  if (eps_grid.empty() || t_grid.empty()) throw domain_error("moduli_estimates: grids must be nonempty");
  for (double e : eps_grid)
    if (!(e > 0 && e <= 2)) throw domain_error("moduli_estimates: eps must lie in (0, 2]");
  for (double t : t_grid)
    if (!(t > 0) || !std::isfinite(t)) throw domain_error("moduli_estimates: t must be > 0");
  std::sort(eps_grid.begin(), eps_grid.end());
  std::sort(t_grid.begin(), t_grid.end());

  std::vector<Vector> units = detail::normalized_probes(space);
  for (auto& v : sample_unit_vectors(space.dim(), n, seed.derive(41), space)) units.push_back(std::move(v));
  const auto partners = sample_unit_vectors(space.dim(), n, seed.derive(42), space);

  ModuliReport rep;
  std::vector<double> sigma(eps_grid.size(), std::numeric_limits<double>::infinity());
  std::vector<double> varrho(t_grid.size(), -std::numeric_limits<double>::infinity());
  auto visit_sigma = [&](const Vector& x, const Vector& y) {
    const double dist = detail::unchecked_norm(space, x - y);
    const double value = 1.0 - detail::unchecked_norm(space, Vector(0.5 * (x + y)));
    for (std::size_t k = 0; k < eps_grid.size(); ++k)
      if (dist >= eps_grid[k] * (1.0 - 1e-12)) sigma[k] = std::min(sigma[k], value);
  };
  auto visit_varrho = [&](const Vector& x, const Vector& y_unit) {
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
      const Vector y = t_grid[k] * y_unit;
      const double value =
          0.5 * (detail::unchecked_norm(space, x + y) + detail::unchecked_norm(space, x - y)) - 1.0;
      varrho[k] = std::max(varrho[k], value);
    }
  };
  const std::size_t probe_count = units.size() - n;
  for (std::size_t i = 0; i < probe_count; ++i)
    for (std::size_t j = 0; j < probe_count; ++j) {
      visit_sigma(units[i], units[j]);
      visit_varrho(units[i], units[j]);
    }
  for (const auto& x : units) visit_sigma(x, -x);
  for (std::size_t i = 0; i < n; ++i) {
    visit_sigma(units[probe_count + i], partners[i]);
    visit_varrho(units[probe_count + i], partners[i]);
  }

  // sigma(eps) <= sigma(eps') for eps <= eps', so a running min from the
  // right keeps an upper bound; varrho takes a running max from the left.
  for (std::size_t k = sigma.size() - 1; k-- > 0;) sigma[k] = std::min(sigma[k], sigma[k + 1]);
  for (std::size_t k = 1; k < varrho.size(); ++k) varrho[k] = std::max(varrho[k], varrho[k - 1]);
  for (std::size_t k = 0; k < eps_grid.size(); ++k) rep.sigma_samples.push_back({eps_grid[k], sigma[k]});
  for (std::size_t k = 0; k < t_grid.size(); ++k) rep.varrho_samples.push_back({t_grid[k], varrho[k]});
  return rep;
}

/// Result of comparing rho* across two norms on the same R^d.
struct NormComparisonReport {
  double m_est = 0;  ///< sampled inf of |x|_2 / |x|_1
  double M_est = 0;  ///< sampled sup of |x|_2 / |x|_1
  double alpha = 0;  ///< max{1 + M^4, 1 + 1/m^4}
  double alpha_printed = 0;  ///< max{1 + M^2, 1 + 1/m^2}
  Verdict bound_holds;
  Verdict printed_bound;  ///< same check with alpha_printed; witness where it fails
  Verdict proportional;
};

namespace detail {

/// Checks |rho*_1(x,y) - rho*_2(x,y)| <= c * min{|x|_1^2|y|_1^2, |x|_2^2|y|_2^2}.
/// residual is the worst excess (<= 0 holds).
inline Verdict rho_star_gap_bound(const NormedSpace& s1, const NormedSpace& s2, double c,
                                  const std::vector<std::pair<Vector, Vector>>& pairs, const Tolerance& tol) {
  Verdict out;
  out.tol_used = tol;
  out.residual = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : pairs) {
    const double a1 = unchecked_norm(s1, x) * unchecked_norm(s1, y);
    const double a2 = unchecked_norm(s2, x) * unchecked_norm(s2, y);
    const double bound = c * std::min(a1 * a1, a2 * a2);
    const double lhs = std::abs(rho_star(s1, x, y, tol) - rho_star(s2, x, y, tol));
    const double excess = lhs - bound;
    if (excess > out.residual) {
      out.residual = excess;
      out.scale = bound;
    }
    if (excess > tol.abs_tol + tol.rel_tol * std::max(bound, lhs) && out.holds) {
      out.holds = false;
      out.witness = std::make_pair(x, y);
    }
  }
  return out;
}

/// Planted x = y pairs (where the constant is tight) followed by probe pairs
/// and n random pairs.
inline std::vector<std::pair<Vector, Vector>> comparison_pairs(const NormedSpace& space, std::size_t n, Seed seed) {
  std::vector<std::pair<Vector, Vector>> out;
  const auto probes = probe_vectors(space);
  for (const auto& x : probes) out.emplace_back(x, x);
  for (const auto& x : probes)
    for (const auto& y : probes) out.emplace_back(x, y);
  const auto xs = sample_unit_vectors(space.dim(), n, seed.derive(51), space);
  const auto ys = sample_unit_vectors(space.dim(), n, seed.derive(52), space);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(xs[i], ys[i]);
  return out;
}

}  // namespace detail

inline NormComparisonReport norm_comparison_alpha(const NormedSpace& space1, const NormedSpace& space2,
                                                  std::size_t n, Seed seed, const Tolerance& tol = {}) {
  if (space1.dim() != space2.dim()) throw dimension_error("norm_comparison_alpha: spaces differ in dimension");
  NormComparisonReport rep;
  rep.m_est = std::numeric_limits<double>::infinity();
  auto ratios = detail::normalized_probes(space1);
  for (auto& v : sample_unit_vectors(space1.dim(), n, seed.derive(53), space1)) ratios.push_back(std::move(v));
  for (const auto& x : ratios) {
    const double r = detail::unchecked_norm(space2, x) / detail::unchecked_norm(space1, x);
    rep.m_est = std::min(rep.m_est, r);
    rep.M_est = std::max(rep.M_est, r);
  }
  const double m2 = rep.m_est * rep.m_est;
  const double big2 = rep.M_est * rep.M_est;
  rep.alpha = std::max(1.0 + big2 * big2, 1.0 + 1.0 / (m2 * m2));
  rep.alpha_printed = std::max(1.0 + big2, 1.0 + 1.0 / m2);

  const auto pairs = detail::comparison_pairs(space1, n, seed);
  rep.bound_holds = detail::rho_star_gap_bound(space1, space2, rep.alpha, pairs, tol);
  rep.printed_bound = detail::rho_star_gap_bound(space1, space2, rep.alpha_printed, pairs, tol);
  rep.proportional.tol_used = tol;
  rep.proportional.scale = rep.M_est;
  rep.proportional.residual = rep.M_est - rep.m_est;
  rep.proportional.holds = approx_zero(rep.proportional.residual, rep.proportional.scale, tol);
  return rep;
}

/// Outcome of comparing rho* with the square of a weighted inner product
/// <x,y> = sum w_i x_i y_i under the delta pairing
/// sqrt(1-delta)|x| <= |||x||| <= sqrt(1+delta)|x|.
struct InnerBoundReport {
  double constant = 0;          ///< max{1+(1+delta)^2, 1+1/(1-delta)^2}
  double constant_printed = 0;  ///< (2-delta)/(1-delta)
  Verdict pairing;
  Verdict bound;
  Verdict printed_bound;
};

inline InnerBoundReport rhostar_inner_bound_check(const NormedSpace& space, const Vector& inner_weights,
                                                  double delta, std::size_t n, Seed seed, const Tolerance& tol = {}) {
  if (!(delta >= 0 && delta < 1)) throw domain_error("rhostar_inner_bound_check: delta must lie in [0, 1)");
  const NormedSpace inner = NormedSpace::weighted_lp(2.0, inner_weights);
  if (inner.dim() != space.dim()) throw dimension_error("rhostar_inner_bound_check: weights length != dim");

  InnerBoundReport rep;
  rep.constant = std::max(1.0 + (1.0 + delta) * (1.0 + delta), 1.0 + 1.0 / ((1.0 - delta) * (1.0 - delta)));
  rep.constant_printed = (2.0 - delta) / (1.0 - delta);

  rep.pairing.tol_used = tol;
  rep.pairing.scale = 1.0;
  rep.pairing.residual = -std::numeric_limits<double>::infinity();
  auto units = detail::normalized_probes(space);
  for (auto& v : sample_unit_vectors(space.dim(), n, seed.derive(61), space)) units.push_back(std::move(v));
  const double lo = std::sqrt(1.0 - delta);
  const double hi = std::sqrt(1.0 + delta);
  for (const auto& x : units) {
    const double r = detail::unchecked_norm(inner, x);
    const double excess = std::max(lo - r, r - hi);
    rep.pairing.residual = std::max(rep.pairing.residual, excess);
    if (excess > tol.abs_tol + tol.rel_tol && rep.pairing.holds) {
      rep.pairing.holds = false;
      rep.pairing.witness = std::make_pair(x, x);
      rep.pairing.note = "weights do not satisfy the delta pairing";
    }
  }

  // For the weighted Euclidean norm, rho*(x,y) = <x,y>^2.
  const auto pairs = detail::comparison_pairs(space, n, seed);
  rep.bound = detail::rho_star_gap_bound(space, inner, rep.constant, pairs, tol);
  rep.printed_bound = detail::rho_star_gap_bound(space, inner, rep.constant_printed, pairs, tol);
  return rep;
}

}  // namespace normderiv

#endif  // NORMDERIV_GEOMETRY_HPP
