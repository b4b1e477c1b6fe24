#ifndef NORMDERIV_CONSTRUCTIONS_HPP
#define NORMDERIV_CONSTRUCTIONS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "derivatives.hpp"
#include "norms.hpp"

namespace normderiv {

/// p = y - (rho_±(x,y)/|x|^2) x, so that rho_±(x,p) = 0 and x ⊥_rho* p.
/// Side::left uses rho_-, Side::right uses rho_+.
inline Vector rhostar_projection(const NormedSpace& space, const Vector& x, const Vector& y, Side side,
                                 const Tolerance& tol = {}) {
  const double nx = norm_eval(space, x);
  detail::require_dim(space, y, "y");
  if (nx == 0) throw domain_error("rhostar_projection: x must be nonzero");
  const double r = side == Side::right ? rho_plus(space, x, y, tol).value : rho_minus(space, x, y, tol).value;
  return y - (r / (nx * nx)) * x;
}

/// |rho*(x, tx+y) - (t^2|x|^4 + 2t|x|^2 rho(x,y) + rho*(x,y))|.
inline double quadratic_expansion_residual(const NormedSpace& space, const Vector& x, const Vector& y, double t,
                                           const Tolerance& tol = {}) {
  if (!std::isfinite(t)) throw domain_error("quadratic_expansion_residual: non-finite value");
  const double nx = norm_eval(space, x);
  const double n2 = nx * nx;
  const double lhs = rho_star(space, x, Vector(y + t * x), tol);
  const double rhs = t * t * n2 * n2 + 2.0 * t * n2 * rho(space, x, y, tol) + rho_star(space, x, y, tol);
  return std::abs(lhs - rhs);
}

/// Optional restriction of the witness search to span{u, v}.
struct WitnessPlane {
  Vector u;
  Vector v;
};

namespace detail {

/// A witness must beat this margin: rho_+(x,w) > margin * |x| |w|.
inline constexpr double witness_margin = 1e-3;

inline std::vector<Vector> witness_candidates(const NormedSpace& space, Seed seed, const WitnessPlane* plane) {
  std::vector<Vector> out;
  const Eigen::Index dim = space.dim();
  Rng rng(seed);
  if (plane) {
    out.push_back(plane->u);
    out.push_back(-plane->u);
    out.push_back(plane->v);
    out.push_back(-plane->v);
    for (Eigen::Index k = 0; k < 10 * dim; ++k) out.push_back(rng.uniform(-1, 1) * plane->u + rng.uniform(-1, 1) * plane->v);
    return out;
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    Vector e = Vector::Zero(dim);
    e[i] = 1;
    out.push_back(e);
    out.push_back(-e);
  }
  for (Eigen::Index k = 0; k < 10 * dim; ++k) out.push_back(rng.uniform_vector(dim));
  return out;
}

inline bool is_witness(const NormedSpace& space, const Vector& x, const Vector& w, const Tolerance& tol) {
  if (!linearly_independent(x, w)) return false;
  const double nw = unchecked_norm(space, w);
  return rho_plus(space, x, w, tol).value > witness_margin * unchecked_norm(space, x) * nw;
}

inline std::vector<Vector> all_witnesses(const NormedSpace& space, const Vector& x, Seed seed,
                                         const WitnessPlane* plane, const Tolerance& tol) {
  std::vector<Vector> out;
  for (auto& w : witness_candidates(space, seed, plane))
    if (is_witness(space, x, w, tol)) out.push_back(std::move(w));
  return out;
}

}  // namespace detail

/// Finds w, linearly independent of x, with rho_+(x,w) > 0. Candidates are
/// tried in a fixed order: +-e_i, then 10*dim seeded random directions.
inline Vector find_witness_direction(const NormedSpace& space, const Vector& x, Seed seed,
                                     const std::optional<WitnessPlane>& plane = std::nullopt,
                                     const Tolerance& tol = {}) {
  const double nx = norm_eval(space, x);
  if (nx == 0) throw domain_error("find_witness_direction: x must be nonzero");
  if (space.dim() < 2) throw domain_error("find_witness_direction: dimension must be >= 2");
  if (plane) {
    detail::require_dim(space, plane->u, "plane.u");
    detail::require_dim(space, plane->v, "plane.v");
  }
  for (auto& w : detail::witness_candidates(space, seed, plane ? &*plane : nullptr))
    if (detail::is_witness(space, x, w, tol)) return w;
  throw error("no witness found");
}

struct LemmaRoot {
  Vector z;
  double t0 = 0;
  double phi = 0;         ///< phi(t0)
  bool degraded = false;  ///< bisection collapsed onto a jump; t0 minimizes |phi| on a grid
  int iterations = 0;
};

/// Thrown when bisection exceeds max_bisect_iters; carries the best point.
struct lemma_root_error : error {
  lemma_root_error(const std::string& what, LemmaRoot best_point) : error(what), best(std::move(best_point)) {}
  LemmaRoot best;
};

namespace detail {

inline double lemma_phi(const NormedSpace& space, const Vector& x, const Vector& w, double nx, double lambda,
                        double t, const Tolerance& tol) {
  const Vector z = x + t * w;
  const double nz = unchecked_norm(space, z);
  return nx * nx * nz * nz / (1.0 + lambda) -
         rho_minus(space, x, z, tol).value * rho_minus(space, z, x, tol).value;
}

}  // namespace detail

/// Finds z = x + t0 w with rho_-(x,z) rho_-(z,x) = |x|^2 |z|^2 / (1 + lambda)
/// by bisecting phi(t) = |x|^2|x+tw|^2/(1+lambda) - rho_-(x,x+tw) rho_-(x+tw,x)
/// on [t1, 0], t1 = -|x|^2 / rho_+(x,w).
inline LemmaRoot solve_lemma_root(const NormedSpace& space, const Vector& x, const Vector& w, double lambda,
                                  const Tolerance& tol = {}) {
  tol.validate();
  const double nx = norm_eval(space, x);
  detail::require_dim(space, w, "w");
  if (!std::isfinite(lambda) || lambda < 0) throw domain_error("solve_lemma_root: lambda must be finite and >= 0");
  if (nx == 0) throw domain_error("solve_lemma_root: x must be nonzero");
  if (lambda == 0) return {x, 0.0, 0.0, false, 0};
  const double rp = rho_plus(space, x, w, tol).value;
  if (!(rp > 0)) throw domain_error("solve_lemma_root: need rho_+(x,w) > 0, got " + std::to_string(rp));

  auto phi = [&](double t) { return detail::lemma_phi(space, x, w, nx, lambda, t, tol); };
  auto scale_at = [&](double t) {
    const double nz = detail::unchecked_norm(space, Vector(x + t * w));
    return nx * nx * nz * nz;
  };
  const double t1 = -nx * nx / rp;
  double lo = t1;
  double hi = 0.0;
  const double phi_lo = phi(lo);
  const double phi_hi = phi(hi);
  const double slack_lo = tol.abs_tol + tol.rel_tol * scale_at(lo);
  const double slack_hi = tol.abs_tol + tol.rel_tol * scale_at(hi);
  if (!(phi_lo > -slack_lo) || !(phi_hi < slack_hi))
    throw error("solve_lemma_root: bracket sign contract failed: phi(t1=" + std::to_string(t1) +
                ")=" + std::to_string(phi_lo) + " (want > 0), phi(0)=" + std::to_string(phi_hi) + " (want < 0)");

  const double eps = std::numeric_limits<double>::epsilon();
  const double width_goal = 1e-12 * std::abs(t1);
  LemmaRoot best{x, 0.0, phi_hi, false, 0};
  auto consider = [&](double t, double value) {
    if (std::abs(value) < std::abs(best.phi)) {
      best.t0 = t;
      best.phi = value;
    }
  };
  consider(lo, phi_lo);

  int it = 0;
  bool done = false;
  for (; it < tol.max_bisect_iters; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double value = phi(mid);
    consider(mid, value);
    if (std::abs(value) <= 64.0 * eps * scale_at(mid)) {
      best.t0 = mid;
      best.phi = value;
      done = true;
      ++it;
      break;
    }
    if (value > 0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= width_goal) {
      done = true;
      ++it;
      break;
    }
  }
  best.iterations = it;
  best.z = x + best.t0 * w;
  if (!done) throw lemma_root_error("solve_lemma_root: max_bisect_iters exceeded", best);

  if (!approx_zero(best.phi, scale_at(best.t0), tol)) {
    // The bracket closed on a jump of phi: fall back to the best grid point.
    constexpr int grid = 1024;
    for (int k = 0; k <= grid; ++k) {
      const double t = t1 * (1.0 - static_cast<double>(k) / grid);
      consider(t, phi(t));
    }
    best.degraded = true;
    best.z = x + best.t0 * w;
  }
  return best;
}

/// Output of the Thalesian construction: x ⊥_rho* y and x+y ⊥_rho* lambda x - y.
struct DecompositionResult {
  Vector y;
  Vector z;
  Vector w;
  double t0 = 0;
  double residual_first = 0;   ///< |rho*(x, y)|
  double residual_second = 0;  ///< |rho*(x+y, lambda x - y)|
  double scale_first = 0;      ///< |x|^2 |y|^2
  double scale_second = 0;     ///< |x+y|^2 |lambda x - y|^2
  bool holds = true;
  bool degraded = false;
  int witnesses_tried = 0;
};

namespace detail {

inline DecompositionResult decomposition_from_root(const NormedSpace& space, const Vector& x, double lambda,
                                                   const Vector& w, const LemmaRoot& root, const Tolerance& tol) {
  DecompositionResult r;
  r.z = root.z;
  r.w = w;
  r.t0 = root.t0;
  r.degraded = root.degraded;
  const double nz = unchecked_norm(space, root.z);
  r.y = -x + ((1.0 + lambda) / (nz * nz)) * rho_minus(space, root.z, x, tol).value * root.z;
  const Vector u = x + r.y;
  const Vector v = lambda * x - r.y;
  const double nx = unchecked_norm(space, x);
  const double ny = unchecked_norm(space, r.y);
  const double nu = unchecked_norm(space, u);
  const double nv = unchecked_norm(space, v);
  r.residual_first = std::abs(rho_star(space, x, r.y, tol));
  r.residual_second = std::abs(rho_star(space, u, v, tol));
  r.scale_first = nx * nx * ny * ny;
  r.scale_second = nu * nu * nv * nv;
  r.holds = approx_zero(r.residual_first, r.scale_first, tol) && approx_zero(r.residual_second, r.scale_second, tol);
  return r;
}

inline double normalized_badness(const DecompositionResult& r) {
  auto part = [](double res, double scale) { return scale > 0 ? res / scale : res; };
  return std::max(part(r.residual_first, r.scale_first), part(r.residual_second, r.scale_second));
}

}  // namespace detail

/// Builds y with x ⊥_rho* y and x+y ⊥_rho* lambda x - y via
/// y = -x + ((1+lambda)/|z|^2) rho_-(z,x) z. Witness directions are tried in
/// search order until both relations verify; otherwise the attempt with the
/// smallest normalized residual is returned with holds = false.
inline DecompositionResult thalesian_decompose(const NormedSpace& space, const Vector& x, double lambda, Seed seed,
                                               const Tolerance& tol = {},
                                               const std::optional<WitnessPlane>& plane = std::nullopt) {
  const double nx = norm_eval(space, x);
  if (!std::isfinite(lambda) || lambda < 0) throw domain_error("thalesian_decompose: lambda must be finite and >= 0");
  const Eigen::Index dim = space.dim();
  if (nx == 0) {
    DecompositionResult r;
    r.y = Vector::Zero(dim);
    r.z = Vector::Zero(dim);
    r.w = Vector::Zero(dim);
    return r;
  }
  if (lambda == 0) {
    DecompositionResult r;
    r.y = Vector::Zero(dim);
    r.z = x;
    r.w = Vector::Zero(dim);
    r.scale_second = nx * nx * nx * nx;
    return r;
  }
  if (plane) {
    detail::require_dim(space, plane->u, "plane.u");
    detail::require_dim(space, plane->v, "plane.v");
  }

  const auto witnesses = detail::all_witnesses(space, x, seed, plane ? &*plane : nullptr, tol);
  if (witnesses.empty()) throw error("no witness found");
  std::optional<DecompositionResult> best;
  int tried = 0;
  for (const auto& w : witnesses) {
    ++tried;
    LemmaRoot root;
    try {
      root = solve_lemma_root(space, x, w, lambda, tol);
    } catch (const lemma_root_error& e) {
      root = e.best;
      root.degraded = true;
    }
    auto r = detail::decomposition_from_root(space, x, lambda, w, root, tol);
    if (!best || detail::normalized_badness(r) < detail::normalized_badness(*best)) best = r;
    if (r.holds) break;
  }
  best->witnesses_tried = tried;
  return *best;
}

}  // namespace normderiv

#endif  // NORMDERIV_CONSTRUCTIONS_HPP
