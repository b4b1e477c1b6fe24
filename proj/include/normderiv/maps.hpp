#ifndef NORMDERIV_MAPS_HPP
#define NORMDERIV_MAPS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "core.hpp"
#include "derivatives.hpp"
#include "norms.hpp"
#include "orthogonality.hpp"
#include "sampling.hpp"

namespace normderiv {

/// A linear map T: domain -> codomain given by a dense matrix
/// (rows = codomain dimension, cols = domain dimension).
class LinearMap {
 public:
  LinearMap(Matrix matrix, NormedSpace domain, NormedSpace codomain)
      : matrix_(std::move(matrix)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
    if (matrix_.cols() != domain_.dim() || matrix_.rows() != codomain_.dim())
      throw dimension_error("linear map: matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", spaces need " + std::to_string(codomain_.dim()) +
                            "x" + std::to_string(domain_.dim()));
    if (!matrix_.allFinite()) throw domain_error("linear map: non-finite value");
  }

  /// T on a single space.
  LinearMap(Matrix matrix, const NormedSpace& space) : LinearMap(std::move(matrix), space, space) {}

  const Matrix& matrix() const { return matrix_; }
  const NormedSpace& domain() const { return domain_; }
  const NormedSpace& codomain() const { return codomain_; }
  bool is_zero() const { return (matrix_.array() == 0).all(); }

  Vector operator()(const Vector& x) const {
    detail::require_dim(domain_, x, "x");
    return matrix_ * x;
  }

 private:
  Matrix matrix_;
  NormedSpace domain_;
  NormedSpace codomain_;
};

struct OperatorNormEstimate {
  double op_norm_est = 0;     ///< sampled sup of |Tx| over |x| = 1 (never above |T|)
  double lower_bound_est = 0; ///< sampled inf, never below [T]
};

struct MapAnalysisReport {
  double op_norm_est = 0;
  double lower_bound_est = 0;
  Verdict similarity;
  Verdict preserves_rho_star;
  double scaling_residual = 0;
  Verdict bound;
};

namespace detail {

/// Unit vectors of `space`: normalized probes first, then n seeded samples.
inline std::vector<Vector> unit_sample_with_probes(const NormedSpace& space, std::size_t n, Seed seed) {
  std::vector<Vector> out;
  for (auto& p : probe_vectors(space)) out.push_back(p / unchecked_norm(space, p));
  for (auto& v : sample_unit_vectors(space.dim(), n, seed, space)) out.push_back(std::move(v));
  return out;
}

/// rho*-orthogonal pairs: raw probe pairs that already satisfy x ⊥_rho* y,
/// projections of probe pairs, then projections of n random pairs with the
/// side alternating.
inline std::vector<std::pair<Vector, Vector>> rho_star_pairs(const NormedSpace& space, std::size_t n, Seed seed,
                                                             const Tolerance& tol) {
  std::vector<std::pair<Vector, Vector>> out;
  // A projection that cancels to rounding noise (y parallel to x) is zero.
  auto add_projection = [&](const Vector& x, const Vector& y, Side side) {
    Vector p = rhostar_projection(space, x, y, side, tol);
    if (unchecked_norm(space, p) > 1e-9 * unchecked_norm(space, y)) out.emplace_back(x, std::move(p));
  };
  const auto probes = probe_vectors(space);
  for (const auto& x : probes)
    for (const auto& y : probes)
      if (is_orthogonal(space, x, y, Flavor::rho_star, tol).holds) out.emplace_back(x, y);
  std::size_t k = 0;
  for (const auto& x : probes)
    for (const auto& y : probes) add_projection(x, y, (k++ % 2) ? Side::left : Side::right);
  const auto xs = sample_unit_vectors(space.dim(), n, seed.derive(1), space);
  const auto ys = sample_unit_vectors(space.dim(), n, seed.derive(2), space);
  for (std::size_t i = 0; i < n; ++i) add_projection(xs[i], ys[i], i % 2 ? Side::left : Side::right);
  return out;
}

inline Verdict zero_map_verdict(const Tolerance& tol) {
  Verdict v;
  v.holds = false;
  v.tol_used = tol;
  v.note = "zero map excluded";
  return v;
}

}  // namespace detail

/// Sampled sup and inf of |Tx| over the unit sphere, including +-e_i and
/// +-1 patterns where l1 / l_inf operator norms are attained.
inline OperatorNormEstimate operator_norm_estimates(const LinearMap& t, std::size_t n, Seed seed) {
  if (n < 1) throw domain_error("operator_norm_estimates: n must be >= 1");
  OperatorNormEstimate est{0.0, std::numeric_limits<double>::infinity()};
  for (const auto& x : detail::unit_sample_with_probes(t.domain(), n, seed)) {
    const double v = detail::unchecked_norm(t.codomain(), t.matrix() * x);
    est.op_norm_est = std::max(est.op_norm_est, v);
    est.lower_bound_est = std::min(est.lower_bound_est, v);
  }
  return est;
}

/// Checks x ⊥_rho* y => Tx ⊥_rho* Ty on generated rho*-orthogonal pairs,
/// including pairs produced by the Thalesian decomposition.
inline Verdict preserves_rho_star(const LinearMap& t, std::size_t n, Seed seed, const Tolerance& tol = {}) {
  if (t.is_zero()) return detail::zero_map_verdict(tol);
  auto pairs = detail::rho_star_pairs(t.domain(), n, seed, tol);
  if (t.domain().dim() >= 2) {
    const std::size_t decompositions = std::min<std::size_t>(n / 20, 16);
    const auto xs = sample_unit_vectors(t.domain().dim(), decompositions, seed.derive(3), t.domain());
    const double lambdas[] = {0.5, 1.0, 2.0, 3.0};
    for (std::size_t i = 0; i < decompositions; ++i) {
      const double lambda = lambdas[i % 4];
      const auto d = thalesian_decompose(t.domain(), xs[i], lambda, seed.derive(100 + i), tol);
      if (!d.holds) continue;
      pairs.emplace_back(xs[i], d.y);
      pairs.emplace_back(Vector(xs[i] + d.y), Vector(lambda * xs[i] - d.y));
    }
  }
  Verdict out;
  out.tol_used = tol;
  double worst = -1;
  for (const auto& [x, y] : pairs) {
    const Verdict v = is_orthogonal(t.codomain(), t.matrix() * x, t.matrix() * y, Flavor::rho_star, tol);
    const double normalized = v.scale > 0 ? v.residual / v.scale : 0.0;
    if (!v.holds && out.holds) {
      out.holds = false;
      out.witness = std::make_pair(x, y);
    }
    if (normalized > worst) {
      worst = normalized;
      out.residual = v.residual;
      out.scale = v.scale;
    }
  }
  return out;
}

/// |Tx| = c |x| with c = op_norm_est on every sample (n >= 32 enforced).
inline Verdict similarity_check(const LinearMap& t, std::size_t n, Seed seed, const Tolerance& tol = {}) {
  if (t.is_zero()) return detail::zero_map_verdict(tol);
  n = std::max<std::size_t>(n, 32);
  const double c = operator_norm_estimates(t, n, seed).op_norm_est;
  Verdict out;
  out.tol_used = tol;
  out.scale = 1.0;
  for (const auto& x : detail::unit_sample_with_probes(t.domain(), n, seed)) {
    const double ratio = detail::unchecked_norm(t.codomain(), t.matrix() * x);
    const double r = std::abs(ratio - c) / c;
    if (r > out.residual) {
      out.residual = r;
      out.witness = std::make_pair(x, Vector(t.matrix() * x));
    }
  }
  out.holds = approx_zero(out.residual, out.scale, tol);
  if (out.holds) out.witness.reset();
  return out;
}

/// max |rho*(Tx,Ty) - c^4 rho*(x,y)| / (c^4 |x|^2 |y|^2), c = op_norm_est.
inline double rho_star_scaling_check(const LinearMap& t, std::size_t n, Seed seed, const Tolerance& tol = {}) {
  const double c = operator_norm_estimates(t, std::max<std::size_t>(n, 1), seed).op_norm_est;
  const double c4 = c * c * c * c;
  const auto xs = detail::unit_sample_with_probes(t.domain(), n, seed.derive(4));
  const auto ys = detail::unit_sample_with_probes(t.domain(), n, seed.derive(5));
  double worst = 0;
  auto visit = [&](const Vector& x, const Vector& y) {
    const double nx = detail::unchecked_norm(t.domain(), x);
    const double ny = detail::unchecked_norm(t.domain(), y);
    const double scale = c4 * nx * nx * ny * ny;
    if (scale == 0) return;
    const double lhs = rho_star(t.codomain(), t.matrix() * x, t.matrix() * y, tol);
    worst = std::max(worst, std::abs(lhs - c4 * rho_star(t.domain(), x, y, tol)) / scale);
  };
  const auto probes = probe_vectors(t.domain());
  for (const auto& x : probes)
    for (const auto& y : probes) visit(x, y);
  for (std::size_t i = 0; i < xs.size(); ++i) visit(xs[i], ys[i]);
  return worst;
}

/// (1/3)|T||x| <= |Tx| <= 3[T]|x|, asserted only when the hypothesis
/// x ⊥_I y => Tx ⊥_rho* Ty survives n isosceles pairs x = u+v, y = u-v
/// with |u| = |v|.
inline Verdict bound_check_isosceles(const LinearMap& t, std::size_t n, Seed seed, const Tolerance& tol = {}) {
  if (t.is_zero()) return detail::zero_map_verdict(tol);
  Verdict out;
  out.tol_used = tol;
  const auto us = detail::unit_sample_with_probes(t.domain(), n, seed.derive(6));
  const auto vs = detail::unit_sample_with_probes(t.domain(), n, seed.derive(7));
  for (std::size_t i = 0; i < us.size(); ++i) {
    const Vector x = us[i] + vs[i];
    const Vector y = us[i] - vs[i];
    const Verdict h = is_orthogonal(t.codomain(), t.matrix() * x, t.matrix() * y, Flavor::rho_star, tol);
    if (!h.holds) {
      out.holds = false;
      out.residual = h.residual;
      out.scale = h.scale;
      out.witness = std::make_pair(x, y);
      out.note = "hypothesis_violated";
      return out;
    }
  }
  const auto est = operator_norm_estimates(t, std::max<std::size_t>(n, 1), seed);
  out.residual = -std::numeric_limits<double>::infinity();
  out.scale = est.op_norm_est;
  auto visit = [&](const Vector& x) {
    const double nx = detail::unchecked_norm(t.domain(), x);
    if (nx == 0) return;
    const double ntx = detail::unchecked_norm(t.codomain(), t.matrix() * x);
    const double violation = std::max(est.op_norm_est * nx / 3.0 - ntx, ntx - 3.0 * est.lower_bound_est * nx);
    if (violation > out.residual) {
      out.residual = violation;
      if (violation > tol.abs_tol + tol.rel_tol * est.op_norm_est * nx) out.witness = std::make_pair(x, Vector(t.matrix() * x));
    }
  };
  for (const auto& x : us) visit(x);
  for (std::size_t i = 0; i < us.size(); ++i) {
    visit(Vector(us[i] + vs[i]));
    visit(Vector(us[i] - vs[i]));
  }
  out.holds = !out.witness.has_value();
  out.note = out.holds ? "hypothesis not falsified; bound verified" : "hypothesis not falsified; bound violated";
  return out;
}

inline MapAnalysisReport analyze_map(const LinearMap& t, std::size_t n, Seed seed, const Tolerance& tol = {}) {
  MapAnalysisReport r;
  const auto est = operator_norm_estimates(t, n, seed);
  r.op_norm_est = est.op_norm_est;
  r.lower_bound_est = est.lower_bound_est;
  r.similarity = similarity_check(t, n, seed, tol);
  r.preserves_rho_star = preserves_rho_star(t, n, seed, tol);
  r.scaling_residual = t.is_zero() ? 0.0 : rho_star_scaling_check(t, n, seed, tol);
  r.bound = bound_check_isosceles(t, n, seed, tol);
  return r;
}

}  // namespace normderiv

#endif  // NORMDERIV_MAPS_HPP
