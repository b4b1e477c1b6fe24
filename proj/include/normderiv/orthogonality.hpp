#ifndef NORMDERIV_ORTHOGONALITY_HPP
#define NORMDERIV_ORTHOGONALITY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"
#include "derivatives.hpp"
#include "line_search.hpp"
#include "norms.hpp"

namespace normderiv {

/// The orthogonality relations: Birkhoff-James, isosceles, the four norm
/// derivative relations and semi-inner-product orthogonality.
enum class Flavor { B, I, rho_minus, rho_plus, rho, rho_star, s };

inline constexpr std::array<Flavor, 7> all_flavors = {Flavor::B,   Flavor::I,        Flavor::rho_minus, Flavor::rho_plus,
                                                      Flavor::rho, Flavor::rho_star, Flavor::s};

inline std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::B: return "B";
    case Flavor::I: return "I";
    case Flavor::rho_minus: return "rho_minus";
    case Flavor::rho_plus: return "rho_plus";
    case Flavor::rho: return "rho";
    case Flavor::rho_star: return "rho_star";
    case Flavor::s: return "s";
  }
  return "?";
}

inline std::optional<Flavor> parse_flavor(std::string_view name) {
  for (Flavor f : all_flavors)
    if (to_string(f) == name) return f;
  return std::nullopt;
}

/// Outcome of a relation test or a sampled theorem check.
///
/// For equation-type relations `holds` is approx_zero(residual, scale,
/// tol_used). For inequality-type checks `residual` is the worst violation
/// (<= 0 means the inequality held everywhere).
struct Verdict {
  bool holds = true;
  double residual = 0;
  double scale = 0;
  Tolerance tol_used{};
  std::optional<std::pair<Vector, Vector>> witness;
  std::string note;
};

/// Decides x ⊥_flavor y. Zero vectors are orthogonal to everything.
inline Verdict is_orthogonal(const NormedSpace& space, const Vector& x, const Vector& y, Flavor flavor,
                             const Tolerance& tol = {}) {
  const double nx = norm_eval(space, x);
  const double ny = norm_eval(space, y);
  if (flavor == Flavor::s && !space.smooth_by_construction())
    throw domain_error("s-orthogonality requires a smooth space; " + space.label() + " is not");

  Verdict v;
  v.tol_used = tol;
  if (nx == 0 || ny == 0) {
    v.note = "zero vector";
    return v;
  }

  switch (flavor) {
    case Flavor::B: {
      const double lo = rho_minus(space, x, y, tol).value;
      const double hi = rho_plus(space, x, y, tol).value;
      v.residual = std::max(lo, 0.0) + std::max(-hi, 0.0);
      v.scale = nx * ny;
      break;
    }
    case Flavor::I:
      v.residual = std::abs(norm_eval(space, x + y) - norm_eval(space, x - y));
      v.scale = nx + ny;
      break;
    case Flavor::rho_minus:
      v.residual = std::abs(rho_minus(space, x, y, tol).value);
      v.scale = nx * ny;
      break;
    case Flavor::rho_plus:
      v.residual = std::abs(rho_plus(space, x, y, tol).value);
      v.scale = nx * ny;
      break;
    case Flavor::rho:
    case Flavor::s:
      v.residual = std::abs(rho(space, x, y, tol));
      v.scale = nx * ny;
      break;
    case Flavor::rho_star:
      v.residual = std::abs(rho_star(space, x, y, tol));
      v.scale = nx * nx * ny * ny;
      break;
  }
  v.holds = approx_zero(v.residual, v.scale, tol);
  return v;
}

/// Birkhoff-James orthogonality straight from the definition: minimizes the
/// convex function lambda -> |x + lambda y| on [-B, B], B = 2|x|/|y| + 1,
/// which contains every minimizer.
inline Verdict birkhoff_minimization_oracle(const NormedSpace& space, const Vector& x, const Vector& y,
                                            const Tolerance& tol = {}) {
  const double nx = norm_eval(space, x);
  const double ny = norm_eval(space, y);
  Verdict v;
  v.tol_used = tol;
  v.scale = nx;
  if (nx == 0 || ny == 0) {
    v.note = "zero vector";
    return v;
  }
  const double bound = 2.0 * nx / ny + 1.0;
  auto f = [&](double lambda) { return detail::unchecked_norm(space, x + lambda * y); };
  auto m = golden_section_minimize(f, -bound, bound, 1e-13 * bound);
  const double min_value = std::min(m.value, nx);
  v.residual = nx - min_value;
  v.holds = v.residual <= tol.abs_tol + tol.rel_tol * nx;
  if (!v.holds) v.witness = std::make_pair(x, Vector(m.argmin * y));
  return v;
}

struct OrthogonalSetPoint {
  double theta;
  Vector direction;
  double signed_value;  ///< Relation value whose zeros define the set (>= 0 for B).
  Verdict verdict;
};

struct OrthogonalSetProfile {
  std::vector<OrthogonalSetPoint> points;
  /// Grid cells [theta_k, theta_k+1) that contain a tolerance-zero at their
  /// left end or a sign change; the last cell closes at theta = pi.
  std::vector<std::size_t> zero_cells;
};

namespace detail {

inline double flavor_signed_value(const NormedSpace& space, const Vector& x, const Vector& y, Flavor f,
                                  const Tolerance& tol) {
  switch (f) {
    case Flavor::B: return is_orthogonal(space, x, y, f, tol).residual;
    case Flavor::I: return norm_eval(space, x + y) - norm_eval(space, x - y);
    case Flavor::rho_minus: return rho_minus(space, x, y, tol).value;
    case Flavor::rho_plus: return rho_plus(space, x, y, tol).value;
    case Flavor::rho:
    case Flavor::s: return rho(space, x, y, tol);
    case Flavor::rho_star: return rho_star(space, x, y, tol);
  }
  return 0;
}

}  // namespace detail

/// Traces the flavor relation over the half circle y(θ) = cos θ u + sin θ v,
/// θ ∈ [0, π), a section of the orthogonal set [x]^flavor.
inline OrthogonalSetProfile sample_orthogonal_set(const NormedSpace& space, const Vector& x, const Vector& u,
                                                  const Vector& v, Flavor flavor, std::size_t resolution,
                                                  const Tolerance& tol = {}) {
  detail::require_dim(space, x, "x");
  detail::require_dim(space, u, "u");
  detail::require_dim(space, v, "v");
  if (resolution < 8) throw domain_error("sample_orthogonal_set: resolution must be >= 8");
  if (!detail::linearly_independent(u, v)) throw domain_error("sample_orthogonal_set: u and v are dependent");

  OrthogonalSetProfile out;
  out.points.reserve(resolution);
  for (std::size_t k = 0; k < resolution; ++k) {
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(resolution);
    Vector dir = std::cos(theta) * u + std::sin(theta) * v;
    Verdict verdict = is_orthogonal(space, x, dir, flavor, tol);
    const double value = detail::flavor_signed_value(space, x, dir, flavor, tol);
    out.points.push_back({theta, std::move(dir), value, std::move(verdict)});
  }
  const double closing = detail::flavor_signed_value(space, x, Vector(-u), flavor, tol);
  for (std::size_t k = 0; k < resolution; ++k) {
    const double a = out.points[k].signed_value;
    const double b = k + 1 < resolution ? out.points[k + 1].signed_value : closing;
    if (out.points[k].verdict.holds || (a < 0 && b > 0) || (a > 0 && b < 0)) out.zero_cells.push_back(k);
  }
  return out;
}

}  // namespace normderiv

#endif  // NORMDERIV_ORTHOGONALITY_HPP
