#ifndef NORMDERIV_SMOOTHNESS_HPP
#define NORMDERIV_SMOOTHNESS_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "core.hpp"
#include "derivatives.hpp"
#include "norms.hpp"
#include "orthogonality.hpp"
#include "sampling.hpp"

namespace normderiv {

struct SmoothnessWitness {
  Vector x;
  Vector y;
  double gap = 0;  ///< rho_+(x,y) - rho_-(x,y)
};

struct InclusionRow {
  Flavor from;
  Flavor to;
  Verdict verdict;
};

struct SmoothnessReport {
  Verdict smooth;
  std::optional<SmoothnessWitness> witness;
  std::vector<InclusionRow> relation_tables;
};

/// The inclusions tested by smoothness_report; all hold iff the space is smooth.
inline constexpr std::array<std::pair<Flavor, Flavor>, 5> smoothness_inclusions = {{
    {Flavor::B, Flavor::rho_star},
    {Flavor::rho, Flavor::rho_star},
    {Flavor::rho_star, Flavor::rho},
    {Flavor::rho_star, Flavor::rho_plus},
    {Flavor::rho_star, Flavor::rho_minus},
}};

namespace detail {

/// Maps an arbitrary pair (a, b) to a pair satisfying `flavor`. `k` selects
/// among the members the generator can produce.
inline std::pair<Vector, Vector> generate_orthogonal_pair(const NormedSpace& space, const Vector& a, const Vector& b,
                                                          Flavor flavor, std::size_t k, Rng& rng,
                                                          const Tolerance& tol) {
  const double na = unchecked_norm(space, a);
  if (na == 0) return {a, b};
  const double n2 = na * na;
  switch (flavor) {
    case Flavor::B: {
      // Any alpha in [rho_-(a,b), rho_+(a,b)] / |a|^2 gives a ⊥_B b - alpha a.
      const double lo = rho_minus(space, a, b, tol).value;
      const double hi = rho_plus(space, a, b, tol).value;
      const double fractions[] = {0.5, 0.0, 1.0};
      const double f = k % 4 < 3 ? fractions[k % 4] : rng.unit();
      return {a, b - ((lo + f * (hi - lo)) / n2) * a};
    }
    case Flavor::rho_minus: return {a, rhostar_projection(space, a, b, Side::left, tol)};
    case Flavor::rho_plus: return {a, rhostar_projection(space, a, b, Side::right, tol)};
    case Flavor::rho_star: return {a, rhostar_projection(space, a, b, k % 2 ? Side::left : Side::right, tol)};
    case Flavor::rho:
    case Flavor::s: return {a, b - (rho(space, a, b, tol) / n2) * a};
    case Flavor::I: {
      const double nb = unchecked_norm(space, b);
      if (nb == 0) return {a, b};
      const Vector u = a / na;
      const Vector v = b / nb;
      return {u + v, u - v};
    }
  }
  throw error("no generator for flavor");
}

}  // namespace detail

/// Generates pairs with x ⊥_from y and checks x ⊥_to y on each. Pairs come
/// from probe pairs already satisfying `from`, then the generator applied to
/// probe pairs, then the generator applied to n random pairs.
inline Verdict relation_inclusion_check(const NormedSpace& space, Flavor from, Flavor to, std::size_t n, Seed seed,
                                        const Tolerance& tol = {}) {
  if ((from == Flavor::s || to == Flavor::s) && !space.smooth_by_construction())
    throw domain_error("s-orthogonality requires a smooth space; " + space.label() + " is not");
  Verdict out;
  out.tol_used = tol;
  double worst = -1;
  auto visit = [&](const Vector& x, const Vector& y) {
    const Verdict v = is_orthogonal(space, x, y, to, tol);
    if (!v.holds && out.holds) {
      out.holds = false;
      out.witness = std::make_pair(x, y);
    }
    const double normalized = v.scale > 0 ? v.residual / v.scale : 0.0;
    if (normalized > worst) {
      worst = normalized;
      out.residual = v.residual;
      out.scale = v.scale;
    }
  };

  Rng rng(seed.derive(11));
  const auto probes = probe_vectors(space);
  std::vector<Vector> ordered_y = sign_patterns(space.dim());
  for (auto& v : signed_basis(space.dim())) ordered_y.push_back(std::move(v));
  for (auto& v : polyhedral_kinks(space, tol)) ordered_y.push_back(std::move(v));

  for (const auto& x : probes)
    for (const auto& y : ordered_y)
      if (is_orthogonal(space, x, y, from, tol).holds) visit(x, y);
  std::size_t k = 0;
  for (const auto& x : probes)
    for (const auto& y : ordered_y) {
      auto [gx, gy] = detail::generate_orthogonal_pair(space, x, y, from, k++, rng, tol);
      visit(gx, gy);
    }
  const auto xs = sample_unit_vectors(space.dim(), n, seed.derive(12), space);
  const auto ys = sample_unit_vectors(space.dim(), n, seed.derive(13), space);
  for (std::size_t i = 0; i < n; ++i) {
    auto [gx, gy] = detail::generate_orthogonal_pair(space, xs[i], ys[i], from, i, rng, tol);
    visit(gx, gy);
  }
  return out;
}

/// Smooth iff rho_+ - rho_- vanishes (to tolerance) on every sampled pair.
/// Probe directions (axes, sign patterns, polyhedral kinks) are always
/// included since non-smooth points have measure zero.
inline SmoothnessReport smoothness_report(const NormedSpace& space, std::size_t n, Seed seed,
                                          const Tolerance& tol = {}) {
  if (n < 32) throw domain_error("smoothness_report: n must be >= 32");
  SmoothnessReport report;
  report.smooth.tol_used = tol;
  report.smooth.scale = 1.0;
  double worst_normalized = 0;
  auto visit = [&](const Vector& x, const Vector& y) {
    const double nx = detail::unchecked_norm(space, x);
    const double ny = detail::unchecked_norm(space, y);
    if (nx == 0 || ny == 0) return;
    const double gap = rho_plus(space, x, y, tol).value - rho_minus(space, x, y, tol).value;
    if (!approx_zero(gap, nx * ny, tol)) report.smooth.holds = false;
    worst_normalized = std::max(worst_normalized, gap / (nx * ny));
    if (!report.witness || gap > report.witness->gap) report.witness = SmoothnessWitness{x, y, gap};
  };

  const auto probes = probe_vectors(space);
  std::vector<Vector> ordered_y = sign_patterns(space.dim());
  for (auto& v : signed_basis(space.dim())) ordered_y.push_back(std::move(v));
  for (auto& v : polyhedral_kinks(space, tol)) ordered_y.push_back(std::move(v));
  for (const auto& x : probes)
    for (const auto& y : ordered_y) visit(x, y);
  const auto xs = sample_unit_vectors(space.dim(), n, seed.derive(21), space);
  const auto ys = sample_unit_vectors(space.dim(), n, seed.derive(22), space);
  for (std::size_t i = 0; i < n; ++i) visit(xs[i], ys[i]);

  report.smooth.residual = worst_normalized;
  if (report.smooth.holds) {
    report.witness.reset();
  } else {
    report.smooth.witness = std::make_pair(report.witness->x, report.witness->y);
  }
  for (const auto& [from, to] : smoothness_inclusions)
    report.relation_tables.push_back({from, to, relation_inclusion_check(space, from, to, n, seed, tol)});
  return report;
}

}  // namespace normderiv

#endif  // NORMDERIV_SMOOTHNESS_HPP
