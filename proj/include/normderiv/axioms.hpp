#ifndef NORMDERIV_AXIOMS_HPP
#define NORMDERIV_AXIOMS_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>

#include "constructions.hpp"
#include "core.hpp"
#include "maps.hpp"
#include "norms.hpp"
#include "orthogonality.hpp"
#include "sampling.hpp"

namespace normderiv {

/// Sampled check that (X, ⊥_rho*) is an orthogonality space:
/// O1 zero totality, O2 independence, O3 homogeneity, O4 Thalesian property.
struct AxiomReport {
  Verdict o1;
  Verdict o2;
  Verdict o3;
  Verdict o4;
  std::size_t o4_samples = 0;
  std::size_t o4_failures = 0;
  bool holds() const { return o1.holds && o2.holds && o3.holds && o4.holds; }
};

/// Lambda schedule for O4 sample k: 0, 0.5, 1, 2, then uniform on [0, 5].
inline double axiom_lambda(std::size_t k, Rng& rng) {
  constexpr double fixed[] = {0.0, 0.5, 1.0, 2.0};
  return k % 5 < 4 ? fixed[k % 5] : rng.uniform(0.0, 5.0);
}

inline AxiomReport orthogonality_space_axioms(const NormedSpace& space, std::size_t n, Seed seed,
                                              const Tolerance& tol = {}) {
  if (space.dim() < 2) throw domain_error("orthogonality_space_axioms: dimension must be >= 2");
  AxiomReport rep;
  for (Verdict* v : {&rep.o1, &rep.o2, &rep.o3, &rep.o4}) v->tol_used = tol;

  const Vector zero = Vector::Zero(space.dim());
  for (const auto& x : detail::unit_sample_with_probes(space, n, seed.derive(71))) {
    if (!is_orthogonal(space, x, zero, Flavor::rho_star, tol).holds ||
        !is_orthogonal(space, zero, x, Flavor::rho_star, tol).holds) {
      rep.o1.holds = false;
      rep.o1.witness = std::make_pair(x, zero);
      break;
    }
  }

  const auto pairs = detail::rho_star_pairs(space, n, seed.derive(72), tol);
  Rng rng(seed.derive(73));
  for (const auto& [x, y] : pairs) {
    if (detail::unchecked_norm(space, x) == 0 || detail::unchecked_norm(space, y) == 0) continue;
    if (!is_orthogonal(space, x, y, Flavor::rho_star, tol).holds) continue;
    if (rep.o2.holds && !detail::linearly_independent(x, y)) {
      rep.o2.holds = false;
      rep.o2.witness = std::make_pair(x, y);
    }
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    const Verdict scaled = is_orthogonal(space, Vector(a * x), Vector(b * y), Flavor::rho_star, tol);
    if (scaled.scale > 0) rep.o3.residual = std::max(rep.o3.residual, scaled.residual / scaled.scale);
    if (rep.o3.holds && !scaled.holds) {
      rep.o3.holds = false;
      rep.o3.witness = std::make_pair(Vector(a * x), Vector(b * y));
    }
  }
  rep.o3.scale = 1.0;

  Rng lambdas(seed.derive(74));
  Rng points(seed.derive(75));
  rep.o4.scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    Vector x = points.uniform_vector(space.dim());
    const double lambda = axiom_lambda(k, lambdas);
    const auto d = thalesian_decompose(space, x, lambda, seed.derive(1000 + k), tol);
    ++rep.o4_samples;
    rep.o4.residual = std::max(rep.o4.residual, detail::normalized_badness(d));
    if (!d.holds) {
      ++rep.o4_failures;
      if (rep.o4.holds) {
        rep.o4.holds = false;
        rep.o4.witness = std::make_pair(x, d.y);
        rep.o4.note = "first failure at lambda = " + std::to_string(lambda);
      }
    }
  }
  if (rep.o4_failures > 0)
    rep.o4.note += "; failures " + std::to_string(rep.o4_failures) + "/" + std::to_string(rep.o4_samples);
  return rep;
}

}  // namespace normderiv

#endif  // NORMDERIV_AXIOMS_HPP
