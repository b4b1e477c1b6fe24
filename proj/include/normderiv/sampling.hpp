#ifndef NORMDERIV_SAMPLING_HPP
#define NORMDERIV_SAMPLING_HPP

#include <cstddef>
#include <vector>

#include "core.hpp"
#include "norms.hpp"

namespace normderiv {

/// `n` vectors of norm 1: coordinates uniform on [-1, 1], redrawn on zero,
/// then normalized in `space`.
inline std::vector<Vector> sample_unit_vectors(Eigen::Index dim, std::size_t n, Seed seed, const NormedSpace& space) {
  if (dim < 1) throw domain_error("sample_unit_vectors: dim must be >= 1");
  if (dim != space.dim()) throw dimension_error("sample_unit_vectors: dim != space dimension");
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(n);
  while (out.size() < n) {
    Vector v = rng.uniform_vector(dim);
    const double nv = detail::unchecked_norm(space, v);
    if (nv == 0) continue;
    out.push_back(v / nv);
  }
  return out;
}

/// +-e_i in index order: e_0, -e_0, e_1, ...
inline std::vector<Vector> signed_basis(Eigen::Index dim) {
  std::vector<Vector> out;
  for (Eigen::Index i = 0; i < dim; ++i) {
    Vector e = Vector::Zero(dim);
    e[i] = 1;
    out.push_back(e);
    out.push_back(-e);
  }
  return out;
}

/// All +-1 sign patterns, starting from (1,...,1), for dim <= 10; only
/// +-(1,...,1) beyond that.
inline std::vector<Vector> sign_patterns(Eigen::Index dim) {
  std::vector<Vector> out;
  if (dim > 10) {
    out.push_back(Vector::Ones(dim));
    out.push_back(-Vector::Ones(dim));
    return out;
  }
  const std::size_t count = std::size_t{1} << dim;
  for (std::size_t mask = 0; mask < count; ++mask) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[dim - 1 - i] = (mask >> i) & 1U ? -1.0 : 1.0;
    out.push_back(v);
  }
  return out;
}

/// Points where two polyhedral functionals are simultaneously active
/// (vertices of the unit ball in the plane). Empty for other norms.
inline std::vector<Vector> polyhedral_kinks(const NormedSpace& space, const Tolerance& tol = {}) {
  std::vector<Vector> out;
  const auto* poly = std::get_if<PolyhedralNorm>(&space.spec());
  if (!poly) return out;
  const Matrix& a = poly->functionals;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    for (Eigen::Index k = j + 1; k < a.rows(); ++k) {
      for (double s : {1.0, -1.0}) {
        Matrix sub(2, a.cols());
        sub.row(0) = a.row(j);
        sub.row(1) = a.row(k);
        const Eigen::Matrix2d gram = sub * sub.transpose();
        if (std::abs(gram.determinant()) <= 1e-12 * gram.norm() * gram.norm()) continue;
        const Vector x = sub.transpose() * gram.inverse() * Eigen::Vector2d(1.0, s);
        const double nx = detail::unchecked_norm(space, x);
        if (nx == 0) continue;
        const Vector ax = a * x;
        if (std::abs(std::abs(ax[j]) - nx) <= tol.rel_tol * nx && std::abs(std::abs(ax[k]) - nx) <= tol.rel_tol * nx)
          out.push_back(x / nx);
      }
    }
  }
  return out;
}

/// Deterministic candidates where non-smooth behaviour concentrates:
/// signed axes, sign patterns and polyhedral kinks, in that order.
inline std::vector<Vector> probe_vectors(const NormedSpace& space) {
  std::vector<Vector> out = signed_basis(space.dim());
  for (auto& v : sign_patterns(space.dim())) out.push_back(std::move(v));
  for (auto& v : polyhedral_kinks(space)) out.push_back(std::move(v));
  return out;
}

}  // namespace normderiv

#endif  // NORMDERIV_SAMPLING_HPP
