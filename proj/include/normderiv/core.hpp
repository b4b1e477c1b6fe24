#ifndef NORMDERIV_CORE_HPP
#define NORMDERIV_CORE_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace normderiv {

/// Elements of the normed space. Every coordinate must be finite.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Vectors (or maps) whose dimensions do not line up.
struct dimension_error : error {
  using error::error;
};

/// Argument outside the mathematical domain of an operation.
struct domain_error : error {
  using error::error;
};

/// Tolerance policy shared by every module.
///
/// `abs_tol`/`rel_tol` decide approximate zeros. The `limit_*` fields drive
/// the one-sided quotient schedule: the first step is
/// `limit_t0 * (|x| + 1) / (|y| + 1)`, shrinking by `limit_shrink` until the
/// step falls below `limit_floor`.
struct Tolerance {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double limit_t0 = 0.0625;
  double limit_shrink = 0.5;
  double limit_floor = 0x1p-40;
  int max_bisect_iters = 200;

  void validate() const {
    const bool finite = std::isfinite(abs_tol) && std::isfinite(rel_tol) && std::isfinite(limit_t0) &&
                        std::isfinite(limit_shrink) && std::isfinite(limit_floor);
    if (!finite) throw domain_error("tolerance: non-finite field");
    if (abs_tol < 0 || rel_tol < 0) throw domain_error("tolerance: abs_tol and rel_tol must be >= 0");
    if (!(limit_t0 > 0) || !(limit_floor > 0) || !(limit_floor < limit_t0))
      throw domain_error("tolerance: need 0 < limit_floor < limit_t0");
    if (!(limit_shrink > 0 && limit_shrink < 1)) throw domain_error("tolerance: limit_shrink must lie in (0,1)");
    if (max_bisect_iters <= 0) throw domain_error("tolerance: max_bisect_iters must be positive");
  }

  /// Threshold used when comparing numeric-limit values against closed forms.
  static Tolerance numeric_agreement() {
    Tolerance t;
    t.abs_tol = 1e-7;
    t.rel_tol = 1e-5;
    return t;
  }

  static Tolerance with(double abs, double rel) {
    Tolerance t;
    t.abs_tol = abs;
    t.rel_tol = rel;
    return t;
  }
};

inline bool approx_zero(double v, double scale, const Tolerance& tol = {}) {
  if (!std::isfinite(v) || !std::isfinite(scale)) throw domain_error("non-finite value");
  if (scale < 0) throw domain_error("approx_zero: scale must be >= 0");
  return std::abs(v) <= tol.abs_tol + tol.rel_tol * scale;
}

inline void require_finite(const Vector& x, const char* what) {
  if (x.size() < 1) throw dimension_error(std::string(what) + ": empty vector");
  if (!x.allFinite()) throw domain_error(std::string(what) + ": non-finite value");
}

/// Seed for every sampled quantity. Same seed, same stream.
struct Seed {
  std::uint64_t value = 0;

  /// Independent sub-stream for a named purpose.
  constexpr Seed derive(std::uint64_t tag) const {
    std::uint64_t z = value ^ (tag * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return Seed{z ^ (z >> 31)};
  }
};

/// splitmix64 generator. Bit-identical on every platform, unlike the
/// standard distributions.
class Rng {
 public:
  explicit Rng(Seed seed) : state_(seed.value) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  Vector uniform_vector(Eigen::Index dim, double lo = -1.0, double hi = 1.0) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = uniform(lo, hi);
    return v;
  }

 private:
  std::uint64_t state_;
};

namespace detail {

inline double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

/// Gram-determinant test on the Euclidean coordinates.
inline bool linearly_independent(const Vector& a, const Vector& b, double rel = 1e-9) {
  const double aa = a.squaredNorm();
  const double bb = b.squaredNorm();
  if (aa == 0 || bb == 0) return false;
  const double ab = a.dot(b);
  return aa * bb - ab * ab > rel * aa * bb;
}

}  // namespace detail

}  // namespace normderiv

#endif  // NORMDERIV_CORE_HPP
