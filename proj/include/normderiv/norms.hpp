#ifndef NORMDERIV_NORMS_HPP
#define NORMDERIV_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "core.hpp"

namespace normderiv {

struct L1Norm {};
struct LinfNorm {};

/// (sum |x_i|^p)^(1/p), 1 < p < inf.
struct LpNorm {
  double p;
};

/// (sum w_i |x_i|^p)^(1/p) with strictly positive weights.
struct WeightedLpNorm {
  double p;
  Vector weights;
};

/// max_j |<a_j, x>| over the rows a_j of `functionals`.
struct PolyhedralNorm {
  Matrix functionals;
};

using NormSpec = std::variant<L1Norm, LinfNorm, LpNorm, WeightedLpNorm, PolyhedralNorm>;

/// A norm on R^dim. Construction validates the spec against the dimension.
class NormedSpace {
 public:
  NormedSpace(Eigen::Index dim, NormSpec spec) : dim_(dim), spec_(std::move(spec)) { validate(); }

  static NormedSpace l1(Eigen::Index dim) { return {dim, L1Norm{}}; }
  static NormedSpace linf(Eigen::Index dim) { return {dim, LinfNorm{}}; }
  static NormedSpace lp(Eigen::Index dim, double p) { return {dim, LpNorm{p}}; }
  static NormedSpace l2(Eigen::Index dim) { return lp(dim, 2.0); }
  static NormedSpace weighted_lp(double p, Vector weights) {
    const auto dim = weights.size();
    return {dim, WeightedLpNorm{p, std::move(weights)}};
  }
  static NormedSpace polyhedral(Matrix functionals) {
    const auto dim = functionals.cols();
    return {dim, PolyhedralNorm{std::move(functionals)}};
  }

  Eigen::Index dim() const { return dim_; }
  const NormSpec& spec() const { return spec_; }

  /// Lp and weighted Lp are Gateaux differentiable away from 0; every norm
  /// on R^1 is a multiple of |x|.
  bool smooth_by_construction() const {
    return dim_ == 1 || std::holds_alternative<LpNorm>(spec_) || std::holds_alternative<WeightedLpNorm>(spec_);
  }

  /// Short human-readable label, e.g. "l1", "lp:3", "poly[6x2]".
  std::string label() const {
    return std::visit(
        [&](const auto& s) -> std::string {
          using S = std::decay_t<decltype(s)>;
          std::ostringstream os;
          if constexpr (std::is_same_v<S, L1Norm>) {
            os << "l1";
          } else if constexpr (std::is_same_v<S, LinfNorm>) {
            os << "linf";
          } else if constexpr (std::is_same_v<S, LpNorm>) {
            os << "lp:" << s.p;
          } else if constexpr (std::is_same_v<S, WeightedLpNorm>) {
            os << "wlp:" << s.p << ":";
            for (Eigen::Index i = 0; i < s.weights.size(); ++i) os << (i ? "," : "") << s.weights[i];
          } else {
            os << "poly[" << s.functionals.rows() << "x" << s.functionals.cols() << "]";
          }
          os << "/R" << dim_;
          return os.str();
        },
        spec_);
  }

 private:
  void validate() const {
    if (dim_ < 1) throw domain_error("normed space: dimension must be >= 1");
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, LpNorm>) {
            check_p(s.p);
          } else if constexpr (std::is_same_v<S, WeightedLpNorm>) {
            check_p(s.p);
            if (s.weights.size() != dim_) throw dimension_error("weighted lp: one weight per coordinate required");
            if (!s.weights.allFinite() || (s.weights.array() <= 0).any())
              throw domain_error("weighted lp: weights must be finite and > 0");
          } else if constexpr (std::is_same_v<S, PolyhedralNorm>) {
            if (s.functionals.cols() != dim_) throw dimension_error("polyhedral: functional length != dim");
            if (s.functionals.rows() < 1 || !s.functionals.allFinite())
              throw domain_error("polyhedral: need finite functionals");
            Eigen::ColPivHouseholderQR<Matrix> qr(s.functionals);
            qr.setThreshold(1e-10);
            if (qr.rank() < dim_) throw domain_error("polyhedral: functionals must have full column rank");
          }
        },
        spec_);
  }

  static void check_p(double p) {
    if (!std::isfinite(p) || !(p > 1.0))
      throw domain_error("lp: need 1 < p < inf (use l1 / linf for the endpoints)");
  }

  Eigen::Index dim_;
  NormSpec spec_;
};

namespace detail {

inline void require_dim(const NormedSpace& space, const Vector& v, const char* what) {
  require_finite(v, what);
  if (v.size() != space.dim())
    throw dimension_error(std::string(what) + ": dimension " + std::to_string(v.size()) + " != space dimension " +
                          std::to_string(space.dim()));
}

inline double lp_value(const Vector& x, double p, const Vector* weights) {
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0) return 0.0;
  double s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double w = weights ? (*weights)[i] : 1.0;
    s += w * std::pow(std::abs(x[i]) / m, p);
  }
  return m * std::pow(s, 1.0 / p);
}

inline double unchecked_norm(const NormedSpace& space, const Vector& x) {
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, L1Norm>) {
          return x.cwiseAbs().sum();
        } else if constexpr (std::is_same_v<S, LinfNorm>) {
          return x.cwiseAbs().maxCoeff();
        } else if constexpr (std::is_same_v<S, LpNorm>) {
          return lp_value(x, s.p, nullptr);
        } else if constexpr (std::is_same_v<S, WeightedLpNorm>) {
          return lp_value(x, s.p, &s.weights);
        } else {
          return (s.functionals * x).cwiseAbs().maxCoeff();
        }
      },
      space.spec());
}

/// lim_{t->0+} (|x+ty| - |x|)/t without argument checks.
inline double unchecked_dplus(const NormedSpace& space, const Vector& x, const Vector& y, const Tolerance& tol) {
  const double nx = unchecked_norm(space, x);
  if (nx == 0) return unchecked_norm(space, y);
  return std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, L1Norm>) {
          double d = 0;
          for (Eigen::Index i = 0; i < x.size(); ++i) d += x[i] != 0 ? sgn(x[i]) * y[i] : std::abs(y[i]);
          return d;
        } else if constexpr (std::is_same_v<S, LinfNorm>) {
          double best = -std::numeric_limits<double>::infinity();
          for (Eigen::Index i = 0; i < x.size(); ++i)
            if (std::abs(nx - std::abs(x[i])) <= tol.rel_tol * nx) best = std::max(best, sgn(x[i]) * y[i]);
          return best;
        } else if constexpr (std::is_same_v<S, LpNorm> || std::is_same_v<S, WeightedLpNorm>) {
          // |x|^(1-p) |x_i|^(p-1) written as (|x_i|/|x|)^(p-1) to stay in range.
          double d = 0;
          for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            double w = 1.0;
            if constexpr (std::is_same_v<S, WeightedLpNorm>) w = s.weights[i];
            d += w * std::pow(std::abs(x[i]) / nx, s.p - 1.0) * sgn(x[i]) * y[i];
          }
          return d;
        } else {
          const Vector ax = s.functionals * x;
          const Vector ay = s.functionals * y;
          double best = -std::numeric_limits<double>::infinity();
          for (Eigen::Index j = 0; j < ax.size(); ++j) {
            if (std::abs(nx - std::abs(ax[j])) > tol.rel_tol * nx) continue;
            best = std::max(best, ax[j] != 0 ? sgn(ax[j]) * ay[j] : std::abs(ay[j]));
          }
          return best;
        }
      },
      space.spec());
}

}  // namespace detail

inline double norm_eval(const NormedSpace& space, const Vector& x) {
  detail::require_dim(space, x, "x");
  return detail::unchecked_norm(space, x);
}

/// Right derivative of t -> |x + t y| at t = 0 (equals |y| at x = 0).
inline double exact_dplus(const NormedSpace& space, const Vector& x, const Vector& y, const Tolerance& tol = {}) {
  detail::require_dim(space, x, "x");
  detail::require_dim(space, y, "y");
  return detail::unchecked_dplus(space, x, y, tol);
}

/// Left derivative, computed as -dplus(x, -y) so the reflection identity is exact.
inline double exact_dminus(const NormedSpace& space, const Vector& x, const Vector& y, const Tolerance& tol = {}) {
  detail::require_dim(space, x, "x");
  detail::require_dim(space, y, "y");
  return -detail::unchecked_dplus(space, x, -y, tol);
}

/// Reads polyhedral functionals: one row per line, comma-separated decimals,
/// no header. Blank lines are skipped.
inline Matrix parse_polyhedral_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw domain_error("polyhedral csv line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos)
        throw domain_error("polyhedral csv line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw dimension_error("polyhedral csv line " + std::to_string(lineno) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw domain_error("polyhedral csv: no functionals");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

inline Matrix read_polyhedral_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("polyhedral csv: cannot open '" + path + "'");
  return parse_polyhedral_csv(in);
}

}  // namespace normderiv

#endif  // NORMDERIV_NORMS_HPP
