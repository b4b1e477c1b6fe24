#include "suite.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>

#include "parse.hpp"

namespace normderiv::cli {

namespace {

using Pair = std::pair<Vector, Vector>;

struct Property {
  std::string name;
  std::string entry;
  bool passed = true;
  double worst = 0;
  std::size_t samples = 0;
  std::optional<Pair> witness;
  std::string note;

  Property(std::string n, std::string e) : name(std::move(n)), entry(std::move(e)) {}

  void check(bool ok, double normalized, const Vector& x, const Vector& y) {
    ++samples;
    if (std::isfinite(normalized)) worst = std::max(worst, normalized);
    if (!ok && passed) {
      passed = false;
      witness = Pair{x, y};
    }
  }

  void fail(const std::string& why) {
    passed = false;
    if (note.empty()) note = why;
  }

  Json to_json() const {
    Json j{{"property", name}, {"norm", entry}, {"passed", passed}, {"worst_residual", worst}, {"samples", samples}};
    j["witness"] = witness ? cli::to_json(*witness) : Json(nullptr);
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

struct Sizes {
  std::size_t pairs;
  std::size_t oracle;
  std::size_t birkhoff;
  std::size_t decompositions;
  std::size_t maps;
};

Sizes sizes_for(Profile p) {
  if (p == Profile::quick) return {200, 300, 500, 40, 200};
  return {1000, 1000, 500, 100, 1000};
}

bool is_inner_product(const NormedSpace& s) {
  if (const auto* lp = std::get_if<LpNorm>(&s.spec())) return lp->p == 2.0;
  if (const auto* w = std::get_if<WeightedLpNorm>(&s.spec())) return w->p == 2.0;
  return false;
}

/// l1, linf and unweighted lp are invariant under signed coordinate permutations.
bool is_symmetric(const NormedSpace& s) {
  return std::holds_alternative<L1Norm>(s.spec()) || std::holds_alternative<LinfNorm>(s.spec()) ||
         std::holds_alternative<LpNorm>(s.spec());
}

double inner(const NormedSpace& s, const Vector& x, const Vector& y) {
  if (const auto* w = std::get_if<WeightedLpNorm>(&s.spec())) return (w->weights.array() * x.array() * y.array()).sum();
  return x.dot(y);
}

/// Probe pairs followed by n random pairs with lengths in [0.5, 2].
std::vector<Pair> sample_pairs(const NormedSpace& s, std::size_t n, Seed seed) {
  std::vector<Pair> out;
  const auto probes = probe_vectors(s);
  for (const auto& x : probes)
    for (const auto& y : probes) out.emplace_back(x, y);
  const auto xs = sample_unit_vectors(s.dim(), n, seed.derive(1), s);
  const auto ys = sample_unit_vectors(s.dim(), n, seed.derive(2), s);
  Rng rng(seed.derive(3));
  for (std::size_t i = 0; i < n; ++i) {
    const double a = rng.uniform(0.5, 2.0);
    const double b = rng.uniform(0.5, 2.0);
    out.emplace_back(a * xs[i], b * ys[i]);
  }
  return out;
}

std::vector<Pair> generated_pairs(const NormedSpace& s, Flavor flavor, const std::vector<Pair>& base, Seed seed,
                                  const Tolerance& tol) {
  std::vector<Pair> out;
  Rng rng(seed);
  std::size_t k = 0;
  // Generators that cancel to rounding noise (y parallel to x) yield no pair.
  for (const auto& [x, y] : base) {
    auto pr = detail::generate_orthogonal_pair(s, x, y, flavor, k++, rng, tol);
    if (detail::unchecked_norm(s, pr.second) > 1e-9 * detail::unchecked_norm(s, y)) out.push_back(std::move(pr));
  }
  return out;
}

Matrix signed_permutation(Eigen::Index dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) m((i + 1) % dim, i) = i % 2 ? -1.0 : 1.0;
  return m;
}

Matrix rotation(Eigen::Index dim, double angle) {
  Matrix m = Matrix::Identity(dim, dim);
  m(0, 0) = std::cos(angle);
  m(0, 1) = -std::sin(angle);
  m(1, 0) = std::sin(angle);
  m(1, 1) = std::cos(angle);
  if (dim >= 3) {
    Matrix r = Matrix::Identity(dim, dim);
    r(1, 1) = std::cos(0.5 * angle);
    r(1, 2) = -std::sin(0.5 * angle);
    r(2, 1) = std::sin(0.5 * angle);
    r(2, 2) = std::cos(0.5 * angle);
    m = r * m;
  }
  return m;
}

void derivative_properties(const SuiteEntry& e, const std::vector<Pair>& pairs, Seed seed, const Sizes& sz,
                           const Tolerance& tol, std::vector<Property>& out) {
  const NormedSpace& s = e.space;
  Property order("norms.dminus_le_dplus", e.name);
  Property reflection("norms.reflection_identity", e.name);
  Property homog("norms.positive_homogeneity", e.name);
  Property ordering("derivatives.ordering", e.name);
  Property pr1_i("derivatives.pr1_homogeneity", e.name);
  Property pr1_ii("derivatives.pr1_bound", e.name);
  Property pr1_iv("derivatives.pr1_quadratic_expansion", e.name);
  Property translation("derivatives.translation_rule", e.name);
  Property symmetry("derivatives.rho_star_sign_symmetry", e.name);
  Rng rng(seed.derive(10));
  for (const auto& [x, y] : pairs) {
    const double nx = norm_eval(s, x);
    const double ny = norm_eval(s, y);
    const double dp = exact_dplus(s, x, y, tol);
    const double dm = exact_dminus(s, x, y, tol);
    order.check(dm <= dp, std::max(0.0, dm - dp) / ny, x, y);
    const Vector neg = -y;
    reflection.check(dm == -exact_dplus(s, x, neg, tol), std::abs(dm + exact_dplus(s, x, neg, tol)) / ny, x, y);
    const double c = rng.uniform(0.1, 10.0);
    const double dc = exact_dplus(s, Vector(c * x), y, tol);
    homog.check(std::abs(dc - dp) <= 1e-9 * ny, std::abs(dc - dp) / ny, x, y);

    const double rm = rho_minus(s, x, y, tol).value;
    const double rp = rho_plus(s, x, y, tol).value;
    ordering.check(rm <= rp, std::max(0.0, rm - rp) / (nx * ny), x, y);
    const double rs = rm * rp;
    const double scale = nx * nx * ny * ny;

    const double t = rng.uniform(-3.0, 3.0);
    const double a = rho_star(s, Vector(t * x), y, tol);
    const double b = rho_star(s, x, Vector(t * y), tol);
    const double hscale = t * t * scale;
    const double herr = std::max(std::abs(a - t * t * rs), std::abs(b - t * t * rs));
    pr1_i.check(herr <= 1e-9 * hscale + 1e-300, hscale > 0 ? herr / hscale : 0.0, x, y);

    pr1_ii.check(std::abs(rs) <= scale * (1 + 1e-12), std::abs(rs) / scale - 1.0, x, y);

    const double q = quadratic_expansion_residual(s, x, y, t, tol);
    const double qscale = std::max({1.0, nx * nx * nx * nx * (1 + t * t), std::abs(rs)});
    pr1_iv.check(q <= 1e-9 * qscale, q / qscale, x, y);

    const Vector shifted = t * x + y;
    const double tr_scale = nx * (std::abs(t) * nx + ny);
    const double e1 = std::abs(rho_plus(s, x, shifted, tol).value - (t * nx * nx + rp));
    const double e2 = std::abs(rho_minus(s, x, shifted, tol).value - (t * nx * nx + rm));
    translation.check(std::max(e1, e2) <= 1e-9 * tr_scale, std::max(e1, e2) / tr_scale, x, y);

    const double flip = rho_star(s, x, neg, tol);
    symmetry.check(std::abs(flip - rs) <= 1e-12 * scale, std::abs(flip - rs) / scale, x, y);
  }

  Property oracle("derivatives.oracle_agreement", e.name);
  const auto oracle_pairs = sample_pairs(s, sz.oracle, seed.derive(11));
  for (const auto& [x, y] : oracle_pairs) {
    for (Side side : {Side::left, Side::right}) {
      const double closed = side == Side::right ? rho_plus(s, x, y, tol).value : rho_minus(s, x, y, tol).value;
      const auto numeric = numeric_one_sided(s, x, y, side, tol);
      const double diff = std::abs(closed - numeric.value);
      const double allowed = std::max(1e-5 * std::abs(closed), 1e-7);
      oracle.check(diff <= allowed, diff / allowed, x, y);
    }
  }
  for (auto* p : {&order, &reflection, &homog, &oracle, &ordering, &pr1_i, &pr1_ii, &pr1_iv, &translation, &symmetry})
    out.push_back(std::move(*p));
}

void orthogonality_properties(const SuiteEntry& e, const std::vector<Pair>& pairs, Seed seed, const Sizes& sz,
                              const Tolerance& tol, std::vector<Property>& out) {
  const NormedSpace& s = e.space;
  const Vector zero = Vector::Zero(s.dim());

  Property o1("orthogonality.zero_totality", e.name);
  for (const auto& [x, y] : pairs) {
    (void)y;
    for (Flavor f : all_flavors) {
      if (f == Flavor::s && !s.smooth_by_construction()) continue;
      const bool ok = is_orthogonal(s, x, zero, f, tol).holds && is_orthogonal(s, zero, x, f, tol).holds;
      o1.check(ok, ok ? 0.0 : 1.0, x, zero);
    }
  }

  Property o2("orthogonality.independence", e.name);
  for (const auto& [x, y] : detail::rho_star_pairs(s, sz.pairs, seed.derive(20), tol)) {
    if (norm_eval(s, x) == 0 || norm_eval(s, y) == 0) continue;
    if (!is_orthogonal(s, x, y, Flavor::rho_star, tol).holds) continue;
    const bool ok = detail::linearly_independent(x, y);
    o2.check(ok, ok ? 0.0 : 1.0, x, y);
  }

  Property o3("orthogonality.homogeneity", e.name);
  Rng rng(seed.derive(21));
  for (Flavor f : {Flavor::B, Flavor::rho_star}) {
    for (const auto& [x, y] : generated_pairs(s, f, pairs, seed.derive(22), tol)) {
      if (!is_orthogonal(s, x, y, f, tol).holds) continue;
      const double a = rng.uniform(-2.0, 2.0);
      const double b = rng.uniform(-2.0, 2.0);
      const Verdict v = is_orthogonal(s, Vector(a * x), Vector(b * y), f, tol);
      o3.check(v.holds, v.scale > 0 ? v.residual / v.scale : 0.0, x, y);
    }
  }

  Property contain("orthogonality.containment", e.name);
  // rho* is a product, so its tolerance is quadratic in the factors' one.
  // Each implication is checked at the tolerance the premise actually implies.
  const Tolerance root_tol = Tolerance::with(std::sqrt(tol.abs_tol), std::sqrt(tol.rel_tol));
  auto containment_check = [&](const Vector& x, const Vector& y) {
    const double n = norm_eval(s, x) * norm_eval(s, y);
    const Tolerance product_tol = Tolerance::with(tol.abs_tol * std::max(n, 1.0), tol.rel_tol);
    const bool factor = is_orthogonal(s, x, y, Flavor::rho_minus, tol).holds ||
                        is_orthogonal(s, x, y, Flavor::rho_plus, tol).holds;
    const bool factor_root = is_orthogonal(s, x, y, Flavor::rho_minus, root_tol).holds ||
                             is_orthogonal(s, x, y, Flavor::rho_plus, root_tol).holds;
    const bool st = is_orthogonal(s, x, y, Flavor::rho_star, tol).holds;
    const bool st_product = is_orthogonal(s, x, y, Flavor::rho_star, product_tol).holds;
    const bool b_root = is_orthogonal(s, x, y, Flavor::B, root_tol).holds;
    const bool ok = (!factor || st_product) && (!st || (factor_root && b_root));
    contain.check(ok, ok ? 0.0 : 1.0, x, y);
  };
  for (const auto& [x, y] : pairs) containment_check(x, y);
  for (Flavor f : {Flavor::rho_minus, Flavor::rho_plus, Flavor::rho_star, Flavor::B})
    for (const auto& [x, y] : generated_pairs(s, f, pairs, seed.derive(23), tol)) containment_check(x, y);

  Property cross("orthogonality.birkhoff_cross_oracle", e.name);
  {
    const auto random = sample_pairs(s, sz.birkhoff / 2, seed.derive(24));
    const auto generated = generated_pairs(s, Flavor::B, sample_pairs(s, sz.birkhoff / 2, seed.derive(25)),
                                           seed.derive(26), tol);
    for (const auto* set : {&random, &generated})
      for (const auto& [x, y] : *set) {
        if (norm_eval(s, y) == 0) continue;
        // The minimizer sees a slope g only as a decrease of order g^2, so it
        // is compared with the derivative test at the square-root tolerance.
        // Conversely a slope within tol bounds the decrease by convexity.
        const double nx = norm_eval(s, x), ny = norm_eval(s, y);
        const bool a = is_orthogonal(s, x, y, Flavor::B, tol).holds;
        const bool a_root = is_orthogonal(s, x, y, Flavor::B, root_tol).holds;
        const Verdict b = birkhoff_minimization_oracle(s, x, y, tol);
        const double slope_bound = (2.0 * nx / ny + 1.0) * (tol.abs_tol + tol.rel_tol * nx * ny) / nx;
        const bool b_loose = b.holds || b.residual <= slope_bound;
        const bool ok = (!a || b_loose) && (!b.holds || a_root);
        cross.check(ok, ok ? 0.0 : 1.0, x, y);
      }
  }

  Property proj("constructions.projection_residual", e.name);
  for (const auto& [x, y] : pairs) {
    if (norm_eval(s, x) == 0) continue;
    for (Side side : {Side::left, Side::right}) {
      const Vector p = rhostar_projection(s, x, y, side, tol);
      const Verdict v = is_orthogonal(s, x, p, Flavor::rho_star, tol);
      proj.check(v.holds, v.scale > 0 ? v.residual / v.scale : 0.0, x, p);
    }
  }

  for (auto* p : {&o1, &o2, &o3, &contain, &cross, &proj}) out.push_back(std::move(*p));

  if (is_inner_product(s)) {
    Property agree("orthogonality.inner_product_flavors_agree", e.name);
    std::vector<Pair> all = pairs;
    for (Flavor f : {Flavor::rho, Flavor::I, Flavor::B})
      for (auto& pr : generated_pairs(s, f, pairs, seed.derive(27), tol)) all.push_back(std::move(pr));
    for (const auto& [x, y] : all) {
      const double nx = norm_eval(s, x);
      const double ny = norm_eval(s, y);
      const bool reference = approx_zero(inner(s, x, y), nx * ny, tol);
      bool ok = true;
      for (Flavor f : all_flavors) {
        if (f == Flavor::rho_star) continue;
        ok = ok && is_orthogonal(s, x, y, f, tol).holds == reference;
      }
      // rho* = <x,y>^2 here, so its verdicts pair with the reference as in containment.
      const bool reference_root = approx_zero(inner(s, x, y), nx * ny, root_tol);
      const Tolerance product_tol = Tolerance::with(tol.abs_tol * std::max(nx * ny, 1.0), tol.rel_tol);
      ok = ok && (!reference || is_orthogonal(s, x, y, Flavor::rho_star, product_tol).holds) &&
           (!is_orthogonal(s, x, y, Flavor::rho_star, tol).holds || reference_root);
      agree.check(ok, ok ? 0.0 : 1.0, x, y);
    }
    out.push_back(std::move(agree));
  }
}

void construction_properties(const SuiteEntry& e, Seed seed, const Sizes& sz, const Tolerance& tol,
                             std::vector<Property>& out, Json& observations) {
  const NormedSpace& s = e.space;
  if (s.dim() < 2) return;
  Property bracket("constructions.lemma_bracket", e.name);
  Property verified("constructions.decomposition_verified", e.name);
  Rng points(seed.derive(30));
  Rng lambdas(seed.derive(31));
  std::size_t successes = 0;
  std::size_t degraded = 0;
  for (std::size_t k = 0; k < sz.decompositions; ++k) {
    const Vector x = points.uniform_vector(s.dim());
    const double lambda = axiom_lambda(k, lambdas);
    if (lambda > 0) {
      const Vector w = find_witness_direction(s, x, seed.derive(32 + k), std::nullopt, tol);
      try {
        solve_lemma_root(s, x, w, lambda, tol);
        bracket.check(true, 0.0, x, w);
      } catch (const lemma_root_error&) {
        bracket.check(true, 0.0, x, w);
        bracket.note = "iteration cap reached on some samples";
      } catch (const error&) {
        bracket.check(false, 1.0, x, w);
      }
    }
    const auto d = thalesian_decompose(s, x, lambda, seed.derive(1000 + k), tol);
    if (lambda == 0) {
      const bool ok = (d.y.array() == 0).all() && d.holds;
      verified.check(ok, ok ? 0.0 : 1.0, x, d.y);
    }
    degraded += d.degraded ? 1 : 0;
    if (!d.holds) continue;
    ++successes;
    const Verdict first = is_orthogonal(s, x, d.y, Flavor::rho_star, tol);
    const Verdict second = is_orthogonal(s, Vector(x + d.y), Vector(lambda * x - d.y), Flavor::rho_star, tol);
    const double r1 = first.scale > 0 ? first.residual / first.scale : 0.0;
    const double r2 = second.scale > 0 ? second.residual / second.scale : 0.0;
    verified.check(first.holds && second.holds, std::max(r1, r2), x, d.y);
  }
  out.push_back(std::move(bracket));
  out.push_back(std::move(verified));
  observations.push_back(Json{{"observation", "constructions.decomposition_success"},
                              {"norm", e.name},
                              {"successes", successes},
                              {"attempts", sz.decompositions},
                              {"degraded", degraded}});
}

void analysis_properties(const SuiteEntry& e, Seed seed, const Sizes& sz, const Tolerance& tol,
                         std::vector<Property>& out) {
  const NormedSpace& s = e.space;
  const Eigen::Index dim = s.dim();

  Property similar("analysis.similarity_implies_preservation", e.name);
  std::vector<Matrix> similarities = {0.5 * Matrix::Identity(dim, dim)};
  if (is_symmetric(s) && dim >= 2) similarities.push_back(2.0 * signed_permutation(dim));
  if (const auto* lp = std::get_if<LpNorm>(&s.spec()); lp && lp->p == 2.0 && dim >= 2)
    similarities.push_back(rotation(dim, 0.7));
  for (const auto& m : similarities) {
    const LinearMap t(m, s);
    const Verdict sim = similarity_check(t, sz.maps, seed.derive(40), tol);
    if (!sim.holds) {
      similar.fail("similarity not detected for a similarity map");
      continue;
    }
    const Verdict pres = preserves_rho_star(t, sz.maps, seed.derive(41), tol);
    const double scaling = rho_star_scaling_check(t, sz.maps, seed.derive(42), tol);
    const bool ok = pres.holds && scaling <= 1e-8;
    similar.check(ok, scaling, pres.witness ? pres.witness->first : Vector(m.col(0)),
                  pres.witness ? pres.witness->second : Vector(m.col(0)));
  }
  out.push_back(std::move(similar));

  const bool contrapositive_space =
      std::holds_alternative<L1Norm>(s.spec()) ||
      (std::holds_alternative<LpNorm>(s.spec()) && std::get<LpNorm>(s.spec()).p == 2.0);
  if (contrapositive_space && dim >= 2) {
    Property contra("analysis.nonsimilarity_has_witness", e.name);
    Matrix d = Matrix::Identity(dim, dim);
    d(1, 1) = 2.0;
    const LinearMap t(d, s);
    const Verdict sim = similarity_check(t, sz.maps, seed.derive(43), tol);
    if (sim.residual > 0.05) {
      const Verdict pres = preserves_rho_star(t, 2000, seed.derive(44), tol);
      contra.check(!pres.holds, sim.residual, pres.witness ? pres.witness->first : Vector::Zero(dim),
                   pres.witness ? pres.witness->second : Vector::Zero(dim));
    } else {
      contra.fail("diag(1,2,...) not separated from similarities");
    }
    out.push_back(std::move(contra));
  }

  if (is_symmetric(s)) {
    Property dir("analysis.estimator_directionality", e.name);
    Vector diag(dim);
    for (Eigen::Index i = 0; i < dim; ++i) diag[i] = 1.0 + 0.75 * static_cast<double>(i);
    const LinearMap t(diag.asDiagonal().toDenseMatrix(), s);
    const auto est = operator_norm_estimates(t, 2000, seed.derive(45));
    const double top = diag.maxCoeff();
    const double bottom = diag.minCoeff();
    const bool ok = est.op_norm_est <= top * (1 + 1e-12) && est.op_norm_est >= 0.98 * top &&
                    est.lower_bound_est >= bottom * (1 - 1e-12) && est.lower_bound_est <= 1.02 * bottom;
    dir.check(ok, std::max(std::abs(est.op_norm_est - top) / top, std::abs(est.lower_bound_est - bottom) / bottom),
              diag, diag);
    out.push_back(std::move(dir));
  }

  Property classify("analysis.smoothness_classification", e.name);
  Property coherence("analysis.smoothness_coherence", e.name);
  const auto rep = smoothness_report(s, std::max<std::size_t>(sz.pairs, 32), seed.derive(46), tol);
  const bool smooth = rep.smooth.holds;
  const Vector wx = rep.witness ? rep.witness->x : Vector::Zero(dim);
  const Vector wy = rep.witness ? rep.witness->y : Vector::Zero(dim);
  classify.check(smooth == e.expect_smooth, rep.smooth.residual, wx, wy);
  if (smooth != e.expect_smooth)
    classify.note = std::string("expected ") + (e.expect_smooth ? "smooth" : "nonsmooth") + ", classified " +
                    (smooth ? "smooth" : "nonsmooth");
  bool all_inclusions = true;
  for (const auto& row : rep.relation_tables) all_inclusions = all_inclusions && row.verdict.holds;
  coherence.check(smooth == all_inclusions, smooth == all_inclusions ? 0.0 : 1.0, wx, wy);
  out.push_back(std::move(classify));
  out.push_back(std::move(coherence));

  if (is_inner_product(s)) {
    Property para("analysis.parallelogram_identity", e.name);
    const auto p = parallelogram_delta(s, std::max<std::size_t>(sz.pairs, 32), seed.derive(47));
    para.check(p.delta_min_feasible <= 1e-9, p.delta_min_feasible, p.argmax.first, p.argmax.second);
    out.push_back(std::move(para));
  }
}

}  // namespace

std::vector<SuiteEntry> shipped_table() {
  Matrix hexagon(3, 2);
  const double h = std::sqrt(3.0) / 2.0;
  hexagon << 1.0, 0.0, 0.5, h, -0.5, h;
  Vector weights(3);
  weights << 1.0, 4.0, 9.0;
  return {
      {"l1-R3", "l1", NormedSpace::l1(3), false},
      {"l2-R3", "l2", NormedSpace::l2(3), true},
      {"l3-R3", "lp:3", NormedSpace::lp(3, 3.0), true},
      {"l1.5-R3", "lp:1.5", NormedSpace::lp(3, 1.5), true},
      {"linf-R2", "linf", NormedSpace::linf(2), false},
      {"wl2-R3", "wlp:2:1,4,9", NormedSpace::weighted_lp(2.0, weights), true},
      {"hexagon-R2", "poly:<builtin hexagon>", NormedSpace::polyhedral(hexagon), false},
  };
}

std::vector<SuiteEntry> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("--table", "cannot open '" + path + "'");
  const std::string base = std::filesystem::path(path).parent_path().string();
  std::vector<SuiteEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::stringstream ss(line);
    std::string name, norm, dim_text, label, extra;
    if (!(ss >> name)) continue;
    if (!(ss >> norm >> dim_text >> label) || (ss >> extra))
      throw usage_error("--table", "line " + std::to_string(lineno) + ": expected 'name norm dim smooth|nonsmooth'");
    if (label != "smooth" && label != "nonsmooth")
      throw usage_error("--table", "line " + std::to_string(lineno) + ": label must be smooth or nonsmooth");
    char* end = nullptr;
    const long dim = std::strtol(dim_text.c_str(), &end, 10);
    if (*end != '\0' || dim < 1) throw usage_error("--table", "line " + std::to_string(lineno) + ": bad dimension");
    out.push_back({name, norm, parse_norm(norm, dim, "--table", base), label == "smooth"});
  }
  if (out.empty()) throw usage_error("--table", "no entries");
  return out;
}

SuiteOutcome run_suite(Seed seed, Profile profile, const std::vector<SuiteEntry>& table, const Tolerance& tol) {
  const Sizes sz = sizes_for(profile);
  SuiteOutcome outcome;
  Json properties = Json::array();
  Json observations = Json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const SuiteEntry& e = table[i];
    const Seed s = seed.derive(0x5eed0000ULL + i);
    std::vector<Property> props;
    const auto pairs = sample_pairs(e.space, sz.pairs, s);
    derivative_properties(e, pairs, s.derive(1), sz, tol, props);
    orthogonality_properties(e, pairs, s.derive(2), sz, tol, props);
    construction_properties(e, s.derive(3), sz, tol, props, observations);
    analysis_properties(e, s.derive(4), sz, tol, props);
    for (const auto& p : props) {
      properties.push_back(p.to_json());
      if (!p.passed) {
        outcome.all_passed = false;
        outcome.failed.push_back(p.name + "[" + p.entry + "]");
      }
    }
  }
  outcome.results = Json{{"properties", std::move(properties)}, {"observations", std::move(observations)}};
  return outcome;
}

}  // namespace normderiv::cli
