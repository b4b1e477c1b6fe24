#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>

#include <CLI11.hpp>

#include "normderiv/normderiv.hpp"
#include "parse.hpp"
#include "report.hpp"
#include "suite.hpp"

namespace normderiv::cli {

namespace {

struct Common {
  std::string norm;
  long dim = 0;
  std::uint64_t seed = 1;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  bool omit_timing = false;

  Tolerance tolerance() const {
    Tolerance t = Tolerance::with(abs_tol, rel_tol);
    try {
      t.validate();
    } catch (const error& e) {
      throw usage_error("--abs-tol/--rel-tol", e.what());
    }
    return t;
  }
  NormedSpace space() const { return parse_norm(norm, dim, "--norm"); }
};

void add_tolerance_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for every sampled quantity")->capture_default_str();
  cmd->add_option("--abs-tol", c.abs_tol, "Absolute tolerance")->capture_default_str();
  cmd->add_option("--rel-tol", c.rel_tol, "Relative tolerance")->capture_default_str();
  cmd->add_flag("--omit-timing", c.omit_timing, "Leave wall_time_s out of the report");
}

void add_space_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--norm", c.norm, "l1 | linf | l2 | lp:<p> | wlp:<p>:<w,...> | poly:<path.csv>")->required();
  cmd->add_option("--dim", c.dim, "Dimension of the space")->required();
  add_tolerance_flags(cmd, c);
}

Vector vector_arg(const std::string& text, const std::string& flag, const NormedSpace& space) {
  Vector v = parse_vector(text, flag);
  if (v.size() != space.dim())
    throw usage_error(flag, "has " + std::to_string(v.size()) + " coordinates, --dim is " + std::to_string(space.dim()));
  return v;
}

std::optional<bool> bool_arg(const std::string& text, const std::string& flag) {
  if (text.empty()) return std::nullopt;
  if (text == "true") return true;
  if (text == "false") return false;
  throw usage_error(flag, "expected true or false, got '" + text + "'");
}

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  Json residuals = Json::object();
  Json checks = Json::array();

  void check(const std::string& name, bool passed) { checks.push_back(Json{{"name", name}, {"passed", passed}}); }
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c["passed"].get<bool>(); });
  }
};

Json derivative_json(const DerivativeResult& d) {
  return Json{{"value", d.value},
              {"method", d.method == Method::closed_form ? "closed_form" : "numeric_limit"},
              {"err_estimate", d.err_estimate},
              {"converged", d.converged}};
}

void cmd_eval(const Common& c, const std::string& xs, const std::string& ys, Report& r) {
  const auto space = c.space();
  const auto tol = c.tolerance();
  const Vector x = vector_arg(xs, "--x", space);
  const Vector y = vector_arg(ys, "--y", space);
  r.inputs = Json{{"norm", c.norm}, {"dim", c.dim}, {"x", to_json(x)}, {"y", to_json(y)}};
  const auto rm = rho_minus(space, x, y, tol);
  const auto rp = rho_plus(space, x, y, tol);
  const auto nm = numeric_one_sided(space, x, y, Side::left, tol);
  const auto np = numeric_one_sided(space, x, y, Side::right, tol);
  r.results = Json{{"norm_x", norm_eval(space, x)},
                   {"norm_y", norm_eval(space, y)},
                   {"dminus", exact_dminus(space, x, y, tol)},
                   {"dplus", exact_dplus(space, x, y, tol)},
                   {"rho_minus", rm.value},
                   {"rho_plus", rp.value},
                   {"rho", rho(space, x, y, tol)},
                   {"rho_star", rho_star(space, x, y, tol)},
                   {"numeric", Json{{"rho_minus", derivative_json(nm)}, {"rho_plus", derivative_json(np)}}}};
  const double gm = std::abs(rm.value - nm.value);
  const double gp = std::abs(rp.value - np.value);
  r.residuals = Json{{"numeric_gap_minus", gm}, {"numeric_gap_plus", gp}};
  const auto agree = [](double closed, double gap) { return gap <= std::max(1e-5 * std::abs(closed), 1e-7); };
  r.check("numeric_oracle_agreement", agree(rm.value, gm) && agree(rp.value, gp));
}

void cmd_orth(const Common& c, const std::string& xs, const std::string& ys, const std::string& flavor_name,
              const std::string& expect, const std::string& us, const std::string& vs, std::size_t resolution,
              Report& r) {
  const auto space = c.space();
  const auto tol = c.tolerance();
  const Vector x = vector_arg(xs, "--x", space);
  const Vector y = vector_arg(ys, "--y", space);
  const auto flavor = parse_flavor(flavor_name);
  if (!flavor) throw usage_error("--flavor", "unknown flavor '" + flavor_name + "' (B, I, rho_minus, rho_plus, rho, rho_star, s)");
  const auto expected = bool_arg(expect, "--expect");
  if (us.empty() != vs.empty()) throw usage_error("--u/--v", "give both section vectors or neither");
  r.inputs = Json{{"norm", c.norm}, {"dim", c.dim}, {"x", to_json(x)}, {"y", to_json(y)}, {"flavor", flavor_name}};
  const Verdict v = is_orthogonal(space, x, y, *flavor, tol);
  r.results["verdict"] = to_json(v);
  r.residuals["relation"] = v.residual;
  if (*flavor == Flavor::B) {
    const Verdict oracle = birkhoff_minimization_oracle(space, x, y, tol);
    r.results["birkhoff_oracle"] = to_json(oracle);
    r.residuals["birkhoff_oracle"] = oracle.residual;
    r.check("birkhoff_oracle_agreement", oracle.holds == v.holds);
  }
  if (!us.empty()) {
    const Vector u = vector_arg(us, "--u", space);
    const Vector w = vector_arg(vs, "--v", space);
    r.inputs["u"] = to_json(u);
    r.inputs["v"] = to_json(w);
    r.inputs["resolution"] = resolution;
    const auto profile = sample_orthogonal_set(space, x, u, w, *flavor, resolution, tol);
    Json pts = Json::array();
    for (const auto& p : profile.points)
      pts.push_back(Json{{"theta", p.theta}, {"value", p.signed_value}, {"holds", p.verdict.holds}});
    Json cells = Json::array();
    for (auto k : profile.zero_cells)
      cells.push_back(Json{{"index", k}, {"theta", profile.points[k].theta}, {"direction", to_json(profile.points[k].direction)}});
    r.results["section"] = Json{{"profile", std::move(pts)}, {"zero_cells", std::move(cells)}};
  }
  if (expected) {
    r.inputs["expect"] = *expected;
    r.check("expected_verdict", v.holds == *expected);
  }
}

void cmd_decompose(const Common& c, const std::string& xs, double lambda, Report& r) {
  const auto space = c.space();
  const auto tol = c.tolerance();
  const Vector x = vector_arg(xs, "--x", space);
  if (!(lambda >= 0) || !std::isfinite(lambda)) throw usage_error("--lambda", "must be finite and >= 0");
  r.inputs = Json{{"norm", c.norm}, {"dim", c.dim}, {"x", to_json(x)}, {"lambda", lambda}};
  const auto d = thalesian_decompose(space, x, lambda, Seed{c.seed}, tol);
  r.results = Json{{"y", to_json(d.y)},
                   {"z", to_json(d.z)},
                   {"w", to_json(d.w)},
                   {"t0", d.t0},
                   {"holds", d.holds},
                   {"degraded", d.degraded},
                   {"witnesses_tried", d.witnesses_tried}};
  r.residuals = Json{{"residual_first", d.residual_first},
                     {"scale_first", d.scale_first},
                     {"residual_second", d.residual_second},
                     {"scale_second", d.scale_second}};
  r.check("decomposition_verified", d.holds);
}

void cmd_map(const Common& c, const std::string& matrix_text, const std::string& codomain_norm, long codomain_dim,
             std::size_t n, const std::string& expect_sim, const std::string& expect_pres, Report& r) {
  const auto tol = c.tolerance();
  const Matrix m = parse_matrix(matrix_text, "--matrix");
  const auto domain = c.space();
  const long cdim = codomain_dim > 0 ? codomain_dim : static_cast<long>(m.rows());
  const std::string cnorm = codomain_norm.empty() ? c.norm : codomain_norm;
  const auto codomain = parse_norm(cnorm, cdim, "--codomain-norm");
  if (m.cols() != domain.dim() || m.rows() != codomain.dim())
    throw usage_error("--matrix", "shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                      " does not map R^" + std::to_string(domain.dim()) + " to R^" +
                                      std::to_string(codomain.dim()));
  if (n < 1) throw usage_error("--n", "must be >= 1");
  const auto es = bool_arg(expect_sim, "--expect-similarity");
  const auto ep = bool_arg(expect_pres, "--expect-preserves");
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
  r.inputs = Json{{"norm", c.norm}, {"dim", c.dim}, {"codomain_norm", cnorm}, {"codomain_dim", cdim},
                  {"matrix", std::move(rows)}, {"n", n}};
  const LinearMap t(m, domain, codomain);
  const auto rep = analyze_map(t, n, Seed{c.seed}, tol);
  r.results = Json{{"op_norm_est", rep.op_norm_est},
                   {"lower_bound_est", rep.lower_bound_est},
                   {"similarity", to_json(rep.similarity)},
                   {"preserves_rho_star", to_json(rep.preserves_rho_star)},
                   {"scaling_residual", rep.scaling_residual},
                   {"bound", to_json(rep.bound)}};
  r.residuals = Json{{"similarity", rep.similarity.residual},
                     {"preserves_rho_star", rep.preserves_rho_star.residual},
                     {"scaling", rep.scaling_residual}};
  r.check("lower_bound_le_op_norm", rep.lower_bound_est <= rep.op_norm_est);
  if (es) r.check("expected_similarity", rep.similarity.holds == *es);
  if (ep) r.check("expected_preserves_rho_star", rep.preserves_rho_star.holds == *ep);
}

void cmd_smoothness(const Common& c, std::size_t n, const std::string& expect, Report& r) {
  const auto space = c.space();
  const auto tol = c.tolerance();
  if (n < 32) throw usage_error("--n", "must be >= 32");
  std::optional<bool> expected;
  if (expect == "smooth") expected = true;
  else if (expect == "nonsmooth") expected = false;
  else if (!expect.empty()) throw usage_error("--expect", "expected smooth or nonsmooth");
  r.inputs = Json{{"norm", c.norm}, {"dim", c.dim}, {"n", n}};
  const auto rep = smoothness_report(space, n, Seed{c.seed}, tol);
  r.results["smooth"] = to_json(rep.smooth);
  r.results["witness"] = rep.witness ? Json{{"x", to_json(rep.witness->x)},
                                            {"y", to_json(rep.witness->y)},
                                            {"gap", rep.witness->gap}}
                                     : Json(nullptr);
  Json table = Json::array();
  bool all = true;
  for (const auto& row : rep.relation_tables) {
    table.push_back(Json{{"from", to_string(row.from)}, {"to", to_string(row.to)}, {"verdict", to_json(row.verdict)}});
    all = all && row.verdict.holds;
  }
  r.results["relation_tables"] = std::move(table);
  r.residuals["max_normalized_gap"] = rep.smooth.residual;
  r.check("inclusions_coherent", all == rep.smooth.holds);
  if (expected) {
    r.inputs["expect"] = expect;
    r.check("expected_classification", rep.smooth.holds == *expected);
  }
}

void cmd_geometry(const Common& c, std::size_t n, const std::string& eps, const std::string& ts,
                  const std::string& weights, double delta, Report& r) {
  const auto space = c.space();
  const auto tol = c.tolerance();
  if (n < 32) throw usage_error("--n", "must be >= 32");
  const auto eps_grid = parse_numbers(eps, "--eps");
  const auto t_grid = parse_numbers(ts, "--t");
  for (double e : eps_grid)
    if (!(e > 0 && e <= 2)) throw usage_error("--eps", "values must lie in (0, 2]");
  for (double t : t_grid)
    if (!(t > 0)) throw usage_error("--t", "values must be > 0");
  r.inputs = Json{{"norm", c.norm}, {"dim", c.dim}, {"n", n}, {"eps", eps_grid}, {"t", t_grid}};
  const auto p = parallelogram_delta(space, n, Seed{c.seed});
  const auto m = moduli_estimates(space, eps_grid, t_grid, n, Seed{c.seed});
  Json sigma = Json::array();
  for (const auto& s : m.sigma_samples) sigma.push_back(Json{{"eps", s.arg}, {"value", s.value}});
  Json varrho = Json::array();
  for (const auto& s : m.varrho_samples) varrho.push_back(Json{{"t", s.arg}, {"value", s.value}});
  Json para{{"delta_min_feasible", p.delta_min_feasible},
            {"r_min", p.r_min},
            {"r_max", p.r_max},
            {"argmin", Json{{"z", to_json(p.argmin.first)}, {"w", to_json(p.argmin.second)}}},
            {"argmax", Json{{"z", to_json(p.argmax.first)}, {"w", to_json(p.argmax.second)}}},
            {"admissible", p.admissible}};
  if (!p.note.empty()) para["note"] = p.note;
  r.results = Json{{"parallelogram", std::move(para)}, {"sigma_samples", std::move(sigma)}, {"varrho_samples", std::move(varrho)}};
  r.residuals["delta_min_feasible"] = p.delta_min_feasible;
  if (!weights.empty()) {
    const Vector w = vector_arg(weights, "--inner-weights", space);
    if (!(delta >= 0 && delta < 1)) throw usage_error("--delta", "must lie in [0, 1)");
    r.inputs["inner_weights"] = to_json(w);
    r.inputs["delta"] = delta;
    const auto ib = rhostar_inner_bound_check(space, w, delta, n, Seed{c.seed}, tol);
    r.results["inner_bound"] = Json{{"constant", ib.constant},
                                    {"constant_printed", ib.constant_printed},
                                    {"pairing", to_json(ib.pairing)},
                                    {"bound", to_json(ib.bound)},
                                    {"printed_bound", to_json(ib.printed_bound)}};
    r.residuals["inner_bound_excess"] = ib.bound.residual;
    r.check("delta_pairing", ib.pairing.holds);
    r.check("corrected_constant_bound", ib.bound.holds);
  }
}

void cmd_compare(const Common& c, const std::string& norm2, std::size_t n, Report& r) {
  const auto s1 = c.space();
  const auto s2 = parse_norm(norm2, c.dim, "--norm2");
  const auto tol = c.tolerance();
  if (n < 1) throw usage_error("--n", "must be >= 1");
  r.inputs = Json{{"norm", c.norm}, {"norm2", norm2}, {"dim", c.dim}, {"n", n}};
  const auto rep = norm_comparison_alpha(s1, s2, n, Seed{c.seed}, tol);
  r.results = Json{{"m_est", rep.m_est},
                   {"M_est", rep.M_est},
                   {"alpha", rep.alpha},
                   {"alpha_printed", rep.alpha_printed},
                   {"bound_holds", to_json(rep.bound_holds)},
                   {"printed_bound", to_json(rep.printed_bound)},
                   {"proportional", to_json(rep.proportional)}};
  r.residuals = Json{{"bound_excess", rep.bound_holds.residual}, {"printed_bound_excess", rep.printed_bound.residual}};
  r.check("corrected_alpha_bound", rep.bound_holds.holds);
}

void cmd_suite(const Common& c, const std::string& profile_name, const std::string& table_path, Report& r) {
  Profile profile;
  if (profile_name == "quick") profile = Profile::quick;
  else if (profile_name == "full") profile = Profile::full;
  else throw usage_error("--profile", "expected quick or full");
  const auto table = table_path.empty() ? shipped_table() : read_table(table_path);
  Json entries = Json::array();
  for (const auto& e : table)
    entries.push_back(Json{{"name", e.name}, {"norm", e.norm}, {"dim", e.space.dim()}, {"expect_smooth", e.expect_smooth}});
  r.inputs = Json{{"profile", profile_name}, {"table", table_path.empty() ? "shipped" : table_path}, {"entries", std::move(entries)}};
  auto outcome = run_suite(Seed{c.seed}, profile, table, c.tolerance());
  r.results = std::move(outcome.results);
  r.results["failed"] = outcome.failed;
  double worst = 0;
  for (const auto& p : r.results["properties"]) {
    worst = std::max(worst, p["worst_residual"].get<double>());
    r.check(p["property"].get<std::string>() + "[" + p["norm"].get<std::string>() + "]", p["passed"].get<bool>());
  }
  r.residuals["worst_property_residual"] = worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Norm derivatives and orthogonality relations in finite-dimensional normed spaces", "normderiv"};
  app.require_subcommand(1);
  Common common;
  Report report;

  std::string xs, ys, flavor, expect, us, vs, matrix, cnorm, expect_sim, expect_pres, norm2, profile = "quick";
  std::string eps = "0.25,0.5,1,1.5,2", ts = "0.01,0.1,0.5,1", weights, table;
  double lambda = 1.0, delta = 0.0;
  long cdim = 0;
  std::size_t n = 0, resolution = 64;

  auto* eval = app.add_subcommand("eval", "Norm derivatives rho_-, rho_+, rho, rho* at (x, y)");
  add_space_flags(eval, common);
  eval->add_option("--x", xs, "Vector x")->required();
  eval->add_option("--y", ys, "Vector y")->required();

  auto* orth = app.add_subcommand("orth", "Decide x ⊥ y for one orthogonality flavor");
  add_space_flags(orth, common);
  orth->add_option("--x", xs, "Vector x")->required();
  orth->add_option("--y", ys, "Vector y")->required();
  orth->add_option("--flavor", flavor, "B | I | rho_minus | rho_plus | rho | rho_star | s")->required();
  orth->add_option("--expect", expect, "Assert the verdict: true | false");
  orth->add_option("--u", us, "First vector spanning a section plane");
  orth->add_option("--v", vs, "Second vector spanning a section plane");
  orth->add_option("--resolution", resolution, "Grid size over [0, pi) for the section")->capture_default_str();

  auto* decompose = app.add_subcommand("decompose", "Thalesian rho*-orthogonal decomposition of x");
  add_space_flags(decompose, common);
  decompose->add_option("--x", xs, "Vector x")->required();
  decompose->add_option("--lambda", lambda, "lambda >= 0")->capture_default_str();

  auto* map = app.add_subcommand("map-analyze", "Operator norm estimates and rho* preservation of a matrix");
  add_space_flags(map, common);
  map->add_option("--matrix", matrix, "Rows separated by ';' or @file.csv")->required();
  map->add_option("--codomain-norm", cnorm, "Norm on the codomain (default: --norm)");
  map->add_option("--codomain-dim", cdim, "Codomain dimension (default: matrix rows)");
  map->add_option("--n", n, "Samples")->default_val(2000);
  map->add_option("--expect-similarity", expect_sim, "Assert the similarity verdict: true | false");
  map->add_option("--expect-preserves", expect_pres, "Assert the preservation verdict: true | false");

  auto* smooth = app.add_subcommand("smoothness", "Smoothness classification with relation inclusion tables");
  add_space_flags(smooth, common);
  smooth->add_option("--n", n, "Samples (>= 32)")->default_val(500);
  smooth->add_option("--expect", expect, "Assert the classification: smooth | nonsmooth");

  auto* geometry = app.add_subcommand("geometry", "delta-parallelogram constant and sampled moduli");
  add_space_flags(geometry, common);
  geometry->add_option("--n", n, "Samples (>= 32)")->default_val(500);
  geometry->add_option("--eps", eps, "eps grid for the modulus of convexity")->capture_default_str();
  geometry->add_option("--t", ts, "t grid for the modulus of smoothness")->capture_default_str();
  geometry->add_option("--inner-weights", weights, "Weights of an inner product to compare rho* against");
  geometry->add_option("--delta", delta, "delta in [0, 1) pairing the norm with the inner product")->capture_default_str();

  auto* compare = app.add_subcommand("compare-norms", "Compare rho* across two equivalent norms");
  add_space_flags(compare, common);
  compare->add_option("--norm2", norm2, "Second norm")->required();
  compare->add_option("--n", n, "Samples")->default_val(1000);

  auto* suite = app.add_subcommand("suite", "Seeded property suite over a table of norms");
  add_tolerance_flags(suite, common);
  suite->add_option("--profile", profile, "quick | full")->capture_default_str();
  suite->add_option("--table", table, "Norm table file (default: shipped table)");

  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (eval->parsed()) {
      report.command = "eval";
      cmd_eval(common, xs, ys, report);
    } else if (orth->parsed()) {
      report.command = "orth";
      if (resolution < 8) throw usage_error("--resolution", "must be >= 8");
      cmd_orth(common, xs, ys, flavor, expect, us, vs, resolution, report);
    } else if (decompose->parsed()) {
      report.command = "decompose";
      cmd_decompose(common, xs, lambda, report);
    } else if (map->parsed()) {
      report.command = "map-analyze";
      cmd_map(common, matrix, cnorm, cdim, n, expect_sim, expect_pres, report);
    } else if (smooth->parsed()) {
      report.command = "smoothness";
      cmd_smoothness(common, n, expect, report);
    } else if (geometry->parsed()) {
      report.command = "geometry";
      cmd_geometry(common, n, eps, ts, weights, delta, report);
    } else if (compare->parsed()) {
      report.command = "compare-norms";
      cmd_compare(common, norm2, n, report);
    } else {
      report.command = "suite";
      cmd_suite(common, profile, table, report);
    }
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }

  Json j;
  j["command"] = report.command;
  j["inputs"] = std::move(report.inputs);
  j["results"] = std::move(report.results);
  j["residuals"] = std::move(report.residuals);
  j["tolerances"] = to_json(common.tolerance());
  j["seed"] = common.seed;
  j["checks"] = report.checks;
  if (!common.omit_timing)
    j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (const auto problem = validate_report(j)) {
    err << "internal error: malformed report: " << *problem << "\n";
    return exit_usage;
  }
  out << dump_report(j);
  for (const auto& c : report.checks)
    if (!c["passed"].get<bool>()) err << "check failed: " << c["name"].get<std::string>() << "\n";
  return report.passed() ? exit_ok : exit_check_failed;
}

}  // namespace normderiv::cli
