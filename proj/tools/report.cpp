#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace normderiv::cli {

namespace {

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write(out, it.value(), depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write(out, e, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_report(const Json& report) {
  std::string out;
  write(out, report, 0);
  out += "\n";
  return out;
}

std::optional<std::string> validate_report(const Json& r) {
  if (!r.is_object()) return "report is not an object";
  static const std::set<std::string> allowed = {"command",    "inputs", "results", "residuals",
                                                "tolerances", "seed",   "checks",  "wall_time_s"};
  for (auto it = r.begin(); it != r.end(); ++it)
    if (!allowed.count(it.key())) return "unexpected key '" + it.key() + "'";
  if (!r.contains("command") || !r["command"].is_string()) return "missing string 'command'";
  for (const char* key : {"inputs", "results", "residuals", "tolerances"})
    if (!r.contains(key) || !r[key].is_object()) return std::string("missing object '") + key + "'";
  if (!r.contains("seed") || !r["seed"].is_number_unsigned()) return "missing unsigned 'seed'";
  for (const char* key : {"abs_tol", "rel_tol", "limit_t0", "limit_shrink", "limit_floor"})
    if (!r["tolerances"].contains(key) || !r["tolerances"][key].is_number())
      return std::string("tolerances.") + key + " must be a number";
  if (!r["tolerances"].contains("max_bisect_iters") || !r["tolerances"]["max_bisect_iters"].is_number_integer())
    return "tolerances.max_bisect_iters must be an integer";
  for (auto it = r["residuals"].begin(); it != r["residuals"].end(); ++it)
    if (!it.value().is_number() && !it.value().is_null()) return "residuals." + it.key() + " must be a number";
  if (!r.contains("checks") || !r["checks"].is_array()) return "missing array 'checks'";
  for (const auto& c : r["checks"])
    if (!c.is_object() || !c.contains("name") || !c["name"].is_string() || !c.contains("passed") ||
        !c["passed"].is_boolean())
      return "each check needs string 'name' and boolean 'passed'";
  if (r.contains("wall_time_s") && !r["wall_time_s"].is_number()) return "wall_time_s must be a number";
  return std::nullopt;
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json to_json(const Tolerance& tol) {
  return Json{{"abs_tol", tol.abs_tol},           {"rel_tol", tol.rel_tol},
              {"limit_t0", tol.limit_t0},         {"limit_shrink", tol.limit_shrink},
              {"limit_floor", tol.limit_floor},   {"max_bisect_iters", tol.max_bisect_iters}};
}

Json to_json(const std::pair<Vector, Vector>& pair) { return Json{{"x", to_json(pair.first)}, {"y", to_json(pair.second)}}; }

Json to_json(const Verdict& v) {
  Json j{{"holds", v.holds}, {"residual", v.residual}, {"scale", v.scale}};
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

}  // namespace normderiv::cli
