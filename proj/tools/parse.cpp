#include "parse.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace normderiv::cli {

namespace {

double parse_double(const std::string& raw, const std::string& flag) {
  const auto first = raw.find_first_not_of(" \t\r\n");
  const auto last = raw.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw usage_error(flag, "empty number");
  const std::string cell = raw.substr(first, last - first + 1);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size() || errno == ERANGE || !std::isfinite(v))
    throw usage_error(flag, "bad number '" + cell + "'");
  return v;
}

std::string read_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path);
  if (!in) throw usage_error(flag, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(s);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::vector<double> parse_numbers(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  if (!text.empty() && text.front() == '@') {
    std::string body = read_file(text.substr(1), flag);
    for (char& c : body)
      if (c == ',' || c == '\n' || c == '\r' || c == '\t') c = ' ';
    std::stringstream ss(body);
    std::string cell;
    while (ss >> cell) out.push_back(parse_double(cell, flag));
  } else {
    for (const auto& cell : split(text, ',')) out.push_back(parse_double(cell, flag));
  }
  if (out.empty()) throw usage_error(flag, "no numbers given");
  return out;
}

Vector parse_vector(const std::string& text, const std::string& flag) {
  const auto values = parse_numbers(text, flag);
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Matrix parse_matrix(const std::string& text, const std::string& flag) {
  try {
    if (!text.empty() && text.front() == '@') return read_polyhedral_csv(text.substr(1));
  } catch (const error& e) {
    throw usage_error(flag, e.what());
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : split(text, ';')) rows.push_back(parse_numbers(row, flag));
  if (rows.empty()) throw usage_error(flag, "empty matrix");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.front().size()) throw usage_error(flag, "ragged matrix rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

NormedSpace parse_norm(const std::string& spec, Eigen::Index dim, const std::string& flag,
                       const std::string& base_dir) {
  if (dim < 1) throw usage_error("--dim", "must be >= 1");
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (head == "l1" && rest.empty()) return NormedSpace::l1(dim);
    if (head == "linf" && rest.empty()) return NormedSpace::linf(dim);
    if (head == "l2" && rest.empty()) return NormedSpace::l2(dim);
    if (head == "lp" && !rest.empty()) return NormedSpace::lp(dim, parse_double(rest, flag));
    if (head == "wlp" && !rest.empty()) {
      const auto colon2 = rest.find(':');
      if (colon2 == std::string::npos) throw usage_error(flag, "expected wlp:<p>:<w1,...>");
      const double p = parse_double(rest.substr(0, colon2), flag);
      const Vector w = parse_vector(rest.substr(colon2 + 1), flag);
      if (w.size() != dim)
        throw usage_error(flag, std::to_string(w.size()) + " weights for dimension " + std::to_string(dim));
      return NormedSpace::weighted_lp(p, w);
    }
    if (head == "poly" && !rest.empty()) {
      std::filesystem::path path(rest);
      if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
      Matrix a = read_polyhedral_csv(path.string());
      if (a.cols() != dim)
        throw usage_error(flag, "functionals have " + std::to_string(a.cols()) + " columns for dimension " +
                                    std::to_string(dim));
      return NormedSpace::polyhedral(std::move(a));
    }
  } catch (const error& e) {
    throw usage_error(flag, e.what());
  }
  throw usage_error(flag, "unknown norm '" + spec + "' (expected l1 | linf | l2 | lp:<p> | wlp:<p>:<w,...> | poly:<path>)");
}

}  // namespace normderiv::cli
