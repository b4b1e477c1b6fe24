#ifndef NORMDERIV_TOOLS_PARSE_HPP
#define NORMDERIV_TOOLS_PARSE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "normderiv/normderiv.hpp"

namespace normderiv::cli {

/// Malformed command-line input. The message starts with the offending flag.
struct usage_error : std::runtime_error {
  usage_error(const std::string& flag, const std::string& message) : std::runtime_error(flag + ": " + message) {}
};

/// Norm grammar: l1 | linf | l2 | lp:<p> | wlp:<p>:<w1,...> | poly:<path.csv>.
/// Relative polyhedral paths are resolved against `base_dir` when given.
NormedSpace parse_norm(const std::string& spec, Eigen::Index dim, const std::string& flag = "--norm",
                       const std::string& base_dir = "");

/// Comma-separated decimals, or @path to a file of decimals separated by
/// commas or whitespace.
std::vector<double> parse_numbers(const std::string& text, const std::string& flag);
Vector parse_vector(const std::string& text, const std::string& flag);

/// Rows separated by ';' with comma-separated entries, or @path to a CSV file.
Matrix parse_matrix(const std::string& text, const std::string& flag);

}  // namespace normderiv::cli

#endif  // NORMDERIV_TOOLS_PARSE_HPP
