#ifndef NORMDERIV_TOOLS_SUITE_HPP
#define NORMDERIV_TOOLS_SUITE_HPP

#include <string>
#include <vector>

#include "normderiv/normderiv.hpp"
#include "report.hpp"

namespace normderiv::cli {

/// One norm under test with its expected smoothness label.
struct SuiteEntry {
  std::string name;
  std::string norm;  ///< the norm spec as written
  NormedSpace space;
  bool expect_smooth;
};

enum class Profile { quick, full };

/// l1 R^3, l2 R^3, l3 R^3, l1.5 R^3, linf R^2, weighted l2 R^3 and a hexagonal
/// polyhedral norm on R^2.
std::vector<SuiteEntry> shipped_table();

/// Whitespace-separated lines `name norm dim smooth|nonsmooth`; '#' starts a
/// comment. Polyhedral paths are relative to the table file.
std::vector<SuiteEntry> read_table(const std::string& path);

struct SuiteOutcome {
  Json results;  ///< {"properties": [...], "observations": [...]}
  bool all_passed = true;
  std::vector<std::string> failed;  ///< "property[entry]" names
};

SuiteOutcome run_suite(Seed seed, Profile profile, const std::vector<SuiteEntry>& table,
                       const Tolerance& tol = {});

}  // namespace normderiv::cli

#endif  // NORMDERIV_TOOLS_SUITE_HPP
