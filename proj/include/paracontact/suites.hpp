#pragma once

#include <string>
#include <vector>

#include "paracontact/report.hpp"
#include "paracontact/structure.hpp"

namespace paracontact {

/// Configuration of a named verification suite run.
struct RunConfig {
  std::string suite;
  int n = 2;
  int jet_order = 4;
  double tolerance = 1e-7;
  std::uint64_t seed = 42;
  int num_points = 10;
  double eps = 1.0;        // parameter of the Yamabe solution family
  std::string u_expr;      // conformal factor (micro-grammar), optional
  std::string spec_path;   // user structure file, optional
  std::string out_path;    // report destination, optional

  void validate() const;
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs one suite over seeded points.  Numerical errors are recorded as
/// failing cases with an error tag; the suite itself never aborts on them.
ResidualReport run_suite(const RunConfig& config);

/// Parses the conformal-factor micro-grammar: decimal coefficients and
/// coordinate names joined by '*', terms joined by '+'/'-'.
Polynomial parse_u_expression(const std::string& expr,
                              const std::vector<std::string>& coords);

}  // namespace paracontact
