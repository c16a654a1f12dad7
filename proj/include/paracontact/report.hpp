#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

namespace paracontact {

/// One named residual check at one point.
struct ResidualCase {
  std::string name;
  std::vector<double> point;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string error;  // nonempty when the case failed with an exception
};

/// Collection of residual checks; the observable output of every suite.
struct ResidualReport {
  std::string suite;
  std::vector<ResidualCase> cases;

  void add(std::string name, std::vector<double> point, double residual,
           double tolerance) {
    ResidualCase c;
    c.name = std::move(name);
    c.point = std::move(point);
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = std::isfinite(residual) && residual <= tolerance;
    cases.push_back(std::move(c));
  }

  void add_error(std::string name, std::vector<double> point, std::string message,
                 double tolerance) {
    ResidualCase c;
    c.name = std::move(name);
    c.point = std::move(point);
    c.residual = std::numeric_limits<double>::infinity();
    c.tolerance = tolerance;
    c.pass = false;
    c.error = std::move(message);
    cases.push_back(std::move(c));
  }

  void merge(const ResidualReport& other) {
    cases.insert(cases.end(), other.cases.begin(), other.cases.end());
  }

  int total() const { return static_cast<int>(cases.size()); }

  int passed() const {
    return static_cast<int>(std::count_if(cases.begin(), cases.end(),
                                          [](const ResidualCase& c) { return c.pass; }));
  }

  bool all_pass() const { return passed() == total(); }

  double max_residual() const {
    double m = 0.0;
    for (const ResidualCase& c : cases)
      if (std::isfinite(c.residual)) m = std::max(m, c.residual);
    return m;
  }

  double max_residual(const std::string& prefix) const {
    double m = 0.0;
    for (const ResidualCase& c : cases)
      if (c.name.rfind(prefix, 0) == 0 && std::isfinite(c.residual))
        m = std::max(m, c.residual);
    return m;
  }

  /// Deterministic order: by name, then insertion order within a name.
  void sort() {
    std::stable_sort(cases.begin(), cases.end(),
                     [](const ResidualCase& a, const ResidualCase& b) {
                       return a.name < b.name;
                     });
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["cases"] = nlohmann::json::array();
    for (const ResidualCase& c : cases) {
      nlohmann::json jc;
      jc["name"] = c.name;
      jc["point"] = c.point;
      if (std::isfinite(c.residual))
        jc["residual"] = c.residual;
      else
        jc["residual"] = nullptr;
      jc["tolerance"] = c.tolerance;
      jc["pass"] = c.pass;
      if (!c.error.empty()) jc["error"] = c.error;
      j["cases"].push_back(jc);
    }
    j["summary"] = {{"total", total()},
                    {"passed", passed()},
                    {"max_residual", max_residual()}};
    return j;
  }
};

/// Max-abs residual normalized by max(1, max-abs of the terms entering the
/// identity being checked.
struct ResidualAccum {
  double resid = 0.0;
  double scale = 1.0;
  void take(double r) { resid = std::max(resid, std::abs(r)); }
  void term(double t) { scale = std::max(scale, std::abs(t)); }
  double norm() const { return resid / scale; }
};

}  // namespace paracontact
