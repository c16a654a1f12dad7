#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "paracontact/suites.hpp"

namespace {

enum class LogLevel { quiet, info, debug };

LogLevel log_level() {
  const char* env = std::getenv("PARACONTACT_LOG");
  if (env == nullptr) return LogLevel::info;
  const std::string v(env);
  if (v == "quiet") return LogLevel::quiet;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::info;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual verification suites for paracontact conformal geometry"};
  app.footer("Suites: compat, flat-group, hyperboloid, prop31, conformal-invariance,\n"
             "        flatness-criterion, integrability, cayley, yamabe, kelvin, cr");

  paracontact::RunConfig cfg;
  std::string suite;
  app.add_option("suite", suite, "suite to run")->required();
  app.add_option("--n", cfg.n, "rank n (dimension 2n+1)")->capture_default_str();
  app.add_option("--order", cfg.jet_order, "jet truncation order")
      ->capture_default_str();
  app.add_option("--tol", cfg.tolerance, "relative residual tolerance")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--points", cfg.num_points, "points per case family")
      ->capture_default_str();
  app.add_option("--eps", cfg.eps, "parameter of the Yamabe solution family")
      ->capture_default_str();
  app.add_option("--u", cfg.u_expr,
                 "conformal factor, e.g. \"0.3*u1*v1 - 0.1*t\"");
  app.add_option("--spec", cfg.spec_path, "structure file (JSON)");
  app.add_option("--out", cfg.out_path, "report destination (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  cfg.suite = suite;
  paracontact::ResidualReport rep;
  try {
    cfg.validate();
    rep = paracontact::run_suite(cfg);
  } catch (const paracontact::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << app.help() << "\n";
    return 2;
  }

  const LogLevel lvl = log_level();
  if (lvl == LogLevel::debug) {
    for (const auto& c : rep.cases) {
      std::cerr << (c.pass ? "  ok   " : "  FAIL ") << c.name
                << "  residual=" << c.residual << "  tol=" << c.tolerance;
      if (!c.error.empty()) std::cerr << "  error=" << c.error;
      std::cerr << "\n";
    }
  }
  if (lvl != LogLevel::quiet) {
    std::cerr << rep.suite << ": " << rep.passed() << "/" << rep.total()
              << " cases passed, max residual " << rep.max_residual() << "\n";
  }

  const std::string json = rep.to_json().dump(2) + "\n";
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    if (!out) {
      std::cerr << "error: cannot write " << cfg.out_path << "\n";
      return 2;
    }
    out << json;
  } else {
    std::cout << json;
  }
  return rep.all_pass() ? 0 : 1;
}
