#pragma once

// Batch front end: JSON configs in, JSON reports (and CSV curves) out.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toeplitz/boundary_symbols.hpp"

namespace toeplitz {

inline constexpr const char* kToolVersion = "0.1.0";

struct LambdaGrid {
  bool automatic = true;
  std::optional<double> min;
  std::optional<double> max;
  int count = 11;
  std::vector<double> values;  // explicit list, overrides min/max/count when non-empty
};

struct RunConfig {
  std::string mode;  // "annulus" or "neil"
  SymbolSpec symbol;
  std::optional<cplx> c;  // neil only
  bool c_scan = false;
  int c_scan_phases = 64;
  std::size_t n_points = 1024;
  int K = 32;
  LambdaGrid lambda;
  nlohmann::json source;  // echoed into the report
};

/// Throws SpecError on any schema or value problem.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

SymbolSpec parse_symbol(const nlohmann::json& j, std::optional<double> q);

/// Lambdas the run will visit, ascending. Empty for an auto grid when the
/// classification is not an interval.
std::vector<double> lambda_values(const LambdaGrid& grid, const IntervalClassification& cls);

/// Reports carry a "timestamp" field; everything else is a deterministic function of the config.
nlohmann::json run_annulus(const RunConfig& config);
nlohmann::json run_neil(const RunConfig& config);

/// Report without "timestamp", for comparisons.
nlohmann::json strip_timestamp(nlohmann::json report);

/// One row per entry of report["records"].
void write_csv(const nlohmann::json& report, const std::string& path);

struct SelftestOptions {
  std::optional<std::string> inject_failure;  // check name whose tolerance is corrupted
};

/// Report with "checks" (name, value, tolerance, pass) and overall "pass".
nlohmann::json selftest(const SelftestOptions& options = {});

}  // namespace toeplitz
