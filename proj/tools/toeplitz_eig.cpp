// toeplitz-eig: batch driver for the annulus and Neil eigenvalue pipelines.
//
// Exit status: 0 success, 1 self-test or verification failure, 2 configuration error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "toeplitz/errors.hpp"
#include "toeplitz/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config;
  std::string out;
  std::string csv;
  std::optional<long long> n_points;
  std::optional<int> K;
  std::optional<int> lambda_count;
  bool c_scan = false;
  std::optional<long long> seed;
  std::string inject_failure;
};

void emit(const nlohmann::json& report, const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw toeplitz::SpecError("cannot open output '" + path + "'");
  out << text;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw toeplitz::SpecError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw toeplitz::SpecError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

int run_mode(const std::string& mode, const Options& opt) {
  nlohmann::json j = read_json(opt.config);
  if (!j.is_object()) throw toeplitz::SpecError("config must be a JSON object");
  if (j.contains("mode") && j["mode"] != mode) {
    throw toeplitz::SpecError("config mode does not match subcommand '" + mode + "'");
  }
  j["mode"] = mode;
  if (opt.n_points) j["n_points"] = *opt.n_points;
  if (opt.K) j["K"] = *opt.K;
  if (opt.lambda_count) j["lambda"]["count"] = *opt.lambda_count;
  if (opt.c_scan) j["c_scan"] = true;

  const auto config = toeplitz::parse_config(j);
  const auto report = mode == "annulus" ? toeplitz::run_annulus(config) : toeplitz::run_neil(config);
  emit(report, opt.out);
  if (!opt.csv.empty()) toeplitz::write_csv(report, opt.csv);
  return report["selftest"]["pass"].get<bool>() ? kExitOk : kExitFailure;
}

int run_selftest(const Options& opt) {
  toeplitz::SelftestOptions so;
  if (!opt.inject_failure.empty()) so.inject_failure = opt.inject_failure;
  const auto report = toeplitz::selftest(so);
  emit(report, opt.out);
  for (const auto& c : report["checks"]) {
    if (!c["pass"].get<bool>()) std::cerr << "FAILED check: " << c["name"].get<std::string>() << "\n";
  }
  return report["pass"].get<bool>() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalues of self-adjoint Toeplitz operators relative to the annulus and Neil algebras"};
  app.require_subcommand(1);
  Options opt;

  auto add_run_flags = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "JSON report path (default stdout)");
    sub->add_option("--csv", opt.csv, "CSV curve path");
    sub->add_option("--n-points", opt.n_points, "grid size override (power of two >= 8)");
    sub->add_option("--K", opt.K, "truncation override");
    sub->add_option("--lambda-count", opt.lambda_count, "lambda grid count override");
    sub->add_option("--seed", opt.seed, "reserved; all computation is deterministic");
  };
  auto* annulus = app.add_subcommand("annulus", "run the annulus pipeline");
  add_run_flags(annulus);
  auto* neil = app.add_subcommand("neil", "run the Neil pipeline");
  add_run_flags(neil);
  neil->add_flag("--c-scan", opt.c_scan, "choose c by a phase scan");
  auto* self = app.add_subcommand("selftest", "run the built-in checks");
  self->add_option("--out", opt.out, "JSON report path (default stdout)");
  self->add_option("--seed", opt.seed, "reserved; all computation is deterministic");
  self->add_option("--inject-failure", opt.inject_failure, "corrupt the tolerance of the named check")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*annulus) return run_mode("annulus", opt);
    if (*neil) return run_mode("neil", opt);
    return run_selftest(opt);
  } catch (const toeplitz::SpecError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const toeplitz::TruncationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
