#include "toeplitz/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <variant>

#include "toeplitz/annulus_hardy.hpp"
#include "toeplitz/annulus_spectra.hpp"
#include "toeplitz/errors.hpp"
#include "toeplitz/neil_spectra.hpp"

namespace toeplitz {

using nlohmann::json;

namespace {

constexpr int kAnnihilatorModes = 16;
constexpr double kAnnihilatorTol = 1e-10;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json classification_json(const IntervalClassification& cls) {
  return {{"kind", cls.is_interval() ? "interval" : "at_most_point"},
          {"m", cls.m},
          {"M", cls.M},
          {"orientation", cls.orientation}};
}

template <typename T>
T get_field(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw SpecError(std::string(where) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SpecError(std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

BoundaryPayload parse_payload(const json& b, SymbolKind kind) {
  switch (kind) {
    case SymbolKind::arcs: {
      if (!b.is_array()) throw SpecError("arcs boundary must be an array of {from, to, value}");
      ArcList arcs;
      for (const auto& a : b) {
        if (!a.is_object()) throw SpecError("arc must be an object");
        arcs.push_back({get_field<double>(a, "from", "arc"), get_field<double>(a, "to", "arc"),
                        get_field<double>(a, "value", "arc")});
      }
      return arcs;
    }
    case SymbolKind::trig: {
      if (!b.is_object() || !b.contains("coeffs") || !b["coeffs"].is_array()) {
        throw SpecError("trig boundary must be {\"coeffs\": [{k, re, im}, ...]}");
      }
      TrigPolynomial poly;
      for (const auto& t : b["coeffs"]) {
        if (!t.is_object()) throw SpecError("trig coefficient must be an object");
        const double im = t.contains("im") ? get_field<double>(t, "im", "trig coefficient") : 0.0;
        poly.push_back({get_field<int>(t, "k", "trig coefficient"), {get_field<double>(t, "re", "trig coefficient"), im}});
      }
      return poly;
    }
    case SymbolKind::samples: {
      if (!b.is_object() || !b.contains("values")) throw SpecError("samples boundary must be {\"values\": [...]}");
      return get_field<RawSamples>(b, "values", "samples boundary");
    }
  }
  throw SpecError("unknown symbol kind");
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count == 1) return {0.5 * (lo + hi)};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  out.back() = hi;
  return out;
}

// Outcome of one lambda: a record or a rejection message.
struct Outcome {
  double lambda = 0.0;
  bool ok = false;
  json record;
  std::string reason;
};

template <typename Fn>
std::vector<Outcome> evaluate_lambdas(const std::vector<double>& lambdas, Fn&& fn) {
  std::vector<Outcome> out(lambdas.size());
  const auto count = static_cast<std::ptrdiff_t>(lambdas.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    auto& o = out[static_cast<std::size_t>(i)];
    o.lambda = lambdas[static_cast<std::size_t>(i)];
    try {
      o.record = fn(o.lambda);
      o.ok = true;
    } catch (const NotEigenvalue& e) {
      o.reason = e.what();
    } catch (const DegenerateError& e) {
      o.reason = e.what();
    }
  }
  return out;
}

json base_report(const RunConfig& config) {
  return {{"tool", "toeplitz-eig"},
          {"version", kToolVersion},
          {"mode", config.mode},
          {"timestamp", utc_timestamp()},
          {"config", config.source}};
}

void split_outcomes(const std::vector<Outcome>& outcomes, json& report) {
  json records = json::array(), rejected = json::array();
  for (const auto& o : outcomes) {
    if (o.ok) records.push_back(o.record);
    else rejected.push_back({{"lambda", o.lambda}, {"reason", o.reason}});
  }
  report["records"] = std::move(records);
  report["rejected"] = std::move(rejected);
}

std::vector<double> open_interior(const std::vector<Outcome>& outcomes, const IntervalClassification& cls) {
  std::vector<double> out;
  for (const auto& o : outcomes) {
    if (o.ok && cls.contains_open(o.lambda)) out.push_back(o.lambda);
  }
  return out;
}

}  // namespace

SymbolSpec parse_symbol(const json& j, std::optional<double> q) {
  if (!j.is_object()) throw SpecError("symbol must be an object");
  const auto kind_name = get_field<std::string>(j, "kind", "symbol");
  SymbolSpec spec;
  if (kind_name == "arcs") spec.kind = SymbolKind::arcs;
  else if (kind_name == "trig") spec.kind = SymbolKind::trig;
  else if (kind_name == "samples") spec.kind = SymbolKind::samples;
  else throw SpecError("symbol.kind must be arcs, trig or samples (got '" + kind_name + "')");
  if (!j.contains("boundaries") || !j["boundaries"].is_array()) throw SpecError("symbol.boundaries must be an array");
  for (const auto& b : j["boundaries"]) spec.boundaries.push_back(parse_payload(b, spec.kind));
  spec.q = q;
  validate(spec);
  return spec;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw SpecError("config must be a JSON object");
  RunConfig config;
  config.source = j;
  config.mode = get_field<std::string>(j, "mode", "config");
  if (config.mode != "annulus" && config.mode != "neil") throw SpecError("mode must be 'annulus' or 'neil'");

  std::optional<double> q;
  if (config.mode == "annulus") {
    q = get_field<double>(j, "q", "config");
    if (!(*q > 0.0 && *q < 1.0)) throw SpecError("q must lie in (0, 1)");
  }
  config.symbol = parse_symbol(get_field<json>(j, "symbol", "config"), q);
  const std::size_t expected = config.mode == "annulus" ? 2 : 1;
  if (config.symbol.boundaries.size() != expected) {
    throw SpecError(config.mode + " symbol needs " + std::to_string(expected) + " boundary payload(s)");
  }

  if (j.contains("c")) {
    const auto c = get_field<std::vector<double>>(j, "c", "config");
    if (c.size() != 2) throw SpecError("c must be [re, im]");
    config.c = cplx(c[0], c[1]);
    if (*config.c == cplx{}) throw SpecError("c must be nonzero");
  }
  if (j.contains("c_scan")) config.c_scan = get_field<bool>(j, "c_scan", "config");
  if (config.mode == "neil" && !config.c && !config.c_scan) config.c = cplx(0.5, 0.0);

  if (j.contains("n_points")) {
    const auto n = get_field<long long>(j, "n_points", "config");
    if (n < 8 || !is_power_of_two(static_cast<std::size_t>(n))) throw SpecError("n_points must be a power of two >= 8");
    config.n_points = static_cast<std::size_t>(n);
  }
  if (j.contains("K")) config.K = get_field<int>(j, "K", "config");
  const int k_min = config.mode == "annulus" ? 1 : 2;
  const long long k_cap = config.mode == "annulus" ? static_cast<long long>(config.n_points / 2 - 1) / 2
                                                   : static_cast<long long>(config.n_points / 2 - 1);
  if (config.K < k_min || config.K > k_cap) {
    throw SpecError("K = " + std::to_string(config.K) + " out of range [" + std::to_string(k_min) + ", " +
                    std::to_string(k_cap) + "] for n_points = " + std::to_string(config.n_points));
  }

  if (j.contains("lambda")) {
    const json& l = j["lambda"];
    if (!l.is_object()) throw SpecError("lambda must be an object");
    auto& g = config.lambda;
    if (l.contains("auto")) g.automatic = get_field<bool>(l, "auto", "lambda");
    if (l.contains("count")) g.count = get_field<int>(l, "count", "lambda");
    if (g.count < 1) throw SpecError("lambda.count must be >= 1");
    if (l.contains("min")) g.min = get_field<double>(l, "min", "lambda");
    if (l.contains("max")) g.max = get_field<double>(l, "max", "lambda");
    if (l.contains("values")) g.values = get_field<std::vector<double>>(l, "values", "lambda");
    if (!g.values.empty()) g.automatic = false;
    if (!g.automatic && g.values.empty()) {
      if (!g.min || !g.max) throw SpecError("lambda.min and lambda.max are required unless auto or values is given");
      if (*g.min > *g.max) throw SpecError("lambda.min exceeds lambda.max");
    }
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SpecError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

std::vector<double> lambda_values(const LambdaGrid& grid, const IntervalClassification& cls) {
  std::vector<double> out;
  if (!grid.values.empty()) {
    out = grid.values;
  } else if (grid.automatic) {
    if (!cls.is_interval() || !(cls.M > cls.m)) return {};
    const double margin = 0.01 * (cls.M - cls.m);
    out = linspace(cls.m + margin, cls.M - margin, grid.count);
  } else {
    out = linspace(*grid.min, *grid.max, grid.count);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

json run_annulus(const RunConfig& config) {
  if (config.mode != "annulus") throw ContractViolation("run_annulus: mode must be annulus");
  const auto phi = realize_annulus(config.symbol, config.n_points);
  const auto cls = classify_annulus(phi);
  const auto lambdas = lambda_values(config.lambda, cls);
  const int K = config.K;

  const auto outcomes = evaluate_lambdas(lambdas, [&](double lambda) {
    auto rec = eigenvector_for(phi, lambda);
    rec = verify_eigenpair(phi, std::move(rec), K);
    rec = uniqueness_gap(phi, std::move(rec), K);
    return json{{"lambda", lambda},
                {"alpha", rec.alpha.value()},
                {"beta_unwrapped", rec.g.beta},
                {"c_sign", rec.c_sign},
                {"residual", *rec.residual},
                {"tail_energy", *rec.tail_energy},
                {"gap", *rec.gap},
                {"K", rec.K},
                {"symbol_identity_defect", symbol_identity_defect(phi, rec)},
                {"clamped_count", rec.symbol_index.clamped_count},
                {"warnings", rec.warnings}};
  });

  json report = base_report(config);
  report["classification"] = classification_json(cls);
  split_outcomes(outcomes, report);

  const auto interior = open_interior(outcomes, cls);
  json curve = {{"points", interior.size()}};
  if (!interior.empty()) {
    const auto ac = alpha_curve(phi, interior);
    curve["wrap_count"] = ac.wrap_count;
    curve["total_variation"] = ac.total_variation;
    curve["beta_span"] = ac.beta_span;
  }
  report["curve"] = curve;

  const double defect = annihilator_defect_annulus(phi.q, config.n_points, kAnnihilatorModes);
  report["selftest"] = {{"annihilator_defect", defect}, {"pass", defect < kAnnihilatorTol}};
  return report;
}

json run_neil(const RunConfig& config) {
  if (config.mode != "neil") throw ContractViolation("run_neil: mode must be neil");
  const auto phi = realize_circle(config.symbol, config.n_points);
  cplx c;
  IntervalClassification cls;
  json report = base_report(config);
  if (config.c_scan) {
    const auto scan = scan_neil_c(phi, config.c_scan_phases);
    c = scan.c;
    cls = scan.classification;
    report["c_scan"] = {{"phases", config.c_scan_phases}, {"best_phase", std::arg(c)}};
  } else {
    c = *config.c;
    cls = classify_neil(phi, c);
  }
  report["c"] = cplx_json(c);
  const auto lambdas = lambda_values(config.lambda, cls);
  const int K = config.K;

  const auto outcomes = evaluate_lambdas(lambdas, [&](double lambda) {
    auto rec = neil_eigen_record(phi, c, lambda);
    rec = verify_eigenpair_neil(phi, std::move(rec), K);
    const auto chart = rec.point.chart();
    return json{{"lambda", lambda},
                {"chart", chart.index},
                {"zeta_re", chart.coord.real()},
                {"zeta_im", chart.coord.imag()},
                {"point", {cplx_json(rec.point.v0), cplx_json(rec.point.v1)}},
                {"subspace", {cplx_json(rec.subspace.a()), cplx_json(rec.subspace.b())}},
                {"f0", rec.f.value0.real()},
                {"residual", *rec.residual},
                {"gap", *rec.gap},
                {"K", rec.K},
                {"symbol_identity_defect", neil_symbol_identity_defect(phi, rec)},
                {"clamped_count", rec.f.clamped_count},
                {"warnings", rec.warnings}};
  });

  report["classification"] = classification_json(cls);
  split_outcomes(outcomes, report);

  const auto interior = open_interior(outcomes, cls);
  json curve = {{"points", interior.size()}};
  if (interior.size() >= 2) curve["lipschitz_max_quotient"] = lipschitz_probe(phi, c, interior).max_quotient;
  report["curve"] = curve;

  const double defect = annihilator_defect_neil(config.n_points, kAnnihilatorModes, c);
  report["selftest"] = {{"annihilator_defect", defect}, {"pass", defect < kAnnihilatorTol}};
  return report;
}

json strip_timestamp(json report) {
  report.erase("timestamp");
  return report;
}

void write_csv(const json& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SpecError("cannot open CSV output '" + path + "'");
  out << std::setprecision(17);
  const bool annulus = report.at("mode") == "annulus";
  out << (annulus ? "lambda,alpha,beta_unwrapped,residual,gap\n" : "lambda,chart,zeta_re,zeta_im,residual,gap\n");
  for (const auto& r : report.at("records")) {
    if (annulus) {
      out << r["lambda"].get<double>() << ',' << r["alpha"].get<double>() << ',' << r["beta_unwrapped"].get<double>()
          << ',' << r["residual"].get<double>() << ',' << r["gap"].get<double>() << '\n';
    } else {
      out << r["lambda"].get<double>() << ',' << r["chart"].get<int>() << ',' << r["zeta_re"].get<double>() << ','
          << r["zeta_im"].get<double>() << ',' << r["residual"].get<double>() << ',' << r["gap"].get<double>() << '\n';
    }
  }
}

json selftest(const SelftestOptions& options) {
  json checks = json::array();
  bool all = true;
  bool injected_seen = false;
  auto check = [&](const std::string& name, double value, double tolerance) {
    if (options.inject_failure && *options.inject_failure == name) {
      tolerance = -1.0;  // nothing is below a negative tolerance
      injected_seen = true;
    }
    const bool pass = std::isfinite(value) && value <= tolerance;
    all = all && pass;
    checks.push_back({{"name", name}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}});
  };

  check("annihilator_annulus_q0.25", annihilator_defect_annulus(0.25, 512, kAnnihilatorModes), kAnnihilatorTol);
  check("annihilator_annulus_q0.5", annihilator_defect_annulus(0.5, 512, kAnnihilatorModes), kAnnihilatorTol);
  check("annihilator_neil", annihilator_defect_neil(512, kAnnihilatorModes, 0.5), kAnnihilatorTol);

  {
    const AnnulusHardyBasis basis(0.25, HardyIndex(0.3), 8);
    const Eigen::MatrixXcd gram = gram_matrix(basis, 512);
    const double dev = (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    check("gram_identity", dev, 1e-12);
  }

  {
    const std::size_t n = 512;
    const AnnulusSymbol step(0.25, std::vector<double>(n, 1.0), std::vector<double>(n, -1.0));
    auto r0 = verify_eigenpair(step, eigenvector_for(step, 0.0), 32);
    check("step_annulus_lambda0_alpha", circular_distance(r0.alpha.value(), 0.0), 1e-10);
    check("step_annulus_lambda0_residual", *r0.residual, 1e-10);
    auto r5 = verify_eigenpair(step, eigenvector_for(step, 0.5), 32);
    const double alpha_exact = std::log(3.0) / (4.0 * std::numbers::ln2);
    check("step_annulus_lambda0.5_alpha", std::abs(r5.alpha.value() - alpha_exact), 1e-8);
    check("step_annulus_lambda0.5_residual", *r5.residual, 1e-10);
    const auto t = toeplitz_matrix(step, r5.alpha, 32);
    check("step_annulus_lambda0.5_diagonal", std::abs(t.matrix(32, 32) - 0.5), 1e-10);
  }

  {
    const std::size_t n = 512;
    std::vector<double> f(n);
    const UniformGrid grid(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = 2.0 * std::cos(grid.angle(j));
    const CircleSymbol phi(f);
    auto rec = verify_eigenpair_neil(phi, neil_eigen_record(phi, 1.0, 0.0), 16);
    check("neil_exact_2cos_residual", *rec.residual, 1e-12);
  }

  if (options.inject_failure && !injected_seen) {
    throw SpecError("unknown check name for --inject-failure: '" + *options.inject_failure + "'");
  }
  return {{"tool", "toeplitz-eig"},
          {"version", kToolVersion},
          {"mode", "selftest"},
          {"timestamp", utc_timestamp()},
          {"checks", checks},
          {"pass", all}};
}

}  // namespace toeplitz
