#include "toeplitz/neil_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "toeplitz/errors.hpp"

namespace toeplitz {

namespace {

constexpr double kWeightZero = 1e-14;
constexpr int kEndpointLevels = 4;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Outer function from boundary log-modulus samples.
DiscOuterBoundary outer_from_log(const std::vector<double>& s, std::size_t clamped) {
  const auto coeffs = forward_transform(std::span<const double>(s));
  const auto harmonic = conjugate_function(s);
  DiscOuterBoundary out;
  out.samples.resize(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) out.samples[j] = std::exp(cplx(s[j], harmonic[j]));
  out.value0 = std::exp(coeffs.at(0).real());
  out.deriv0 = out.value0 * 2.0 * coeffs.at(1);
  out.clamped_count = clamped;
  return out;
}

double neil_weight(cplx c, double t) { return 2.0 * (c * std::polar(1.0, t)).real(); }

}  // namespace

ProjectivePoint::ProjectivePoint(cplx v0_, cplx v1_) : v0(v0_), v1(v1_) {
  if (v0 == cplx{} && v1 == cplx{}) throw ContractViolation("projective point needs a nonzero coordinate");
}

ProjectivePoint::Chart ProjectivePoint::chart() const noexcept {
  if (std::abs(v1) >= std::abs(v0)) return {0, v0 / v1};
  return {1, v1 / v0};
}

double chordal_distance(const ProjectivePoint& a, const ProjectivePoint& b) noexcept {
  const double na = std::hypot(std::abs(a.v0), std::abs(a.v1));
  const double nb = std::hypot(std::abs(b.v0), std::abs(b.v1));
  return std::min(1.0, std::abs(a.v0 * b.v1 - a.v1 * b.v0) / (na * nb));
}

NeilSubspace::NeilSubspace(cplx a, cplx b) : a_(a), b_(b) {
  const double norm = std::hypot(std::abs(a), std::abs(b));
  if (!(norm > 0.0)) throw DomainError("Neil subspace: span vector must be nonzero");
  w0_ = std::conj(b) / norm;
  w1_ = -std::conj(a) / norm;
}

DiscOuterBoundary disc_outer(std::span<const double> w) {
  std::vector<double> s(w.size());
  std::size_t clamped = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (!(w[j] > 0.0) || !std::isfinite(w[j])) throw DomainError("disc_outer: modulus must be finite and positive");
    double v = w[j];
    if (v < kDefaultLogFloor) {
      v = kDefaultLogFloor;
      ++clamped;
    }
    s[j] = std::log(v);
  }
  return outer_from_log(s, clamped);
}

DiscOuterBoundary f_lambda(const CircleSymbol& phi, cplx c, double lambda) {
  if (c == cplx{}) throw std::invalid_argument("f_lambda: c must be nonzero");
  const std::size_t n = phi.grid.size();
  const auto cls = classify_neil(phi, c);
  if (cls.is_interval() && (lambda == cls.m || lambda == cls.M)) {
    std::vector<double> num(n), den(n);
    for (std::size_t j = 0; j < n; ++j) {
      num[j] = neil_weight(c, phi.grid.angle(j));
      den[j] = phi.f[j] - lambda;
    }
    if ((n >> 2) < 8) {
      throw NotEigenvalue("lambda = " + fmt(lambda) + " is an interval endpoint and the grid is too coarse to " +
                          "test integrability (warning: inconclusive test)");
    }
    int levels = kEndpointLevels;
    while (levels > 2 && (n >> levels) < 8) --levels;
    const auto verdict = endpoint_membership(num, den, levels);
    if (verdict != Membership::integrable) {
      throw NotEigenvalue("lambda = " + fmt(lambda) + " is an interval endpoint and the ratio is " +
                          (verdict == Membership::divergent ? "not integrable"
                                                            : "not certifiably integrable (warning: inconclusive test)"));
    }
  }
  std::vector<double> s(n);
  std::size_t clamped = 0;
  const double log_floor = std::log(kDefaultLogFloor);
  for (std::size_t j = 0; j < n; ++j) {
    const double weight = neil_weight(c, phi.grid.angle(j));
    if (std::abs(weight) < kWeightZero) {
      s[j] = 0.5 * log_floor;
      ++clamped;
      continue;
    }
    const double ratio = weight / (phi.f[j] - lambda);
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
      throw NotEigenvalue("lambda = " + fmt(lambda) + ": (2 Re(c z)) / (phi - lambda) changes sign on the circle");
    }
    if (ratio < kDefaultLogFloor) {
      s[j] = 0.5 * log_floor;
      ++clamped;
    } else {
      s[j] = 0.5 * std::log(ratio);
    }
  }
  return outer_from_log(s, clamped);
}

ProjectivePoint lambda_map(const CircleSymbol& phi, cplx c, double lambda) {
  const auto f = f_lambda(phi, c, lambda);
  return {f.value0, f.deriv0};
}

NeilSubspace subspace_from_point(const ProjectivePoint& p) { return {std::conj(p.v1), -std::conj(p.v0)}; }

Eigen::MatrixXcd neil_toeplitz(const CircleSymbol& phi, const NeilSubspace& V, int K) {
  if (K < 2) throw ContractViolation("neil_toeplitz: K must be >= 2");
  if (K > phi.grid.max_mode()) {
    throw TruncationError("neil_toeplitz: K = " + std::to_string(K) + " must be below half the grid size");
  }
  const auto coeffs = forward_transform(std::span<const double>(phi.f));
  const int mono = K + 1;  // monomials 1, z, ..., z^K
  Eigen::MatrixXcd symbol(mono, mono);
#pragma omp parallel for schedule(static)
  for (int col = 0; col < mono; ++col) {
    for (int row = 0; row < mono; ++row) symbol(row, col) = coeffs.at(row - col);
  }
  // Columns: w, z^2, ..., z^K written in the monomial basis.
  Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(mono, K);
  basis(0, 0) = V.w0();
  basis(1, 0) = V.w1();
  for (int i = 1; i < K; ++i) basis(i + 1, i) = 1.0;
  return basis.adjoint() * symbol * basis;
}

NeilEigenRecord neil_eigen_record(const CircleSymbol& phi, cplx c, double lambda) {
  NeilEigenRecord record;
  record.lambda = lambda;
  record.c = c;
  record.f = f_lambda(phi, c, lambda);
  record.point = ProjectivePoint(record.f.value0, record.f.deriv0);
  record.subspace = subspace_from_point(record.point);
  if (record.f.clamped_count > 0) {
    record.warnings.push_back(std::to_string(record.f.clamped_count) + " log-modulus samples clamped");
  }
  return record;
}

NeilEigenRecord verify_eigenpair_neil(const CircleSymbol& phi, NeilEigenRecord record, int K) {
  const ProjectivePoint taylor(record.f.value0, record.f.deriv0);
  if (chordal_distance(taylor, record.point) > 1e-10) {
    throw ContractViolation("verify_eigenpair_neil: record point does not match (f(0), f'(0))");
  }
  const NeilSubspace& V = record.subspace;
  const double pair_norm = std::hypot(std::abs(taylor.v0), std::abs(taylor.v1)) *
                           std::hypot(std::abs(V.a()), std::abs(V.b()));
  if (std::abs(taylor.v0 * std::conj(V.a()) + taylor.v1 * std::conj(V.b())) > 1e-8 * pair_norm) {
    throw ContractViolation("verify_eigenpair_neil: f is not orthogonal to V, so f is not in H^2_V");
  }
  if (record.f.samples.size() != phi.grid.size()) {
    throw ContractViolation("verify_eigenpair_neil: eigenvector grid differs from symbol grid");
  }
  const auto fhat = forward_transform(std::span<const cplx>(record.f.samples));
  Eigen::VectorXcd v(K);
  v(0) = fhat.at(0) * std::conj(V.w0()) + fhat.at(1) * std::conj(V.w1());
  for (int k = 2; k <= K; ++k) v(k - 1) = fhat.at(k);
  const double vnorm = v.norm();
  if (vnorm < 1e-12) throw DegenerateError("verify_eigenpair_neil: coefficient vector is numerically zero");

  Eigen::MatrixXcd t = neil_toeplitz(phi, V, K);
  t.diagonal().array() -= record.lambda;
  record.residual = (t * v).norm() / vnorm;
  const auto eig = hermitian_eigensolve(t);
  std::vector<double> mags(static_cast<std::size_t>(eig.values.size()));
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(eig.values(i));
  std::sort(mags.begin(), mags.end());
  record.gap = mags.size() > 1 ? mags[1] : 0.0;
  record.K = K;
  return record;
}

double neil_symbol_identity_defect(const CircleSymbol& phi, const NeilEigenRecord& record) {
  double worst = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < phi.grid.size(); ++j) {
    const double weight = neil_weight(record.c, phi.grid.angle(j));
    scale = std::max(scale, std::abs(weight));
    worst = std::max(worst, std::abs((phi.f[j] - record.lambda) * std::norm(record.f.samples[j]) - weight));
  }
  return worst / scale;
}

LipschitzProbe lipschitz_probe(const CircleSymbol& phi, cplx c, std::span<const double> lambdas, bool parallel) {
  if (lambdas.size() < 2) throw ContractViolation("lipschitz_probe: need at least two lambdas");
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > lambdas[i - 1])) throw ContractViolation("lipschitz_probe: lambdas must increase strictly");
  }
  const auto cls = classify_neil(phi, c);
  for (double l : lambdas) {
    if (!cls.contains_open(l)) {
      throw NotEigenvalue("lipschitz_probe: lambda = " + fmt(l) + " is outside the open eigenvalue interval");
    }
  }
  LipschitzProbe probe;
  probe.points.assign(lambdas.size(), ProjectivePoint(1.0, 0.0));
  const auto count = static_cast<std::ptrdiff_t>(lambdas.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    probe.points[static_cast<std::size_t>(i)] = lambda_map(phi, c, lambdas[static_cast<std::size_t>(i)]);
  }
  for (std::size_t i = 1; i < lambdas.size(); ++i) {
    const double q = chordal_distance(probe.points[i - 1], probe.points[i]) / (lambdas[i] - lambdas[i - 1]);
    probe.max_quotient = std::max(probe.max_quotient, q);
  }
  return probe;
}

double annihilator_defect_neil(std::size_t n_points, int n_max, cplx c) {
  const UniformGrid grid(n_points);
  if (n_max < 0 || n_max > grid.max_mode()) throw ContractViolation("annihilator_defect_neil: n_max must be < n_points/2");
  std::vector<double> weight(n_points);
  for (std::size_t j = 0; j < n_points; ++j) weight[j] = neil_weight(c, grid.angle(j));
  const auto coeffs = forward_transform(std::span<const double>(weight));
  double worst = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 1 || n == -1) continue;
    worst = std::max(worst, std::abs(coeffs.at(-n)));
  }
  return worst;
}

}  // namespace toeplitz
