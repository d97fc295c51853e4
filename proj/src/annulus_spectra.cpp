#include "toeplitz/annulus_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "toeplitz/errors.hpp"

namespace toeplitz {

namespace {

constexpr int kEndpointLevels = 4;

// log|z q^(-1/2)| on each boundary circle.
double outer_log_weight(double q) { return -0.5 * std::log(q); }
double inner_log_weight(double q) { return 0.5 * std::log(q); }

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void check_endpoint(const AnnulusSymbol& phi, double lambda) {
  const std::size_t n = phi.grid.size();
  std::vector<double> num1(n, outer_log_weight(phi.q)), numq(n, inner_log_weight(phi.q));
  std::vector<double> den1(n), denq(n);
  for (std::size_t j = 0; j < n; ++j) {
    den1[j] = phi.f1[j] - lambda;
    denq[j] = phi.fq[j] - lambda;
  }
  if ((n >> 2) < 8) {
    throw NotEigenvalue("lambda = " + fmt(lambda) + " is an interval endpoint and the grid is too coarse to test " +
                        "integrability (warning: inconclusive test)");
  }
  int levels = kEndpointLevels;
  while (levels > 2 && (n >> levels) < 8) --levels;
  const auto m1 = endpoint_membership(num1, den1, levels);
  const auto mq = endpoint_membership(numq, denq, levels);
  if (m1 == Membership::integrable && mq == Membership::integrable) return;
  const bool divergent = m1 == Membership::divergent || mq == Membership::divergent;
  throw NotEigenvalue("lambda = " + fmt(lambda) + " is an interval endpoint and psi is " +
                      (divergent ? "not integrable" : "not certifiably integrable (warning: inconclusive test)"));
}

}  // namespace

AnnulusEigenRecord eigenvector_for(const AnnulusSymbol& phi, double lambda) {
  AnnulusEigenRecord record;
  record.lambda = lambda;
  const auto cls = classify_annulus(phi);
  if (cls.is_interval() && (lambda == cls.m || lambda == cls.M)) check_endpoint(phi, lambda);

  const std::size_t n = phi.grid.size();
  std::vector<double> psi1(n), psiq(n);
  for (std::size_t j = 0; j < n; ++j) {
    psi1[j] = outer_log_weight(phi.q) / (phi.f1[j] - lambda);
    psiq[j] = inner_log_weight(phi.q) / (phi.fq[j] - lambda);
  }
  const bool positive = psi1.front() > 0.0;
  for (const auto* psi : {&psi1, &psiq}) {
    for (double v : *psi) {
      if (!std::isfinite(v) || v == 0.0 || (v > 0.0) != positive) {
        throw NotEigenvalue("lambda = " + fmt(lambda) + ": psi is not sign-definite on the boundary");
      }
    }
  }
  record.c_sign = positive ? +1 : -1;

  std::vector<double> w1(n), wq(n);
  std::transform(psi1.begin(), psi1.end(), w1.begin(), [](double v) { return std::sqrt(std::abs(v)); });
  std::transform(psiq.begin(), psiq.end(), wq.begin(), [](double v) { return std::sqrt(std::abs(v)); });
  record.g = solve_dirichlet_outer(w1, wq, phi.q);
  record.alpha = record.g.index();
  record.symbol_index = index_from_symbol(phi, lambda);
  if (record.symbol_index.unreliable) record.warnings.push_back("log quadrature clamped > 1% of samples");
  if (circular_distance(record.alpha.value(), record.symbol_index.index.value()) > 1e-8) {
    throw std::logic_error("eigenvector_for: Dirichlet index " + fmt(record.alpha.value()) +
                           " disagrees with symbol index " + fmt(record.symbol_index.index.value()));
  }
  return record;
}

AnnulusEigenRecord verify_eigenpair(const AnnulusSymbol& phi, AnnulusEigenRecord record, int K) {
  const auto t = toeplitz_matrix(phi, record.alpha, K);
  const auto proj = project_to_basis(record.g, t.basis);
  const double vnorm = proj.coeffs.norm();
  if (!(vnorm > 1e-300)) throw DegenerateError("verify_eigenpair: eigenvector projects to zero");
  const Eigen::VectorXcd r = t.matrix * proj.coeffs - record.lambda * proj.coeffs;
  record.residual = r.norm() / vnorm;
  double tail = 0.0;
  for (int row = 0; row < t.basis.size(); ++row) {
    if (2 * std::abs(t.basis.mode(row)) > K) tail += std::norm(proj.coeffs(row));
  }
  record.tail_energy = tail / (vnorm * vnorm);
  record.K = K;
  return record;
}

AnnulusEigenRecord uniqueness_gap(const AnnulusSymbol& phi, AnnulusEigenRecord record, int K) {
  auto t = toeplitz_matrix(phi, record.alpha, K);
  t.matrix.diagonal().array() -= record.lambda;
  const auto eig = hermitian_eigensolve(t.matrix);
  std::vector<double> mags(static_cast<std::size_t>(eig.values.size()));
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) mags[static_cast<std::size_t>(i)] = std::abs(eig.values(i));
  std::sort(mags.begin(), mags.end());
  record.gap = mags.size() > 1 ? mags[1] : 0.0;
  record.K = K;
  if (*record.gap <= 1e-12) record.warnings.push_back("zero uniqueness gap (degenerate truncation)");
  return record;
}

double symbol_identity_defect(const AnnulusSymbol& phi, const AnnulusEigenRecord& record) {
  const double c = record.c_sign;
  const double w1 = c * outer_log_weight(phi.q);
  const double wq = c * inner_log_weight(phi.q);
  const double scale = std::max(std::abs(w1), std::abs(wq));
  double worst = 0.0;
  for (std::size_t j = 0; j < phi.grid.size(); ++j) {
    worst = std::max(worst, std::abs((phi.f1[j] - record.lambda) * std::norm(record.g.g1[j]) - w1));
    worst = std::max(worst, std::abs((phi.fq[j] - record.lambda) * std::norm(record.g.gq[j]) - wq));
  }
  return worst / scale;
}

AlphaCurve alpha_curve(const AnnulusSymbol& phi, std::span<const double> lambdas, bool parallel) {
  const auto cls = classify_annulus(phi);
  for (double l : lambdas) {
    if (!cls.contains_open(l)) {
      throw NotEigenvalue("alpha_curve: lambda = " + fmt(l) + " is outside the open eigenvalue interval");
    }
  }
  AlphaCurve curve;
  curve.points.resize(lambdas.size());
  const auto count = static_cast<std::ptrdiff_t>(lambdas.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const double l = lambdas[static_cast<std::size_t>(i)];
    const auto est = index_from_symbol(phi, l);
    curve.points[static_cast<std::size_t>(i)] = {l, est.index.value(), est.beta_unwrapped};
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    curve.total_variation += std::abs(curve.points[i].beta_unwrapped - curve.points[i - 1].beta_unwrapped);
  }
  curve.wrap_count = static_cast<int>(std::floor(curve.total_variation));
  if (!curve.points.empty()) {
    const auto [lo, hi] = std::minmax_element(curve.points.begin(), curve.points.end(),
                                              [](const AlphaPoint& a, const AlphaPoint& b) {
                                                return a.beta_unwrapped < b.beta_unwrapped;
                                              });
    curve.beta_span = hi->beta_unwrapped - lo->beta_unwrapped;
  }
  return curve;
}

double annulus_moment_defect(double q, std::span<const double> w1, std::span<const double> wq, int n_max) {
  if (w1.size() != wq.size()) throw ContractViolation("annulus_moment_defect: size mismatch");
  const auto c1 = forward_transform(w1);
  const auto cq = forward_transform(wq);
  if (n_max < 0 || n_max > c1.max_mode()) {
    throw ContractViolation("annulus_moment_defect: n_max must be < n_points/2");
  }
  double worst = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    // (1/2pi) int_B z^n w dmu = w1^(-n) + q^n wq^(-n); conj(z)^n gives w1^(n) + q^n wq^(n).
    const double qn = std::pow(q, n);
    worst = std::max(worst, std::abs(c1.at(-n) + qn * cq.at(-n)));
    worst = std::max(worst, std::abs(c1.at(n) + qn * cq.at(n)));
  }
  return worst;
}

double annihilator_defect_annulus(double q, std::size_t n_points, int n_max) {
  if (!(q > 0.0 && q < 1.0)) throw ContractViolation("annihilator_defect_annulus: q must lie in (0,1)");
  const UniformGrid grid(n_points);
  const std::vector<double> w1(n_points, outer_log_weight(q));
  const std::vector<double> wq(n_points, inner_log_weight(q));
  return annulus_moment_defect(q, w1, wq, n_max);
}

}  // namespace toeplitz
