#include "toeplitz/annulus_hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "toeplitz/errors.hpp"

namespace toeplitz {

namespace {

constexpr double kNoiseFloor = 1e-13;

void require_same_grid(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ContractViolation("boundary sample counts differ");
  if (!is_power_of_two(a.size()) || a.size() < 8) {
    throw ContractViolation("boundary sample count must be a power of two >= 8");
  }
}

void require_positive(std::span<const double> w, const char* name) {
  for (double v : w) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("modulus samples on ") + name + " must be finite and positive");
    }
  }
}

std::vector<double> logs(std::span<const double> w) {
  std::vector<double> u(w.size());
  std::transform(w.begin(), w.end(), u.begin(), [](double v) { return std::log(v); });
  return u;
}

cplx denoise(cplx c) { return std::abs(c) < kNoiseFloor ? cplx{} : c; }

}  // namespace

HardyIndex::HardyIndex(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ContractViolation("Hardy index must lie in [0,1)");
}

AnnulusHardyBasis::AnnulusHardyBasis(double q, HardyIndex alpha, int half_width)
    : q_(q), alpha_(alpha), k_(half_width) {
  if (!(q > 0.0 && q < 1.0)) throw ContractViolation("basis: q must lie in (0,1)");
  if (half_width < 0) throw ContractViolation("basis: negative half width");
}

double AnnulusHardyBasis::outer_weight(int n) const {
  const double x = (n + alpha_.value()) * std::log(q_);  // log q^(n+alpha)
  if (x <= 0.0) return 1.0 / std::sqrt(1.0 + std::exp(2.0 * x));
  return std::exp(-x) / std::sqrt(std::exp(-2.0 * x) + 1.0);
}

double AnnulusHardyBasis::inner_weight(int n) const {
  const double x = (n + alpha_.value()) * std::log(q_);
  if (x <= 0.0) return std::exp(x) / std::sqrt(1.0 + std::exp(2.0 * x));
  return 1.0 / std::sqrt(std::exp(-2.0 * x) + 1.0);
}

ToeplitzTruncation toeplitz_matrix(const AnnulusSymbol& phi, HardyIndex alpha, int K) {
  if (K < 1) throw ContractViolation("toeplitz_matrix: K must be >= 1");
  if (static_cast<std::size_t>(2 * K + 1) > phi.grid.size() / 2) {
    throw TruncationError("toeplitz_matrix: 2K+1 = " + std::to_string(2 * K + 1) +
                          " exceeds half the grid size " + std::to_string(phi.grid.size() / 2));
  }
  const AnnulusHardyBasis basis(phi.q, alpha, K);
  const auto c1 = forward_transform(std::span<const double>(phi.f1));
  const auto cq = forward_transform(std::span<const double>(phi.fq));
  const int dim = basis.size();
  std::vector<double> outer(dim), inner(dim);
  for (int r = 0; r < dim; ++r) {
    outer[r] = basis.outer_weight(basis.mode(r));
    inner[r] = basis.inner_weight(basis.mode(r));
  }
  Eigen::MatrixXcd t(dim, dim);
#pragma omp parallel for schedule(static)
  for (int col = 0; col < dim; ++col) {
    for (int row = 0; row < dim; ++row) {
      const int diff = row - col;
      t(row, col) = outer[row] * outer[col] * c1.at(diff) + inner[row] * inner[col] * cq.at(diff);
    }
  }
  return {std::move(t), basis};
}

AnnulusOuterBoundary solve_dirichlet_outer(std::span<const double> w1, std::span<const double> wq, double q,
                                           std::optional<int> K_h) {
  require_same_grid(w1, wq);
  if (!(q > 0.0 && q < 1.0)) throw ContractViolation("solve_dirichlet_outer: q must lie in (0,1)");
  require_positive(w1, "|z| = 1");
  require_positive(wq, "|z| = q");
  const std::size_t n = w1.size();
  const int mode_cap = static_cast<int>(n / 2) - 1;
  const int modes = K_h.value_or(mode_cap);
  if (modes < 0) throw ContractViolation("solve_dirichlet_outer: K_h must be nonnegative");
  if (modes > mode_cap) {
    throw TruncationError("solve_dirichlet_outer: K_h = " + std::to_string(modes) +
                          " exceeds the grid's resolvable modes (" + std::to_string(mode_cap) +
                          "); refine the grid or lower K_h");
  }

  const auto u1 = logs(w1);
  const auto uq = logs(wq);
  const auto c1 = forward_transform(std::span<const double>(u1));
  const auto cq = forward_transform(std::span<const double>(uq));

  AnnulusOuterBoundary out;
  out.q = q;
  out.K_h = modes;
  out.c0 = cplx(c1.at(0).real(), 0.0);
  out.beta = (cq.at(0).real() - c1.at(0).real()) / std::log(q);
  out.h.assign(static_cast<std::size_t>(2 * modes + 1), cplx{});

  // Series coefficients as seen on each boundary circle.
  SpectralCoefficients on_outer(n), on_inner(n);
  for (int k = 1; k <= modes; ++k) {
    // h_k + conj(h_-k) = A,  q^k h_k + q^-k conj(h_-k) = B, solved without forming q^-k.
    const cplx a = 2.0 * denoise(c1.at(k));
    const cplx b = 2.0 * denoise(cq.at(k));
    const double qk = std::pow(q, k);
    const double scale = 1.0 - qk * qk;
    const cplx y = (b * qk - qk * qk * a) / scale;   // conj(h_-k)
    const cplx y_inner = (b - qk * a) / scale;       // conj(h_-k) q^-k
    const cplx x = a - y;                            // h_k
    out.h[static_cast<std::size_t>(modes + k)] = x;
    out.h[static_cast<std::size_t>(modes - k)] = std::conj(y);
    on_outer.at(k) = x;
    on_outer.at(-k) = std::conj(y);
    on_inner.at(k) = x * qk;
    on_inner.at(-k) = std::conj(y_inner);
  }
  if (modes == mode_cap) {
    // Alternating grid pattern: keeps |g| equal to the samples exactly.
    on_outer.nyquist() = c1.nyquist();
    on_inner.nyquist() = cq.nyquist();
  }
  const auto s1 = inverse_transform(on_outer);
  const auto sq = inverse_transform(on_inner);

  const UniformGrid grid(n);
  const double log_q = std::log(q);
  out.g1.resize(n);
  out.gq.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = grid.angle(j);
    out.g1[j] = std::exp(out.c0 + s1[j] + cplx(0.0, out.beta * t));
    out.gq[j] = std::exp(out.c0 + sq[j] + out.beta * cplx(log_q, t));
  }
  return out;
}

HardyIndex index_from_modulus(std::span<const double> w1, std::span<const double> wq, double q) {
  require_same_grid(w1, wq);
  if (!(q > 0.0 && q < 1.0)) throw ContractViolation("index_from_modulus: q must lie in (0,1)");
  require_positive(w1, "|z| = 1");
  require_positive(wq, "|z| = q");
  const double mean1 = log_mean(w1).mean;
  const double meanq = log_mean(wq).mean;
  return HardyIndex::wrap((meanq - mean1) / std::log(q));
}

IndexEstimate index_from_symbol(const AnnulusSymbol& phi, double lambda) {
  std::vector<double> d1(phi.f1.size()), dq(phi.fq.size());
  std::transform(phi.f1.begin(), phi.f1.end(), d1.begin(), [&](double v) { return v - lambda; });
  std::transform(phi.fq.begin(), phi.fq.end(), dq.begin(), [&](double v) { return v - lambda; });
  const auto l1 = log_mean(d1);
  const auto lq = log_mean(dq);
  IndexEstimate out;
  out.beta_unwrapped = (l1.mean - lq.mean) / (2.0 * std::log(phi.q));
  out.index = HardyIndex::wrap(out.beta_unwrapped);
  out.clamped_count = l1.clamped_count + lq.clamped_count;
  out.unreliable = static_cast<double>(out.clamped_count) > 0.01 * static_cast<double>(d1.size() + dq.size());
  return out;
}

BasisProjection project_to_basis(const AnnulusOuterBoundary& g, const AnnulusHardyBasis& basis) {
  if (std::abs(g.q - basis.q()) > 1e-15) throw DomainError("project_to_basis: q mismatch");
  const double alpha = basis.alpha().value();
  if (circular_distance(g.beta, alpha) > 1e-6) {
    throw DomainError("project_to_basis: function index " + std::to_string(wrap_unit(g.beta)) +
                      " does not match basis index " + std::to_string(alpha));
  }
  const std::size_t n = g.g1.size();
  if (basis.half_width() > static_cast<int>(n / 2) - 1) {
    throw TruncationError("project_to_basis: basis wider than the grid resolves");
  }
  const UniformGrid grid(n);
  std::vector<cplx> x1(n), xq(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx unwind = std::polar(1.0, -alpha * grid.angle(j));
    x1[j] = g.g1[j] * unwind;
    xq[j] = g.gq[j] * unwind;
  }
  const auto c1 = forward_transform(std::span<const cplx>(x1));
  const auto cq = forward_transform(std::span<const cplx>(xq));
  BasisProjection out;
  out.coeffs.resize(basis.size());
  const double root = std::sqrt(kTwoPi);
  for (int r = 0; r < basis.size(); ++r) {
    const int m = basis.mode(r);
    out.coeffs(r) = root * (basis.outer_weight(m) * c1.at(m) + basis.inner_weight(m) * cq.at(m));
  }
  double mean1 = 0.0, meanq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    mean1 += std::norm(g.g1[j]);
    meanq += std::norm(g.gq[j]);
  }
  out.norm_squared = kTwoPi * (mean1 + meanq) / static_cast<double>(n);
  out.parseval_defect = out.norm_squared > 0.0
                            ? std::abs(out.coeffs.squaredNorm() - out.norm_squared) / out.norm_squared
                            : 0.0;
  return out;
}

double sarason_relation_defect(const AnnulusOuterBoundary& g, int n_max, double threshold) {
  const std::size_t n = g.g1.size();
  const UniformGrid grid(n);
  std::vector<cplx> big1(n), bigq(n);
  const double q_beta = std::pow(g.q, g.beta);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx unwind = std::polar(1.0, -g.beta * grid.angle(j));
    big1[j] = g.g1[j] * unwind;
    bigq[j] = g.gq[j] * unwind / q_beta;
  }
  const auto c1 = forward_transform(std::span<const cplx>(big1));
  const auto cq = forward_transform(std::span<const cplx>(bigq));
  double worst = 0.0;
  for (int k = -n_max; k <= n_max; ++k) {
    if (std::abs(c1.at(k)) <= threshold || std::abs(cq.at(k)) <= threshold) continue;
    const cplx lifted = std::pow(g.q, -k) * cq.at(k);
    const double scale = std::max(std::abs(c1.at(k)), std::abs(lifted));
    worst = std::max(worst, std::abs(c1.at(k) - lifted) / scale);
  }
  return worst;
}

double modulus_defect(const AnnulusOuterBoundary& g, std::span<const double> w1, std::span<const double> wq) {
  double worst = 0.0;
  for (std::size_t j = 0; j < g.g1.size(); ++j) {
    if (w1[j] > 1e-10) worst = std::max(worst, std::abs(std::abs(g.g1[j]) - w1[j]) / w1[j]);
    if (wq[j] > 1e-10) worst = std::max(worst, std::abs(std::abs(g.gq[j]) - wq[j]) / wq[j]);
  }
  return worst;
}

Eigen::MatrixXcd gram_matrix(const AnnulusHardyBasis& basis, std::size_t n_points) {
  const UniformGrid grid(n_points);
  const int dim = basis.size();
  const double alpha = basis.alpha().value();
  const double q = basis.q();
  // Basis samples on both circles, e_n(q^j e^{it}) with mu_j = arclength scaled to 2 pi.
  Eigen::MatrixXcd outer(n_points, dim), inner(n_points, dim);
  for (int r = 0; r < dim; ++r) {
    const double p = basis.mode(r) + alpha;
    const double norm = std::sqrt(kTwoPi * (1.0 + std::pow(q, 2.0 * p)));
    for (std::size_t j = 0; j < n_points; ++j) {
      const cplx z = std::polar(1.0, p * grid.angle(j));
      outer(static_cast<Eigen::Index>(j), r) = z / norm;
      inner(static_cast<Eigen::Index>(j), r) = std::pow(q, p) * z / norm;
    }
  }
  const double dt = kTwoPi / static_cast<double>(n_points);
  return dt * (outer.adjoint() * outer + inner.adjoint() * inner);
}

}  // namespace toeplitz
