#pragma once

// Sarason's Hardy spaces H^2_alpha on the annulus q < |z| < 1: the orthonormal
// power basis, Toeplitz truncations, and outer functions built from boundary
// moduli by solving the Dirichlet problem in Fourier series.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "toeplitz/boundary_symbols.hpp"
#include "toeplitz/numerics.hpp"

namespace toeplitz {

/// Index alpha in [0, 1).
class HardyIndex {
 public:
  explicit HardyIndex(double alpha);
  static HardyIndex wrap(double beta) { return HardyIndex(wrap_unit(beta)); }
  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

/// e_n = z^(n+alpha) / sqrt(2 pi (1 + q^(2(n+alpha)))), n = -K..K, orthonormal in L^2(B, mu)
/// with mu(B_1) = mu(B_q) = 2 pi.
class AnnulusHardyBasis {
 public:
  AnnulusHardyBasis(double q, HardyIndex alpha, int half_width);

  double q() const noexcept { return q_; }
  HardyIndex alpha() const noexcept { return alpha_; }
  int half_width() const noexcept { return k_; }
  int size() const noexcept { return 2 * k_ + 1; }
  int mode(int row) const noexcept { return row - k_; }

  // Weights of e_n on the two boundaries: outer(n)^2 + inner(n)^2 = 1, with
  // outer(n) = 1/sqrt(1+q^(2(n+alpha))), inner(n) = q^(n+alpha) * outer(n).
  double outer_weight(int n) const;
  double inner_weight(int n) const;

 private:
  double q_;
  HardyIndex alpha_;
  int k_;
};

struct ToeplitzTruncation {
  Eigen::MatrixXcd matrix;
  AnnulusHardyBasis basis;
};

/// Entry (m,n) = [phi1^(m-n) + q^(m+n+2 alpha) phiq^(m-n)] / sqrt((1+q^(2(m+alpha)))(1+q^(2(n+alpha)))).
/// Requires K >= 1 and 2K+1 <= N/2. Assembly runs in parallel over columns.
ToeplitzTruncation toeplitz_matrix(const AnnulusSymbol& phi, HardyIndex alpha, int K);

/// Boundary data of g = z^beta exp(c0 + sum_{n != 0} h_n z^n), branch t in [0, 2 pi).
struct AnnulusOuterBoundary {
  double q = 0.0;
  double beta = 0.0;
  cplx c0;
  int K_h = 0;
  std::vector<cplx> h;  // h[n + K_h], n = -K_h..K_h, h[K_h] unused (0)
  std::vector<cplx> g1;
  std::vector<cplx> gq;

  cplx coefficient(int n) const { return h.at(static_cast<std::size_t>(n + K_h)); }
  HardyIndex index() const { return HardyIndex::wrap(beta); }
};

/// Outer function with |g| = w1 on |z| = 1 and |g| = wq on |z| = q; Im c0 = 0.
/// K_h defaults to N/2 - 1 (every resolvable mode, plus the grid's alternating
/// pattern so |g| matches the samples exactly); larger requests throw TruncationError.
AnnulusOuterBoundary solve_dirichlet_outer(std::span<const double> w1, std::span<const double> wq, double q,
                                           std::optional<int> K_h = std::nullopt);

HardyIndex index_from_modulus(std::span<const double> w1, std::span<const double> wq, double q);

struct IndexEstimate {
  HardyIndex index{0.0};
  double beta_unwrapped = 0.0;
  std::size_t clamped_count = 0;
  bool unreliable = false;  // more than 1% of samples hit the log floor
};

/// Index of the eigenvector of T_{phi - lambda}: frac((<log|f1-l|> - <log|fq-l|>) / (2 log q)).
IndexEstimate index_from_symbol(const AnnulusSymbol& phi, double lambda);

struct BasisProjection {
  Eigen::VectorXcd coeffs;  // <g, e_n>, n = -K..K
  double norm_squared = 0.0;  // ||g||^2 in L^2(B, mu)
  double parseval_defect = 0.0;  // | ||c||^2 - ||g||^2 | / ||g||^2
};

/// Throws DomainError unless beta mod 1 matches the basis index within 1e-6.
BasisProjection project_to_basis(const AnnulusOuterBoundary& g, const AnnulusHardyBasis& basis);

/// max over |n| <= 16 of |G1^(n) - q^(-n) Gq^(n)| / max(|G1^(n)|, |q^(-n) Gq^(n)|), restricted
/// to modes whose coefficients on both boundaries exceed `threshold`; G = g / z^beta.
double sarason_relation_defect(const AnnulusOuterBoundary& g, int n_max = 16, double threshold = 1e-12);

/// max_j | |g_j| - w_j | / w_j over samples with w_j > 1e-10, both boundaries.
double modulus_defect(const AnnulusOuterBoundary& g, std::span<const double> w1, std::span<const double> wq);

/// Numerically integrated Gram matrix of the basis on a grid of n_points nodes.
Eigen::MatrixXcd gram_matrix(const AnnulusHardyBasis& basis, std::size_t n_points);

}  // namespace toeplitz
