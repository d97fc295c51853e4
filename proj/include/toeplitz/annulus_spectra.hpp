#pragma once

// Eigenvalues of T^alpha_phi relative to the annulus algebra. For lambda inside
// the classified interval the eigenvector is the outer function g with
// |g|^2 = |psi|, psi = log|z q^(-1/2)| / (phi - lambda); its index is alpha.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toeplitz/annulus_hardy.hpp"
#include "toeplitz/boundary_symbols.hpp"

namespace toeplitz {

struct AnnulusEigenRecord {
  double lambda = 0.0;
  HardyIndex alpha{0.0};
  int c_sign = 1;  // c = c_sign: psi is left unscaled
  AnnulusOuterBoundary g;
  IndexEstimate symbol_index;
  std::optional<double> residual;
  std::optional<double> tail_energy;  // share of ||v||^2 beyond |n| > K/2
  std::optional<double> gap;
  int K = 0;
  std::vector<std::string> warnings;
};

/// Throws NotEigenvalue if psi is not sign-definite on the grid, or if lambda is
/// an endpoint of the interval whose integrability test is not `integrable`.
AnnulusEigenRecord eigenvector_for(const AnnulusSymbol& phi, double lambda);

/// residual = ||T_K v - lambda v|| / ||v||, v = coefficients of g in the alpha basis.
AnnulusEigenRecord verify_eigenpair(const AnnulusSymbol& phi, AnnulusEigenRecord record, int K);

/// gap = second-smallest |eigenvalue of T_K - lambda I|.
AnnulusEigenRecord uniqueness_gap(const AnnulusSymbol& phi, AnnulusEigenRecord record, int K);

/// max_j |(phi_j - lambda)|g_j|^2 - c w_j| / max|c w| on both boundaries,
/// w = log q^(-1/2) on B_1 and log q^(1/2) on B_q.
double symbol_identity_defect(const AnnulusSymbol& phi, const AnnulusEigenRecord& record);

struct AlphaPoint {
  double lambda = 0.0;
  double alpha = 0.0;
  double beta_unwrapped = 0.0;
};

struct AlphaCurve {
  std::vector<AlphaPoint> points;
  double total_variation = 0.0;
  int wrap_count = 0;  // floor(total variation of beta)
  double beta_span = 0.0;  // max beta - min beta
};

/// Evaluates the index curve at each lambda (parallel over lambda unless `parallel` is false).
/// Throws NotEigenvalue if any lambda lies outside the open classified interval.
AlphaCurve alpha_curve(const AnnulusSymbol& phi, std::span<const double> lambdas, bool parallel = true);

/// max_{|n| <= n_max} of the moments |(1/2 pi) int_B z^n w dmu| and of conj(z)^n, by grid quadrature.
double annulus_moment_defect(double q, std::span<const double> w1, std::span<const double> wq, int n_max);

/// annulus_moment_defect for the weight log|z q^(-1/2)|.
double annihilator_defect_annulus(double q, std::size_t n_points, int n_max);

}  // namespace toeplitz
