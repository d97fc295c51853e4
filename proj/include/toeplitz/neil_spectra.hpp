#pragma once

// Eigenvalues relative to the Neil algebra {f in H^inf : f'(0) = 0}. The
// Toeplitz operators live on H^2_V = H^2 (-) V for one-dimensional V in C + Cz,
// and V is identified with a point of the complex projective line.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "toeplitz/boundary_symbols.hpp"
#include "toeplitz/numerics.hpp"

namespace toeplitz {

/// Homogeneous coordinates [v0 : v1] on P^1(C).
struct ProjectivePoint {
  cplx v0;
  cplx v1;

  ProjectivePoint(cplx v0_, cplx v1_);

  struct Chart {
    int index;   // 0: zeta = v0/v1 (|v1| >= |v0|), 1: xi = v1/v0
    cplx coord;
  };
  Chart chart() const noexcept;
};

/// |v0 w1 - v1 w0| / (||v|| ||w||); in [0, 1], zero iff the points coincide.
double chordal_distance(const ProjectivePoint& a, const ProjectivePoint& b) noexcept;

/// V = span{a + b z}; complement_unit w = (conj(b) - conj(a) z)/sqrt(|a|^2+|b|^2) spans (C + Cz) (-) V.
class NeilSubspace {
 public:
  NeilSubspace(cplx a, cplx b);

  cplx a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  cplx w0() const noexcept { return w0_; }
  cplx w1() const noexcept { return w1_; }

 private:
  cplx a_, b_, w0_, w1_;
};

struct DiscOuterBoundary {
  std::vector<cplx> samples;
  cplx value0;  // f(0) > 0
  cplx deriv0;  // f'(0)
  std::size_t clamped_count = 0;
};

/// f = exp(s + i conj(s)), s = log w; f(0) = exp(s^(0)), f'(0) = 2 f(0) s^(1).
/// Samples below the log floor are clamped and counted; nonpositive ones are rejected.
DiscOuterBoundary disc_outer(std::span<const double> w);

/// Outer f with (phi - lambda)|f|^2 = 2 Re(c e^{it}). Throws NotEigenvalue when the
/// ratio changes sign on the grid (or lambda is a non-integrable endpoint).
DiscOuterBoundary f_lambda(const CircleSymbol& phi, cplx c, double lambda);

/// [f(0) : f'(0)] for f = f_lambda(phi, c, lambda).
ProjectivePoint lambda_map(const CircleSymbol& phi, cplx c, double lambda);

/// V with p.v0 + p.v1 z orthogonal to V: span vector (conj(v1), -conj(v0)).
NeilSubspace subspace_from_point(const ProjectivePoint& p);

/// Matrix of T_phi on H^2_V in the orthonormal basis {w, z^2, ..., z^K}. Requires 2 <= K < N/2.
Eigen::MatrixXcd neil_toeplitz(const CircleSymbol& phi, const NeilSubspace& V, int K);

struct NeilEigenRecord {
  double lambda = 0.0;
  cplx c;
  DiscOuterBoundary f;
  ProjectivePoint point{1.0, 0.0};
  NeilSubspace subspace{0.0, 1.0};
  std::optional<double> residual;
  std::optional<double> gap;
  int K = 0;
  std::vector<std::string> warnings;
};

/// f_lambda, lambda_map and subspace_from_point in one record.
NeilEigenRecord neil_eigen_record(const CircleSymbol& phi, cplx c, double lambda);

/// Residual ||T_K v - lambda v|| / ||v|| and gap (second-smallest |eig(T_K - lambda)|).
/// Throws ContractViolation if f is not orthogonal to the record's V, DegenerateError if v ~ 0.
NeilEigenRecord verify_eigenpair_neil(const CircleSymbol& phi, NeilEigenRecord record, int K);

/// max_j |(phi_j - lambda)|f_j|^2 - 2 Re(c e^{it_j})| / max|2 Re(c e^{it})|.
double neil_symbol_identity_defect(const CircleSymbol& phi, const NeilEigenRecord& record);

struct LipschitzProbe {
  double max_quotient = 0.0;
  std::vector<ProjectivePoint> points;
};

/// Max over consecutive lambdas of d(Lambda(l_i), Lambda(l_i+1)) / (l_i+1 - l_i).
/// Lambdas must be strictly increasing and inside the open interval for c.
LipschitzProbe lipschitz_probe(const CircleSymbol& phi, cplx c, std::span<const double> lambdas,
                               bool parallel = true);

/// max over |n| <= n_max, n != +-1, of |(1/2pi) int e^{int} 2 Re(c e^{it}) dt| by grid quadrature.
double annihilator_defect_neil(std::size_t n_points, int n_max, cplx c);

}  // namespace toeplitz
