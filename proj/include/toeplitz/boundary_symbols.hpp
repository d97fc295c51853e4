#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "toeplitz/numerics.hpp"

namespace toeplitz {

// ---- declarative symbol specification ------------------------------------

/// Constant value on [from, to). A boundary's arcs must tile [0, 2*pi).
struct Arc {
  double from = 0.0;
  double to = 0.0;
  double value = 0.0;
};

/// Coefficient of exp(i k t). Real-valuedness requires c(-k) = conj(c(k)).
struct TrigTerm {
  int k = 0;
  cplx coeff;
};

using ArcList = std::vector<Arc>;
using TrigPolynomial = std::vector<TrigTerm>;
using RawSamples = std::vector<double>;
using BoundaryPayload = std::variant<ArcList, TrigPolynomial, RawSamples>;

enum class SymbolKind { arcs, trig, samples };

/// One payload for a circle symbol, two (outer B_1 first, then B_q) for an annulus.
struct SymbolSpec {
  SymbolKind kind = SymbolKind::arcs;
  std::vector<BoundaryPayload> boundaries;
  std::optional<double> q;  // annulus only
};

/// Throws SpecError describing the first problem found.
void validate(const SymbolSpec& spec);

// ---- sampled symbols ------------------------------------------------------

struct AnnulusSymbol {
  double q;
  UniformGrid grid;
  std::vector<double> f1;  // samples on |z| = 1
  std::vector<double> fq;  // samples on |z| = q

  AnnulusSymbol(double q, std::vector<double> f1, std::vector<double> fq);
};

struct CircleSymbol {
  UniformGrid grid;
  std::vector<double> f;

  explicit CircleSymbol(std::vector<double> f);
};

std::variant<AnnulusSymbol, CircleSymbol> realize(const SymbolSpec& spec, std::size_t n_points);
AnnulusSymbol realize_annulus(const SymbolSpec& spec, std::size_t n_points);
CircleSymbol realize_circle(const SymbolSpec& spec, std::size_t n_points);

/// Samples of a single boundary payload on the midpoint grid of size n_points.
std::vector<double> sample_boundary(const BoundaryPayload& payload, std::size_t n_points);

// ---- eigenvalue-interval classification ----------------------------------

enum class IntervalCase { interval, at_most_point };

/// m, M are essential sup/inf approximated by grid max/min. orientation is the
/// sign of c for an interval and 0 otherwise.
struct IntervalClassification {
  IntervalCase kind = IntervalCase::at_most_point;
  double m = 0.0;
  double M = 0.0;
  int orientation = 0;

  bool is_interval() const noexcept { return kind == IntervalCase::interval; }
  bool contains_open(double lambda) const noexcept {
    return is_interval() && m < lambda && lambda < M;
  }
};

IntervalClassification classify_annulus(const AnnulusSymbol& phi);

/// Weight w_j = 2 Re(c exp(i t_j)); nodes with |w_j| < 1e-14 belong to neither sign set.
IntervalClassification classify_neil(const CircleSymbol& phi, cplx c);

struct NeilScan {
  cplx c;
  IntervalClassification classification;
};

/// Tries c = exp(i theta)/2 for theta = 2 pi k / n_phases and keeps the widest interval.
NeilScan scan_neil_c(const CircleSymbol& phi, int n_phases);

// ---- endpoint integrability ----------------------------------------------

enum class Membership { integrable, divergent, inconclusive };

const char* to_string(Membership m) noexcept;

/// Riemann sums of |numerator/denominator| on sub-sampled grids of N_f/2^L, ..., N_f/2
/// nodes (N_f the sample count, one node per coarse cell). Requires N_f/2^L >= 8.
/// Integrable: relative change < 1e-3 at the last doubling. Divergent: growth by
/// >= 1.5 at every doubling. Otherwise inconclusive.
Membership endpoint_membership(std::span<const double> numerator,
                               std::span<const double> denominator, int refinement_levels);

}  // namespace toeplitz
