#include "toeplitz/boundary_symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "toeplitz/errors.hpp"

namespace toeplitz {

namespace {

constexpr double kArcTolerance = 1e-9;
constexpr double kWeightZero = 1e-14;

void validate_arcs(const ArcList& arcs, std::size_t boundary) {
  const std::string where = "boundary " + std::to_string(boundary) + ": ";
  if (arcs.empty()) throw SpecError(where + "no arcs");
  ArcList sorted = arcs;
  std::sort(sorted.begin(), sorted.end(), [](const Arc& a, const Arc& b) { return a.from < b.from; });
  if (std::abs(sorted.front().from) > kArcTolerance) throw SpecError(where + "arcs must start at 0");
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Arc& a = sorted[i];
    if (!std::isfinite(a.value)) throw SpecError(where + "non-finite arc value");
    if (!(a.to > a.from)) throw SpecError(where + "empty or reversed arc");
    if (i + 1 < sorted.size()) {
      const double next = sorted[i + 1].from;
      if (next < a.to - kArcTolerance) throw SpecError(where + "overlapping arcs");
      if (next > a.to + kArcTolerance) throw SpecError(where + "gap between arcs");
    }
  }
  if (std::abs(sorted.back().to - kTwoPi) > kArcTolerance) {
    throw SpecError(where + "arcs must end at 2*pi");
  }
}

std::map<int, cplx> collect_terms(const TrigPolynomial& poly) {
  std::map<int, cplx> terms;
  for (const auto& t : poly) terms[t.k] += t.coeff;
  return terms;
}

void validate_trig(const TrigPolynomial& poly, std::size_t boundary) {
  const std::string where = "boundary " + std::to_string(boundary) + ": ";
  const auto terms = collect_terms(poly);
  for (const auto& [k, c] : terms) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw SpecError(where + "non-finite coefficient");
    const auto it = terms.find(-k);
    const cplx partner = it == terms.end() ? cplx{} : it->second;
    if (std::abs(partner - std::conj(c)) > 1e-12 * std::max(1.0, std::abs(c))) {
      throw SpecError(where + "trigonometric polynomial is not real-valued (mode " + std::to_string(k) + ")");
    }
  }
}

double eval_arcs(const ArcList& arcs, double t) {
  // Last arc absorbs the tolerance band at 2*pi.
  const Arc* best = &arcs.front();
  for (const auto& a : arcs) {
    if (t >= a.from && t < a.to) return a.value;
    if (a.to > best->to) best = &a;
  }
  return best->value;
}

double eval_trig(const std::map<int, cplx>& terms, double t) {
  double acc = 0.0;
  for (const auto& [k, c] : terms) acc += (c * std::polar(1.0, k * t)).real();
  return acc;
}

}  // namespace

void validate(const SymbolSpec& spec) {
  if (spec.boundaries.empty()) throw SpecError("symbol has no boundaries");
  if (spec.boundaries.size() > 2) throw SpecError("symbol has more than two boundaries");
  if (spec.boundaries.size() == 2) {
    if (!spec.q) throw SpecError("annulus symbol requires q");
    if (!(*spec.q > 0.0 && *spec.q < 1.0)) throw SpecError("q must lie in (0,1)");
  }
  for (std::size_t b = 0; b < spec.boundaries.size(); ++b) {
    const auto& payload = spec.boundaries[b];
    const bool kind_ok = (spec.kind == SymbolKind::arcs && std::holds_alternative<ArcList>(payload)) ||
                         (spec.kind == SymbolKind::trig && std::holds_alternative<TrigPolynomial>(payload)) ||
                         (spec.kind == SymbolKind::samples && std::holds_alternative<RawSamples>(payload));
    if (!kind_ok) throw SpecError("boundary " + std::to_string(b) + ": payload does not match symbol kind");
    if (const auto* arcs = std::get_if<ArcList>(&payload)) validate_arcs(*arcs, b);
    if (const auto* poly = std::get_if<TrigPolynomial>(&payload)) validate_trig(*poly, b);
    if (const auto* raw = std::get_if<RawSamples>(&payload)) {
      for (double v : *raw) {
        if (!std::isfinite(v)) throw SpecError("boundary " + std::to_string(b) + ": non-finite sample");
      }
    }
  }
}

AnnulusSymbol::AnnulusSymbol(double q_, std::vector<double> f1_, std::vector<double> fq_)
    : q(q_), grid(f1_.size()), f1(std::move(f1_)), fq(std::move(fq_)) {
  if (!(q > 0.0 && q < 1.0)) throw ContractViolation("annulus symbol: q must lie in (0,1)");
  if (fq.size() != f1.size()) throw ContractViolation("annulus symbol: boundary sample counts differ");
  for (double v : f1) if (!std::isfinite(v)) throw ContractViolation("annulus symbol: non-finite sample");
  for (double v : fq) if (!std::isfinite(v)) throw ContractViolation("annulus symbol: non-finite sample");
}

CircleSymbol::CircleSymbol(std::vector<double> f_) : grid(f_.size()), f(std::move(f_)) {
  for (double v : f) if (!std::isfinite(v)) throw ContractViolation("circle symbol: non-finite sample");
}

std::vector<double> sample_boundary(const BoundaryPayload& payload, std::size_t n_points) {
  const UniformGrid grid(n_points);
  std::vector<double> out(n_points);
  if (const auto* arcs = std::get_if<ArcList>(&payload)) {
    for (std::size_t j = 0; j < n_points; ++j) out[j] = eval_arcs(*arcs, grid.angle(j));
  } else if (const auto* poly = std::get_if<TrigPolynomial>(&payload)) {
    const auto terms = collect_terms(*poly);
    for (std::size_t j = 0; j < n_points; ++j) out[j] = eval_trig(terms, grid.angle(j));
  } else {
    const auto& raw = std::get<RawSamples>(payload);
    if (raw.size() != n_points) {
      throw SpecError("raw samples have length " + std::to_string(raw.size()) + ", expected " +
                      std::to_string(n_points));
    }
    out = raw;
  }
  return out;
}

std::variant<AnnulusSymbol, CircleSymbol> realize(const SymbolSpec& spec, std::size_t n_points) {
  if (!is_power_of_two(n_points) || n_points < 8) {
    throw SpecError("n_points must be a power of two >= 8");
  }
  validate(spec);
  if (spec.boundaries.size() == 2) {
    return AnnulusSymbol(*spec.q, sample_boundary(spec.boundaries[0], n_points),
                         sample_boundary(spec.boundaries[1], n_points));
  }
  return CircleSymbol(sample_boundary(spec.boundaries[0], n_points));
}

AnnulusSymbol realize_annulus(const SymbolSpec& spec, std::size_t n_points) {
  if (spec.boundaries.size() != 2) throw SpecError("annulus symbol needs exactly two boundaries");
  return std::get<AnnulusSymbol>(realize(spec, n_points));
}

CircleSymbol realize_circle(const SymbolSpec& spec, std::size_t n_points) {
  if (spec.boundaries.size() != 1) throw SpecError("circle symbol needs exactly one boundary");
  return std::get<CircleSymbol>(realize(spec, n_points));
}

IntervalClassification classify_annulus(const AnnulusSymbol& phi) {
  const auto [min1, max1] = std::minmax_element(phi.f1.begin(), phi.f1.end());
  const auto [minq, maxq] = std::minmax_element(phi.fq.begin(), phi.fq.end());
  IntervalClassification out;
  if (*maxq < 0.0 && 0.0 < *min1) {
    out = {IntervalCase::interval, *maxq, *min1, +1};
  } else if (*max1 < 0.0 && 0.0 < *minq) {
    out = {IntervalCase::interval, *max1, *minq, -1};
  } else {
    out = {IntervalCase::at_most_point, *maxq, *min1, 0};
  }
  return out;
}

IntervalClassification classify_neil(const CircleSymbol& phi, cplx c) {
  if (c == cplx{}) throw std::invalid_argument("classify_neil: c must be nonzero");
  double m = -std::numeric_limits<double>::infinity();
  double M = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < phi.f.size(); ++j) {
    const double w = 2.0 * (c * std::polar(1.0, phi.grid.angle(j))).real();
    if (std::abs(w) < kWeightZero) continue;
    if (w < 0.0) m = std::max(m, phi.f[j]);
    else M = std::min(M, phi.f[j]);
  }
  IntervalClassification out{IntervalCase::at_most_point, m, M, 0};
  if (m < 0.0 && 0.0 < M && std::isfinite(m) && std::isfinite(M)) {
    out.kind = IntervalCase::interval;
    out.orientation = +1;
  }
  return out;
}

NeilScan scan_neil_c(const CircleSymbol& phi, int n_phases) {
  if (n_phases < 4) throw ContractViolation("scan_neil_c: n_phases must be >= 4");
  NeilScan fallback{0.5, classify_neil(phi, 0.5)};
  std::optional<NeilScan> best;
  for (int k = 0; k < n_phases; ++k) {
    const cplx c = 0.5 * std::polar(1.0, kTwoPi * k / n_phases);
    const auto cls = classify_neil(phi, c);
    if (!cls.is_interval()) continue;
    if (!best || cls.M - cls.m > best->classification.M - best->classification.m) best = NeilScan{c, cls};
  }
  return best ? *best : fallback;
}

const char* to_string(Membership m) noexcept {
  switch (m) {
    case Membership::integrable: return "integrable";
    case Membership::divergent: return "divergent";
    case Membership::inconclusive: return "inconclusive";
  }
  return "?";
}

Membership endpoint_membership(std::span<const double> numerator, std::span<const double> denominator,
                               int refinement_levels) {
  if (refinement_levels < 2) throw ContractViolation("endpoint_membership: need at least 2 levels");
  if (numerator.size() != denominator.size()) throw ContractViolation("endpoint_membership: size mismatch");
  const std::size_t n_fine = numerator.size();
  // Strides 2^L, ..., 2. The full grid is left out: for integrands symmetric about
  // 0 or pi, reflection swaps node parity, so the odd-node sum equals the full sum
  // and the last doubling would look converged.
  const std::size_t coarsest_stride = std::size_t{1} << refinement_levels;
  if (!is_power_of_two(n_fine) || n_fine / coarsest_stride < 8) {
    throw ContractViolation("endpoint_membership: sample count too small for the refinement ladder");
  }
  std::vector<double> estimate;
  for (int level = 0; level < refinement_levels; ++level) {
    const std::size_t stride = coarsest_stride >> level;
    const std::size_t offset = stride / 2;
    double sum = 0.0;
    for (std::size_t j = offset; j < n_fine; j += stride) {
      sum += std::abs(numerator[j] / denominator[j]);
    }
    estimate.push_back(sum * static_cast<double>(stride) / static_cast<double>(n_fine));
  }
  const double last = estimate.back();
  const double prev = estimate[estimate.size() - 2];
  if (std::isfinite(last) && std::isfinite(prev) && std::abs(last - prev) < 1e-3 * std::abs(last)) {
    return Membership::integrable;
  }
  if (std::isfinite(last) && last == prev) return Membership::integrable;
  bool growing = true;
  for (std::size_t i = 1; i < estimate.size(); ++i) {
    if (!(estimate[i] >= 1.5 * estimate[i - 1])) growing = false;
  }
  return growing ? Membership::divergent : Membership::inconclusive;
}

}  // namespace toeplitz
