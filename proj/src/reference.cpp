#include "toeplitz/reference.hpp"

#include <cmath>

#include "toeplitz/errors.hpp"

namespace toeplitz::reference {

SpectralCoefficients dft(std::span<const cplx> samples) {
  const std::size_t n = samples.size();
  SpectralCoefficients out(n);
  const UniformGrid grid(n);
  const int half = static_cast<int>(n / 2);
  for (int k = -half; k < half; ++k) {
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) acc += samples[j] * std::polar(1.0, -k * grid.angle(j));
    acc /= static_cast<double>(n);
    if (k == -half) out.nyquist() = acc;
    else out.at(k) = acc;
  }
  return out;
}

Eigen::MatrixXcd annulus_toeplitz_quadrature(const AnnulusSymbol& phi, HardyIndex alpha, int K) {
  const AnnulusHardyBasis basis(phi.q, alpha, K);
  const std::size_t n = phi.grid.size();
  const int dim = basis.size();
  const double a = alpha.value();
  Eigen::MatrixXcd e1(n, dim), eq(n, dim);
  for (int r = 0; r < dim; ++r) {
    const double p = basis.mode(r) + a;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = std::polar(1.0, p * phi.grid.angle(j));
      const auto row = static_cast<Eigen::Index>(j);
      e1(row, r) = basis.outer_weight(basis.mode(r)) * z / std::sqrt(kTwoPi);
      eq(row, r) = basis.inner_weight(basis.mode(r)) * z / std::sqrt(kTwoPi);
    }
  }
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dim, dim);
  const double dt = kTwoPi / static_cast<double>(n);
  for (int col = 0; col < dim; ++col) {
    for (int row = 0; row < dim; ++row) {
      cplx acc{};
      for (std::size_t j = 0; j < n; ++j) {
        const auto i = static_cast<Eigen::Index>(j);
        acc += phi.f1[j] * e1(i, col) * std::conj(e1(i, row));
        acc += phi.fq[j] * eq(i, col) * std::conj(eq(i, row));
      }
      t(row, col) = acc * dt;
    }
  }
  return t;
}

Eigen::MatrixXcd neil_toeplitz_quadrature(const CircleSymbol& phi, const NeilSubspace& V, int K) {
  if (K < 2) throw ContractViolation("neil_toeplitz_quadrature: K must be >= 2");
  const std::size_t n = phi.grid.size();
  Eigen::MatrixXcd b(n, K);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = phi.grid.angle(j);
    const auto i = static_cast<Eigen::Index>(j);
    b(i, 0) = V.w0() + V.w1() * std::polar(1.0, t);
    for (int k = 2; k <= K; ++k) b(i, k - 1) = std::polar(1.0, k * t);
  }
  Eigen::MatrixXcd out(K, K);
  for (int col = 0; col < K; ++col) {
    for (int row = 0; row < K; ++row) {
      cplx acc{};
      for (std::size_t j = 0; j < n; ++j) {
        const auto i = static_cast<Eigen::Index>(j);
        acc += phi.f[j] * b(i, col) * std::conj(b(i, row));
      }
      out(row, col) = acc / static_cast<double>(n);
    }
  }
  return out;
}

}  // namespace toeplitz::reference
