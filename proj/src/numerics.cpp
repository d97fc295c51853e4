#include "toeplitz/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "toeplitz/errors.hpp"

namespace toeplitz {

namespace {

// In-place iterative radix-2 FFT, X[k] = sum_j x[j] exp(sign * 2 pi i jk/N).
void fft_radix2(std::vector<cplx>& x, int sign) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  // Twiddles evaluated directly per index; recurrences lose ~log N digits.
  std::vector<cplx> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double theta = sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = {std::cos(theta), std::sin(theta)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = x[start + k];
        const cplx v = x[start + k + half] * twiddle[k * stride];
        x[start + k] = u + v;
        x[start + k + half] = u - v;
      }
    }
  }
}

void require_grid_size(std::size_t n) {
  if (!is_power_of_two(n) || n < 8) {
    throw ContractViolation("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

UniformGrid::UniformGrid(std::size_t n_points) : n_(n_points) { require_grid_size(n_points); }

std::vector<double> UniformGrid::angles() const {
  std::vector<double> t(n_);
  for (std::size_t j = 0; j < n_; ++j) t[j] = angle(j);
  return t;
}

SpectralCoefficients::SpectralCoefficients(std::size_t n_points) : data_(n_points) {
  require_grid_size(n_points);
}

const cplx& SpectralCoefficients::at(int k) const {
  if (k < -max_mode() || k > max_mode()) {
    throw ContractViolation("Fourier mode " + std::to_string(k) + " outside |k| <= " +
                            std::to_string(max_mode()));
  }
  return data_[static_cast<std::size_t>(k + max_mode() + 1)];
}

cplx& SpectralCoefficients::at(int k) {
  return const_cast<cplx&>(static_cast<const SpectralCoefficients&>(*this).at(k));
}

SpectralCoefficients forward_transform(std::span<const cplx> samples) {
  const std::size_t n = samples.size();
  require_grid_size(n);
  std::vector<cplx> x(samples.begin(), samples.end());
  fft_radix2(x, -1);
  SpectralCoefficients out(n);
  const int half = static_cast<int>(n / 2);
  const double inv_n = 1.0 / static_cast<double>(n);
  // Midpoint nodes shift every mode by exp(-i pi k / N).
  for (int k = -half; k < half; ++k) {
    const std::size_t idx = static_cast<std::size_t>((k + static_cast<int>(n)) % static_cast<int>(n));
    const double shift = -M_PI * k * inv_n;
    const cplx value = x[idx] * cplx(std::cos(shift), std::sin(shift)) * inv_n;
    if (k == -half) {
      out.nyquist() = value;
    } else {
      out.at(k) = value;
    }
  }
  return out;
}

SpectralCoefficients forward_transform(std::span<const double> samples) {
  std::vector<cplx> z(samples.begin(), samples.end());
  return forward_transform(std::span<const cplx>(z));
}

SpectralCoefficients forward_transform(const UniformGrid& grid, std::span<const cplx> samples) {
  if (samples.size() != grid.size()) {
    throw ContractViolation("sample count " + std::to_string(samples.size()) +
                            " does not match grid size " + std::to_string(grid.size()));
  }
  return forward_transform(samples);
}

std::vector<cplx> inverse_transform(const SpectralCoefficients& coeffs) {
  const std::size_t n = coeffs.n_points();
  const int half = static_cast<int>(n / 2);
  std::vector<cplx> y(n);
  for (int k = -half; k < half; ++k) {
    const std::size_t idx = static_cast<std::size_t>((k + static_cast<int>(n)) % static_cast<int>(n));
    const double shift = M_PI * k / static_cast<double>(n);
    const cplx c = (k == -half) ? coeffs.nyquist() : coeffs.at(k);
    y[idx] = c * cplx(std::cos(shift), std::sin(shift));
  }
  fft_radix2(y, +1);
  return y;
}

std::vector<double> conjugate_function(std::span<const double> s) {
  auto coeffs = forward_transform(s);
  coeffs.at(0) = 0.0;
  coeffs.nyquist() = 0.0;
  for (int k = 1; k <= coeffs.max_mode(); ++k) {
    coeffs.at(k) *= cplx(0.0, -1.0);
    coeffs.at(-k) *= cplx(0.0, 1.0);
  }
  const auto z = inverse_transform(coeffs);
  std::vector<double> out(z.size());
  std::transform(z.begin(), z.end(), out.begin(), [](const cplx& v) { return v.real(); });
  return out;
}

EigenDecomposition hermitian_eigensolve(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw ContractViolation("eigensolve: matrix is not square");
  const double scale = h.cwiseAbs().maxCoeff();
  const double skew = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-10 * scale) {
    throw ContractViolation("eigensolve: matrix is not Hermitian (skew " + std::to_string(skew) + ")");
  }
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolve: no convergence");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

LogMean log_mean(std::span<const double> samples, double floor) {
  if (!(floor > 0.0)) throw ContractViolation("log_mean: floor must be positive");
  LogMean out;
  double sum = 0.0;
  for (double v : samples) {
    double a = std::abs(v);
    if (!(a >= floor)) {
      a = floor;
      ++out.clamped_count;
    }
    sum += std::log(a);
  }
  out.mean = samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
  return out;
}

double wrap_unit(double x) noexcept {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

double circular_distance(double a, double b) noexcept {
  const double d = wrap_unit(a - b);
  return std::min(d, 1.0 - d);
}

}  // namespace toeplitz
