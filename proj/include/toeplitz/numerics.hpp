#pragma once

// Spectral kernel shared by the annulus and Neil code paths: Fourier analysis
// on midpoint grids, the boundary conjugate function, clamped log means and a
// dense Hermitian eigensolver.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace toeplitz {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kDefaultLogFloor = 1e-300;

/// Midpoint grid t_j = 2*pi*(j + 1/2)/N on [0, 2*pi). N is a power of two, N >= 8.
/// No node ever lands on t = 0 or t = pi.
class UniformGrid {
 public:
  explicit UniformGrid(std::size_t n_points);

  std::size_t size() const noexcept { return n_; }
  double angle(std::size_t j) const noexcept {
    return kTwoPi * (static_cast<double>(j) + 0.5) / static_cast<double>(n_);
  }
  std::vector<double> angles() const;

  /// Largest |k| for which a Fourier coefficient is reported: N/2 - 1.
  int max_mode() const noexcept { return static_cast<int>(n_ / 2) - 1; }

  bool operator==(const UniformGrid&) const = default;

 private:
  std::size_t n_;
};

bool is_power_of_two(std::size_t n) noexcept;

/// Coefficients c(k) = (1/N) sum_j x_j exp(-i k t_j) for k = -N/2 .. N/2-1.
/// at() exposes |k| <= N/2-1; the k = -N/2 term is kept so that the inverse
/// transform reproduces arbitrary samples.
class SpectralCoefficients {
 public:
  explicit SpectralCoefficients(std::size_t n_points);

  std::size_t n_points() const noexcept { return data_.size(); }
  int max_mode() const noexcept { return static_cast<int>(data_.size() / 2) - 1; }

  const cplx& at(int k) const;
  cplx& at(int k);
  const cplx& nyquist() const noexcept { return data_.front(); }
  cplx& nyquist() noexcept { return data_.front(); }

 private:
  std::vector<cplx> data_;  // data_[k + N/2]
};

SpectralCoefficients forward_transform(std::span<const cplx> samples);
SpectralCoefficients forward_transform(std::span<const double> samples);
std::vector<cplx> inverse_transform(const SpectralCoefficients& coeffs);

/// Overload that checks the sample count against a grid.
SpectralCoefficients forward_transform(const UniformGrid& grid, std::span<const cplx> samples);

/// Zero-mean harmonic conjugate: multiplier -i*sign(k), mean and Nyquist term dropped.
std::vector<double> conjugate_function(std::span<const double> s);

struct EigenDecomposition {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // orthonormal columns
};

/// Throws ContractViolation when ||h - h^*||_max > 1e-10 ||h||_max.
EigenDecomposition hermitian_eigensolve(const Eigen::MatrixXcd& h);

struct LogMean {
  double mean = 0.0;
  std::size_t clamped_count = 0;
};

/// mean = (1/N) sum_j log(max(|x_j|, floor)).
LogMean log_mean(std::span<const double> samples, double floor = kDefaultLogFloor);

/// Fractional part in [0, 1).
double wrap_unit(double x) noexcept;

/// Distance between a and b on the circle R/Z.
double circular_distance(double a, double b) noexcept;

}  // namespace toeplitz
