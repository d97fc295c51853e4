#pragma once

// Serial reference kernels. They compute the same quantities as the fast
// (FFT / OpenMP) kernels by direct summation over grid nodes and are kept for
// cross-checking in tests and for the benchmark.

#include <span>

#include <Eigen/Dense>

#include "toeplitz/annulus_hardy.hpp"
#include "toeplitz/neil_spectra.hpp"
#include "toeplitz/numerics.hpp"

namespace toeplitz::reference {

/// O(N^2) direct sum for c(k) = (1/N) sum_j x_j exp(-i k t_j).
SpectralCoefficients dft(std::span<const cplx> samples);

/// <phi e_n, e_m> integrated node by node over both circles.
Eigen::MatrixXcd annulus_toeplitz_quadrature(const AnnulusSymbol& phi, HardyIndex alpha, int K);

/// <phi b_n, b_m> for b in {w, z^2, ..., z^K}, integrated node by node.
Eigen::MatrixXcd neil_toeplitz_quadrature(const CircleSymbol& phi, const NeilSubspace& V, int K);

}  // namespace toeplitz::reference
