// Timings of the fast kernels against their serial references.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "toeplitz/annulus_hardy.hpp"
#include "toeplitz/annulus_spectra.hpp"
#include "toeplitz/neil_spectra.hpp"
#include "toeplitz/reference.hpp"

using namespace toeplitz;

namespace {

template <typename Fn>
double seconds(Fn&& fn, int reps = 1) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

void row(const char* name, double ref, double fast) {
  std::printf("%-34s %12.6f %12.6f %8.1fx\n", name, ref, fast, ref / fast);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %12s %12s %9s\n", "kernel", "reference s", "fast s", "speedup");

  {
    const std::size_t n = 4096;
    const UniformGrid grid(n);
    std::vector<cplx> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = std::exp(cplx(std::cos(grid.angle(j)), std::sin(3 * grid.angle(j))));
    const double ref = seconds([&] { (void)reference::dft(x); });
    const double fast = seconds([&] { (void)forward_transform(std::span<const cplx>(x)); }, 50);
    row("transform N=4096 (DFT vs FFT)", ref, fast);
  }

  const std::size_t n = 1024;
  const UniformGrid grid(n);
  std::vector<double> f1(n), fq(n, -1.0);
  for (std::size_t j = 0; j < n; ++j) f1[j] = 1.0 + 0.3 * std::cos(grid.angle(j));
  const AnnulusSymbol phi(0.25, f1, fq);

  {
    const HardyIndex alpha(0.3);
    const double ref = seconds([&] { (void)reference::annulus_toeplitz_quadrature(phi, alpha, 64); });
    const double fast = seconds([&] { (void)toeplitz_matrix(phi, alpha, 64); }, 20);
    row("annulus Toeplitz K=64", ref, fast);
  }

  {
    std::vector<double> lambdas;
    for (int i = 1; i <= 200; ++i) lambdas.push_back(-1.0 + 1.7 * i / 201.0);
    const double serial = seconds([&] { (void)alpha_curve(phi, lambdas, false); });
    const double parallel = seconds([&] { (void)alpha_curve(phi, lambdas, true); });
    row("alpha curve 200 lambdas", serial, parallel);
  }

  {
    std::vector<double> f(n);
    for (std::size_t j = 0; j < n; ++j) f[j] = std::cos(grid.angle(j)) >= 0.0 ? 1.0 : -1.0;
    const CircleSymbol sq(f);
    std::vector<double> lambdas;
    for (int i = 0; i < 201; ++i) lambdas.push_back(-0.9 + 1.8 * i / 200.0);
    const double serial = seconds([&] { (void)lipschitz_probe(sq, 0.5, lambdas, false); });
    const double parallel = seconds([&] { (void)lipschitz_probe(sq, 0.5, lambdas, true); });
    row("Lipschitz probe 201 lambdas", serial, parallel);
  }
  return 0;
}
