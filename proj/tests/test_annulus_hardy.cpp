#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "toeplitz/annulus_hardy.hpp"
#include "toeplitz/errors.hpp"
#include "toeplitz/reference.hpp"

using namespace toeplitz;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Positive trigonometric polynomial of degree <= 8: 1.2 + sum of small harmonics.
std::vector<double> random_modulus(oracle::Lcg& rng, std::size_t n) {
  std::vector<double> a(9), b(9);
  for (int k = 1; k <= 8; ++k) {
    a[k] = (rng.next() - 0.5) * 0.2;
    b[k] = (rng.next() - 0.5) * 0.2;
  }
  const double base = 1.0 + 2.0 * rng.next();
  return oracle::sample(
      [&](double t) {
        double v = base;
        for (int k = 1; k <= 8; ++k) v += a[k] * std::cos(k * t) + b[k] * std::sin(k * t);
        return v;
      },
      n);
}

}  // namespace

TEST_SUITE("annulus_hardy") {
  TEST_CASE("index wraps into [0,1)") {
    CHECK(HardyIndex::wrap(1.25).value() == doctest::Approx(0.25));
    CHECK(HardyIndex::wrap(-0.25).value() == doctest::Approx(0.75));
    CHECK_THROWS(HardyIndex(1.0));
    CHECK_THROWS(HardyIndex(-0.1));
  }

  TEST_CASE("basis weights split unit mass between the circles") {
    const AnnulusHardyBasis basis(0.25, HardyIndex(0.3), 40);
    for (int n = -40; n <= 40; ++n) {
      const double o = basis.outer_weight(n), i = basis.inner_weight(n);
      CHECK(o * o + i * i == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::isfinite(o));
      CHECK(std::isfinite(i));
    }
  }

  TEST_CASE("Gram identity") {
    for (double q : {0.25, 0.5}) {
      for (double a : {0.0, 0.3, 0.9}) {
        const AnnulusHardyBasis basis(q, HardyIndex(a), 16);
        const auto gram = gram_matrix(basis, 512);
        CHECK(max_abs(gram - Eigen::MatrixXcd::Identity(33, 33)) < 1e-10);
      }
    }
  }

  TEST_CASE("constant symbols give multiples of the identity") {
    const std::size_t n = 256;
    const AnnulusSymbol one(0.25, std::vector<double>(n, 1.0), std::vector<double>(n, 1.0));
    const auto t = toeplitz_matrix(one, HardyIndex(0.4), 20);
    CHECK(max_abs(t.matrix - Eigen::MatrixXcd::Identity(41, 41)) < 1e-12);
    const AnnulusSymbol lam(0.5, std::vector<double>(n, -2.5), std::vector<double>(n, -2.5));
    const auto u = toeplitz_matrix(lam, HardyIndex(0.0), 20);
    CHECK(max_abs(u.matrix + 2.5 * Eigen::MatrixXcd::Identity(41, 41)) < 1e-12);
  }

  TEST_CASE("log-weight symbol has the hand-evaluated diagonal") {
    const std::size_t n = 256;
    const double l2 = std::log(2.0);
    const AnnulusSymbol phi(0.25, std::vector<double>(n, l2), std::vector<double>(n, -l2));
    const auto t = toeplitz_matrix(phi, HardyIndex(0.0), 8);
    CHECK(std::abs(t.matrix(8, 8)) < 1e-14);
    CHECK(t.matrix(9, 9).real() == doctest::Approx(l2 * 15.0 / 17.0).epsilon(1e-13));
    CHECK(std::abs(t.matrix(9, 9).real() - 0.611600) < 1e-6);
    for (int r = 0; r < 17; ++r) {
      const int m = r - 8;
      const double q2 = std::pow(0.25, 2 * m);
      CHECK(std::abs(t.matrix(r, r) - l2 * (1 - q2) / (1 + q2)) < 1e-12);
    }
    CHECK(max_abs(t.matrix - Eigen::MatrixXcd(t.matrix.diagonal().asDiagonal())) < 1e-14);
  }

  TEST_CASE("entries match direct quadrature on a smooth symbol") {
    const std::size_t n = 256;
    const auto f1 = oracle::sample([](double t) { return 1.0 + 0.3 * std::cos(t) - 0.2 * std::sin(3 * t); }, n);
    const auto fq = oracle::sample([](double t) { return -1.0 + 0.5 * std::sin(2 * t); }, n);
    const AnnulusSymbol phi(0.25, f1, fq);
    const double alpha = 0.37;
    const auto t = toeplitz_matrix(phi, HardyIndex(alpha), 10);
    const auto ref = reference::annulus_toeplitz_quadrature(phi, HardyIndex(alpha), 10);
    CHECK(max_abs(t.matrix - ref) < 1e-12);
    for (int r = 0; r < 21; r += 3) {
      for (int c = 0; c < 21; c += 4) {
        CHECK(std::abs(t.matrix(r, c) - oracle::annulus_entry(f1, fq, 0.25, alpha, r - 10, c - 10)) < 1e-12);
      }
    }
    CHECK(max_abs(t.matrix - t.matrix.adjoint()) < 1e-14);
  }

  TEST_CASE("Toeplitz truncation is linear in the symbol") {
    const std::size_t n = 128;
    const auto a1 = oracle::sample([](double t) { return std::cos(t); }, n);
    const auto aq = oracle::sample([](double t) { return std::sin(2 * t); }, n);
    const auto b1 = oracle::sample([](double t) { return 1.0 + std::sin(t); }, n);
    const auto bq = oracle::sample([](double t) { return std::cos(3 * t) - 0.5; }, n);
    std::vector<double> c1(n), cq(n);
    for (std::size_t j = 0; j < n; ++j) {
      c1[j] = 2.0 * a1[j] - 0.7 * b1[j];
      cq[j] = 2.0 * aq[j] - 0.7 * bq[j];
    }
    const HardyIndex alpha(0.6);
    const auto ta = toeplitz_matrix(AnnulusSymbol(0.4, a1, aq), alpha, 12).matrix;
    const auto tb = toeplitz_matrix(AnnulusSymbol(0.4, b1, bq), alpha, 12).matrix;
    const auto tc = toeplitz_matrix(AnnulusSymbol(0.4, c1, cq), alpha, 12).matrix;
    CHECK(max_abs(tc - (2.0 * ta - 0.7 * tb)) < 1e-12);
  }

  TEST_CASE("truncation limits") {
    const AnnulusSymbol phi(0.25, std::vector<double>(64, 1.0), std::vector<double>(64, 1.0));
    CHECK_NOTHROW(toeplitz_matrix(phi, HardyIndex(0.0), 15));
    CHECK_THROWS_AS(toeplitz_matrix(phi, HardyIndex(0.0), 16), TruncationError);
    CHECK_THROWS_AS(toeplitz_matrix(phi, HardyIndex(0.0), 0), ContractViolation);
  }

  TEST_CASE("Dirichlet solve: constant moduli give a power of z") {
    const std::size_t n = 128;
    const auto g = solve_dirichlet_outer(std::vector<double>(n, 2.0), std::vector<double>(n, 1.0), 0.25);
    CHECK(g.beta == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.c0.real() == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(g.c0.imag() == 0.0);
    for (int k = -g.K_h; k <= g.K_h; ++k) CHECK(std::abs(g.coefficient(k)) < 1e-15);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(g.gq[j]) == doctest::Approx(1.0).epsilon(1e-14));
      const cplx expect = 2.0 * std::exp(cplx(0.0, 0.5 * oracle::node(j, n)));
      CHECK(std::abs(g.g1[j] - expect) < 1e-13);
    }

    const auto one = solve_dirichlet_outer(std::vector<double>(n, 1.0), std::vector<double>(n, 1.0), 0.5);
    CHECK(one.beta == 0.0);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(one.g1[j] - 1.0) < 1e-15);
  }

  TEST_CASE("Dirichlet solve recovers 1 + z/2") {
    const std::size_t n = 256;
    const double q = 0.25;
    const auto w1 = oracle::sample([](double t) { return std::abs(1.0 + 0.5 * std::exp(cplx(0.0, t))); }, n);
    const auto wq = oracle::sample([&](double t) { return std::abs(1.0 + 0.5 * q * std::exp(cplx(0.0, t))); }, n);
    const auto g = solve_dirichlet_outer(w1, wq, q);
    CHECK(std::abs(g.beta) < 1e-14);
    CHECK(std::abs(g.coefficient(1) - 0.5) < 1e-8);
    CHECK(std::abs(g.coefficient(2) + 0.125) < 1e-8);
    for (int k = 1; k <= 16; ++k) CHECK(std::abs(g.coefficient(-k)) < 1e-12);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = std::exp(cplx(0.0, oracle::node(j, n)));
      CHECK(std::abs(g.g1[j] - (1.0 + 0.5 * z)) < 1e-12);
      CHECK(std::abs(g.gq[j] - (1.0 + 0.5 * q * z)) < 1e-12);
    }
  }

  TEST_CASE("Dirichlet solve errors") {
    std::vector<double> bad(64, 1.0);
    bad[5] = 0.0;
    CHECK_THROWS_AS(solve_dirichlet_outer(bad, std::vector<double>(64, 1.0), 0.25), DomainError);
    bad[5] = -1.0;
    CHECK_THROWS_AS(solve_dirichlet_outer(std::vector<double>(64, 1.0), bad, 0.25), DomainError);
    CHECK_THROWS_AS(solve_dirichlet_outer(std::vector<double>(64, 1.0), std::vector<double>(64, 1.0), 0.25, 32),
                    TruncationError);
  }

  TEST_CASE("Dirichlet solve reproduces arbitrary positive samples") {
    oracle::Lcg rng(41);
    const std::size_t n = 256;
    std::vector<double> w1(n), wq(n);
    for (std::size_t j = 0; j < n; ++j) {
      w1[j] = 0.5 + rng.next();
      wq[j] = 0.2 + 3.0 * rng.next();
    }
    for (double q : {0.05, 0.25, 0.7}) {
      const auto g = solve_dirichlet_outer(w1, wq, q);
      CHECK(modulus_defect(g, w1, wq) < 1e-10);
    }
  }

  TEST_CASE("index from modulus") {
    const std::size_t n = 64;
    oracle::Lcg rng(2);
    const auto w = random_modulus(rng, n);
    CHECK(index_from_modulus(w, w, 0.3).value() == doctest::Approx(0.0));
    CHECK(index_from_modulus(std::vector<double>(n, 2.0), std::vector<double>(n, 1.0), 0.25).value() ==
          doctest::Approx(0.5).epsilon(1e-14));
  }

  TEST_CASE("index of a product of moduli is the sum of indices") {
    oracle::Lcg rng(17);
    const std::size_t n = 256;
    for (int trial = 0; trial < 20; ++trial) {
      const auto a1 = random_modulus(rng, n), aq = random_modulus(rng, n);
      const auto b1 = random_modulus(rng, n), bq = random_modulus(rng, n);
      std::vector<double> p1(n), pq(n);
      for (std::size_t j = 0; j < n; ++j) {
        p1[j] = a1[j] * b1[j];
        pq[j] = aq[j] * bq[j];
      }
      const double sum = index_from_modulus(a1, aq, 0.25).value() + index_from_modulus(b1, bq, 0.25).value();
      CHECK(circular_distance(index_from_modulus(p1, pq, 0.25).value(), wrap_unit(sum)) < 1e-8);
    }
  }

  TEST_CASE("index from symbol") {
    const std::size_t n = 128;
    const AnnulusSymbol step(0.25, std::vector<double>(n, 1.0), std::vector<double>(n, -1.0));
    CHECK(index_from_symbol(step, 0.0).index.value() == 0.0);
    const auto half = index_from_symbol(step, 0.5);
    CHECK(std::abs(half.index.value() - std::log(3.0) / (4.0 * std::log(2.0))) < 1e-8);
    CHECK(std::abs(half.index.value() - oracle::step_index(1.0, -1.0, 0.25, 0.5)) < 1e-12);
    CHECK_FALSE(half.unreliable);
    for (double q : {0.1, 0.5, 0.9}) {
      const AnnulusSymbol s(q, std::vector<double>(n, 1.0), std::vector<double>(n, -1.0));
      CHECK(index_from_symbol(s, 0.0).index.value() == 0.0);
    }

    std::vector<double> f1(n, 1.0);
    for (std::size_t j = 0; j < 4; ++j) f1[j] = 0.0;
    const auto flagged = index_from_symbol(AnnulusSymbol(0.25, f1, std::vector<double>(n, -1.0)), 0.0);
    CHECK(flagged.clamped_count == 4);
    CHECK(flagged.unreliable);
  }

  TEST_CASE("projection onto the basis") {
    const std::size_t n = 256;
    const double q = 0.25;
    const auto one = solve_dirichlet_outer(std::vector<double>(n, 1.0), std::vector<double>(n, 1.0), q);
    const AnnulusHardyBasis b0(q, HardyIndex(0.0), 8);
    const auto p = project_to_basis(one, b0);
    CHECK(p.coeffs(8).real() == doctest::Approx(std::sqrt(4.0 * oracle::kPi)).epsilon(1e-13));
    for (int r = 0; r < 17; ++r)
      if (r != 8) CHECK(std::abs(p.coeffs(r)) < 1e-13);

    const double a = 0.3;
    const auto za = solve_dirichlet_outer(std::vector<double>(n, 1.0), std::vector<double>(n, std::pow(q, a)), q);
    CHECK(za.beta == doctest::Approx(a).epsilon(1e-14));
    const auto pa = project_to_basis(za, AnnulusHardyBasis(q, HardyIndex(a), 8));
    for (int r = 0; r < 17; ++r)
      if (r != 8) CHECK(std::abs(pa.coeffs(r)) < 1e-13);
    CHECK(pa.parseval_defect < 1e-12);

    const auto g2 = solve_dirichlet_outer(std::vector<double>(n, 2.0), std::vector<double>(n, 1.0), q);
    const auto p2 = project_to_basis(g2, AnnulusHardyBasis(q, HardyIndex(0.5), 8));
    CHECK(std::abs(p2.coeffs(8)) > 1.0);
    for (int r = 0; r < 17; ++r)
      if (r != 8) CHECK(std::abs(p2.coeffs(r)) < 1e-13);

    CHECK_THROWS_AS(project_to_basis(g2, AnnulusHardyBasis(q, HardyIndex(0.2), 8)), DomainError);
  }

  TEST_CASE("Sarason relation and modulus on random trig moduli") {
    oracle::Lcg rng(99);
    const std::size_t n = 256;
    for (int trial = 0; trial < 25; ++trial) {
      const auto w1 = random_modulus(rng, n), wq = random_modulus(rng, n);
      const auto g = solve_dirichlet_outer(w1, wq, 0.25);
      // Sampled coefficients carry ~1e-17 absolute roundoff, so 1e-8 relative
      // agreement is only meaningful for coefficients above ~1e-8.
      CHECK(sarason_relation_defect(g, 16, 1e-7) < 1e-8);
      CHECK(modulus_defect(g, w1, wq) < 1e-12);
      CHECK(g.c0.imag() == 0.0);
    }
  }
}
