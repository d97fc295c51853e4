#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "toeplitz/errors.hpp"
#include "toeplitz/neil_spectra.hpp"
#include "toeplitz/reference.hpp"

using namespace toeplitz;

namespace {

CircleSymbol sign_cos(std::size_t n) {
  return CircleSymbol(oracle::sample([](double t) { return std::cos(t) >= 0.0 ? 1.0 : -1.0; }, n));
}

// Trig polynomial with the sign pattern of cos t; its interval shrinks to {0} as the grid refines.
CircleSymbol trig_symbol(std::size_t n) {
  return CircleSymbol(
      oracle::sample([](double t) { return std::cos(t) * (2.0 + 0.4 * std::cos(2 * t) + 0.3 * std::sin(t)); }, n));
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("neil_spectra") {
  TEST_CASE("projective points and the chordal metric") {
    CHECK_THROWS_AS(ProjectivePoint(0.0, 0.0), ContractViolation);
    const ProjectivePoint a(1.0, 0.0), b(0.0, 1.0), c(cplx(2.0, 1.0), cplx(-1.0, 0.5));
    CHECK(chordal_distance(a, b) == doctest::Approx(1.0));
    CHECK(chordal_distance(c, ProjectivePoint(c.v0 * cplx(0.0, 3.0), c.v1 * cplx(0.0, 3.0))) < 1e-15);
    oracle::Lcg rng(8);
    for (int i = 0; i < 50; ++i) {
      const cplx v0(rng.next() - 0.5, rng.next() - 0.5), v1(rng.next() - 0.5, rng.next() - 0.5);
      const cplx w0(rng.next() - 0.5, rng.next() - 0.5), w1(rng.next() - 0.5, rng.next() - 0.5);
      CHECK(chordal_distance({v0, v1}, {w0, w1}) == doctest::Approx(oracle::chordal(v0, v1, w0, w1)).epsilon(1e-10));
    }
    CHECK(ProjectivePoint(1.0, 0.0).chart().index == 1);
    const auto ch = ProjectivePoint(1.0, 2.0).chart();
    CHECK(ch.index == 0);
    CHECK(std::abs(ch.coord - 0.5) < 1e-15);
  }

  TEST_CASE("subspace from a point") {
    auto V = subspace_from_point({1.0, 0.0});
    CHECK(std::abs(V.a()) < 1e-15);  // span{z}
    CHECK(std::abs(V.b()) > 0.0);
    V = subspace_from_point({0.0, 1.0});
    CHECK(std::abs(V.b()) < 1e-15);  // span{1}
    V = subspace_from_point({1.0, 1.0});
    // span{1 - z}: a = -b, and <1 - z, 1 + z> = 1 - 1 = 0.
    CHECK(std::abs(V.a() + V.b()) < 1e-15);
    CHECK(std::abs(V.a() * std::conj(cplx(1.0)) + V.b() * std::conj(cplx(1.0))) < 1e-15);
    CHECK_THROWS_AS(NeilSubspace(0.0, 0.0), DomainError);
  }

  TEST_CASE("disc outer function examples") {
    const auto three = disc_outer(std::vector<double>(64, 3.0));
    CHECK(std::abs(three.value0 - 3.0) < 1e-14);
    CHECK(std::abs(three.deriv0) < 1e-14);

    const std::size_t n = 256;
    const auto w = oracle::sample([](double t) { return std::abs(1.0 + 0.5 * std::exp(cplx(0.0, t))); }, n);
    const auto f = disc_outer(w);
    CHECK(std::abs(f.value0 - 1.0) < 1e-8);
    CHECK(std::abs(f.deriv0 - 0.5) < 1e-8);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(f.samples[j] - (1.0 + 0.5 * std::exp(cplx(0.0, oracle::node(j, n))))) < 1e-12);

    // Midpoint error in the log mean is about 1.4/N, so the 1e-4 level needs N >= 16384.
    const std::size_t big = 65536;
    const auto root_cos = oracle::sample([](double t) { return std::sqrt(std::abs(std::cos(t))); }, big);
    const auto g = disc_outer(root_cos);
    CHECK(std::abs(g.value0 - std::sqrt(0.5)) < 1e-4);
    CHECK(std::abs(g.deriv0) < 1e-6);

    std::vector<double> bad(64, 1.0);
    bad[0] = -1.0;
    CHECK_THROWS_AS(disc_outer(bad), DomainError);
    bad[0] = 0.0;
    CHECK_THROWS_AS(disc_outer(bad), DomainError);
    bad[0] = 1e-320;
    CHECK(disc_outer(bad).clamped_count == 1);
  }

  TEST_CASE("multiplicativity of outer functions at the origin") {
    const std::size_t n = 512;
    const auto w1 = oracle::sample([](double t) { return 1.5 + std::cos(t) * 0.4 + 0.2 * std::sin(2 * t); }, n);
    const auto w2 = oracle::sample([](double t) { return 2.0 + 0.7 * std::sin(t) - 0.3 * std::cos(3 * t); }, n);
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = w1[j] * w2[j];
    const auto a = disc_outer(w1), b = disc_outer(w2), c = disc_outer(p);
    CHECK(std::abs(c.value0 - a.value0 * b.value0) < 1e-10);
    CHECK(std::abs(c.deriv0 - (a.deriv0 * b.value0 + a.value0 * b.deriv0)) < 1e-10);
  }

  TEST_CASE("f_lambda on sign(cos t)") {
    const std::size_t n = 65536;
    const auto phi = sign_cos(n);
    const auto f0 = f_lambda(phi, 0.5, 0.0);
    CHECK(std::abs(f0.value0 - std::sqrt(0.5)) < 1e-4);
    CHECK(std::abs(f0.deriv0) < 1e-6);
    const auto f5 = f_lambda(phi, 0.5, 0.5);
    const double oracle_value = std::sqrt(0.5) * std::pow(4.0 / 3.0, 0.25);
    CHECK(std::abs(f5.value0 - oracle_value) < 1e-3);
    CHECK(std::abs(f5.value0 - 0.759836) < 1e-3);
    CHECK_THROWS_AS(f_lambda(phi, 0.5, 1.5), NotEigenvalue);
    CHECK_THROWS_AS(f_lambda(phi, 0.0, 0.0), std::invalid_argument);
  }

  TEST_CASE("lambda map on sign(cos t)") {
    const auto phi = sign_cos(16384);
    const auto p0 = lambda_map(phi, 0.5, 0.0);
    CHECK(chordal_distance(p0, {1.0, 0.0}) <= 1e-6);
    const auto p5 = lambda_map(phi, 0.5, 0.5);
    CHECK(chordal_distance(p5, p0) > 0.0);
    CHECK(chordal_distance(p5, p0) > 1e-3);
  }

  TEST_CASE("lambda map is well defined") {
    const auto phi = trig_symbol(1024);
    REQUIRE(classify_neil(phi, 0.5).contains_open(0.0));
    const auto base = lambda_map(phi, 0.5, 0.0);
    for (double s : {0.01, 2.0, 70.0}) CHECK(chordal_distance(base, lambda_map(phi, 0.5 * s, 0.0)) <= 1e-10);
    const auto fine = lambda_map(trig_symbol(2048), 0.5, 0.0);
    CHECK(chordal_distance(base, fine) <= 1e-4);

    const auto step = sign_cos(1024);
    const auto p = lambda_map(step, 0.5, 0.3);
    for (double s : {0.01, 2.0, 70.0}) CHECK(chordal_distance(p, lambda_map(step, 0.5 * s, 0.3)) <= 1e-10);
  }

  TEST_CASE("eigen records satisfy the symbol identity and sit in H^2_V") {
    for (const auto& phi : {sign_cos(4096), trig_symbol(1024)}) {
      const auto cls = classify_neil(phi, 0.5);
      REQUIRE(cls.is_interval());
      for (int i = 1; i < 10; ++i) {
        const double lambda = cls.m + (cls.M - cls.m) * i / 10.0;
        CAPTURE(lambda);
        const auto rec = neil_eigen_record(phi, 0.5, lambda);
        CHECK(neil_symbol_identity_defect(phi, rec) <= 1e-6);
        const auto& V = rec.subspace;
        const double fnorm = std::hypot(std::abs(rec.f.value0), std::abs(rec.f.deriv0));
        CHECK(std::abs(rec.f.value0 * std::conj(V.a()) + rec.f.deriv0 * std::conj(V.b())) <= 1e-8 * fnorm);
        // never span{1}: no eigenvalues on z H^2
        CHECK(chordal_distance(rec.point, {0.0, 1.0}) > 0.0);
      }
    }
  }

  TEST_CASE("Neil Toeplitz matrix") {
    const std::size_t n = 256;
    const CircleSymbol one(std::vector<double>(n, 1.0));
    const NeilSubspace V(cplx(0.3, 0.1), cplx(-0.2, 0.9));
    CHECK(max_abs(neil_toeplitz(one, V, 12) - Eigen::MatrixXcd::Identity(12, 12)) < 1e-14);
    const auto phi = trig_symbol(n);
    const auto t = neil_toeplitz(phi, V, 16);
    CHECK(max_abs(t - t.adjoint()) < 1e-14);
    CHECK(max_abs(t - reference::neil_toeplitz_quadrature(phi, V, 16)) < 1e-12);
    CHECK_THROWS_AS(neil_toeplitz(phi, V, 1), ContractViolation);
    CHECK_THROWS_AS(neil_toeplitz(phi, V, 128), TruncationError);
  }

  TEST_CASE("exact eigenpair for 2 cos t") {
    const auto phi = CircleSymbol(oracle::sample([](double t) { return 2.0 * std::cos(t); }, 256));
    auto rec = neil_eigen_record(phi, 1.0, 0.0);
    for (const auto& v : rec.f.samples) CHECK(std::abs(v - 1.0) < 1e-13);
    CHECK(std::abs(rec.subspace.a()) < 1e-15);
    rec = verify_eigenpair_neil(phi, std::move(rec), 16);
    CHECK(*rec.residual <= 1e-12);
  }

  TEST_CASE("wrong subspace is a precondition error") {
    const auto phi = CircleSymbol(oracle::sample([](double t) { return 2.0 * std::cos(t); }, 256));
    auto rec = neil_eigen_record(phi, 1.0, 0.0);
    rec.subspace = NeilSubspace(1.0, 0.0);  // span{1}, but f(0) = 1
    CHECK_THROWS_AS(verify_eigenpair_neil(phi, rec, 16), ContractViolation);
  }

  TEST_CASE("step symbol residual and gap under truncation") {
    const auto phi = sign_cos(4096);
    const auto rec = neil_eigen_record(phi, 0.5, 0.0);
    double prev = 1e300;
    for (int K : {64, 128, 256}) {
      const auto v = verify_eigenpair_neil(phi, rec, K);
      CHECK(*v.residual < prev);
      prev = *v.residual;
    }
    CHECK(prev <= 5e-2);
  }

  TEST_CASE("Lipschitz probe") {
    const auto phi = sign_cos(4096);
    std::vector<double> coarse(101), fine(201);
    for (int i = 0; i < 101; ++i) coarse[i] = -0.5 + i / 100.0;
    for (int i = 0; i < 201; ++i) fine[i] = -0.5 + i / 200.0;
    const double L1 = lipschitz_probe(phi, 0.5, coarse).max_quotient;
    const double L2 = lipschitz_probe(phi, 0.5, fine).max_quotient;
    CHECK(std::isfinite(L1));
    CHECK(std::abs(L2 - L1) < 0.25 * L1);
    const auto serial = lipschitz_probe(phi, 0.5, coarse, false);
    CHECK(serial.max_quotient == L1);

    const std::vector<double> outside{0.0, 1.5};
    CHECK_THROWS_AS(lipschitz_probe(phi, 0.5, outside), NotEigenvalue);
    const std::vector<double> unsorted{0.2, 0.1};
    CHECK_THROWS_AS(lipschitz_probe(phi, 0.5, unsorted), ContractViolation);
  }

  TEST_CASE("Neil annihilator defect") {
    CHECK(annihilator_defect_neil(512, 0, 0.5) < 1e-16);
    CHECK(annihilator_defect_neil(512, 16, 0.5) < 1e-12);
    CHECK(annihilator_defect_neil(512, 16, cplx(0.3, -0.8)) < 1e-12);
  }
}
