#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "robustgate/errors.hpp"
#include "robustgate/su2.hpp"
#include "support.hpp"

using namespace robustgate;
using std::numbers::pi;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("su2_exp: half-angle examples") {
  CHECK(approx_equal(su2_exp({pi, 0, 0}).matrix(), I * Complex2x2::sigma1()));
  CHECK(approx_equal(su2_exp({0, 0, 0}).matrix(), Complex2x2::identity()));
  CHECK(approx_equal(su2_exp({0, 0, pi}).matrix(), I * Complex2x2::sigma3()));
}

TEST_CASE("su2_exp agrees with a dense Pade exponential") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const Vec3 c = testing::random_vec3(rng, 10.0);
    const Complex2x2 gen = Complex2x2::from_pauli(0.0, 0.5 * I * c[0], 0.5 * I * c[1], 0.5 * I * c[2]);
    CHECK(frobenius_distance(su2_exp(c).matrix(), testing::expm(gen)) < 1e-11);
  }
}

TEST_CASE("su2_exp(c) su2_exp(-c) = 1 for |c| <= 10") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 500; ++t) {
    Vec3 c = testing::random_vec3(rng, 10.0);
    const double n = std::hypot(c[0], c[1], c[2]);
    if (n > 10.0) for (double& v : c) v *= 10.0 / n;
    const Vec3 m{-c[0], -c[1], -c[2]};
    CHECK(frobenius_distance((su2_exp(c) * su2_exp(m)).matrix(), Complex2x2::identity()) < 1e-12);
  }
}

TEST_CASE("checked wrappers reject bad matrices") {
  CHECK_THROWS_AS(Unitary2(2.0 * Complex2x2::identity()), ValidationError);
  CHECK_THROWS_AS(Hermitian2(I * Complex2x2::sigma1()), ValidationError);
  CHECK_NOTHROW(Unitary2(I * Complex2x2::sigma2()));
  CHECK_NOTHROW(Hermitian2(Complex2x2::sigma2()));
  const auto h = Hermitian2::from_pauli(0.5, -1.0, 2.0, 3.0).pauli_components();
  CHECK(h[0] == 0.5);
  CHECK(h[1] == -1.0);
  CHECK(h[2] == 2.0);
  CHECK(h[3] == 3.0);
}

TEST_CASE("brackets: examples") {
  const Brackets a = brackets(I * Complex2x2::sigma3());
  CHECK(a.herm.matrix().frobenius_norm() == 0.0);
  CHECK(approx_equal(a.antiherm, I * Complex2x2::sigma3()));

  const Brackets b = brackets(Complex2x2::sigma1());
  CHECK(approx_equal(b.herm.matrix(), Complex2x2::sigma1()));
  CHECK(b.antiherm.frobenius_norm() == 0.0);
  CHECK(b.real_trace == 0.0);

  CHECK(brackets(Complex2x2::identity() + I * Complex2x2::sigma2()).real_trace == doctest::Approx(1.0));
}

TEST_CASE("brackets: algebraic identities on random matrices") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 300; ++t) {
    const Complex2x2 x = testing::random_matrix(rng);
    const Complex2x2 y = testing::random_matrix(rng);
    const Brackets bx = brackets(x);
    CHECK(frobenius_distance(bx.herm.matrix() + bx.antiherm, x) < 1e-15);
    CHECK(hermitian_part(bx.antiherm).matrix().frobenius_norm() < 1e-15);
    CHECK(std::abs(real_trace(hermitian_part(y).matrix() * bx.antiherm)) < 1e-14);
  }
}

TEST_CASE("fidelity: examples and left-invariance") {
  const Unitary2 w = su2_exp({pi, 0, 0});
  const Unitary2 one;
  CHECK(fidelity(w, w) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(fidelity(w, one)) < 1e-15);
  const Unitary2 u = su2_exp({0.3, -1.2, 2.0});
  CHECK(fidelity(Unitary2::trusted(-u.matrix()), u) == doctest::Approx(-1.0).epsilon(1e-15));

  std::mt19937_64 rng(14);
  for (int t = 0; t < 200; ++t) {
    const Unitary2 a = testing::random_unitary(rng);
    const Unitary2 b = testing::random_unitary(rng);
    const Unitary2 v = testing::random_unitary(rng);
    CHECK(fidelity(v * a, v * b) == doctest::Approx(fidelity(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("propagate_piecewise: constant Hamiltonians") {
  const HamiltonianFn zero = [](double) { return Hermitian2(); };
  CHECK(approx_equal(propagate_piecewise(zero, 0.0, pi, 7).matrix(), Complex2x2::identity()));

  const HamiltonianFn not_gate = [](double) { return Hermitian2::from_pauli(0, -0.5, 0, 0); };
  CHECK(approx_equal(propagate_piecewise(not_gate, 0.0, pi, 1).matrix(), I * Complex2x2::sigma1()));

  // Detuned NOT: closed form sin(pi w / 2) / w.
  const HamiltonianFn detuned = [](double) { return Hermitian2::from_pauli(0, -0.5, 0, 0.1); };
  const double w = std::sqrt(1.04);
  CHECK(fidelity(su2_exp({pi, 0, 0}), propagate_piecewise(detuned, 0.0, pi, 4096)) ==
        doctest::Approx(std::sin(pi * w / 2) / w).epsilon(1e-6));
  CHECK(std::sin(pi * w / 2) / w == doctest::Approx(0.98011).epsilon(1e-5));

  // Scalar part contributes the global phase exp(-i h0 span).
  const HamiltonianFn phase = [](double) { return Hermitian2::from_pauli(0.25, 0, 0, 0); };
  CHECK(approx_equal(propagate_piecewise(phase, 0.0, 2.0, 3).matrix(),
                     std::polar(1.0, -0.5) * Complex2x2::identity()));
}

TEST_CASE("propagate_piecewise is second-order on a smooth Hamiltonian") {
  const HamiltonianFn h = [](double t) {
    return Hermitian2::from_pauli(0, std::cos(t), 0.7 * std::sin(2 * t), 0.3 + t * t / 4);
  };
  const Complex2x2 ref = propagate_piecewise(h, 0.0, 2.0, 1 << 15).matrix();
  double prev = 0.0;
  for (int steps = 32; steps <= 512; steps *= 2) {
    const double err = frobenius_distance(propagate_piecewise(h, 0.0, 2.0, steps).matrix(), ref);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("log_unitary: examples") {
  CHECK(log_unitary(Unitary2()).frobenius_norm() == 0.0);
  CHECK(approx_equal(log_unitary(su2_exp({0, 0, 0.2})), 0.1 * I * Complex2x2::sigma3()));
  CHECK_THROWS_WITH_AS(log_unitary(Unitary2::trusted(-Complex2x2::identity())),
                       doctest::Contains("log branch ambiguous"), NumericError);
}

TEST_CASE("log_unitary inverts exp on the principal branch") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> phase(-1.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    // Eigenphases phi0 +- |c|/2 kept inside (-pi, pi).
    Vec3 c = testing::random_vec3(rng, 2.0);
    const double p = phase(rng);
    const Unitary2 u = Unitary2::trusted(std::polar(1.0, p) * su2_exp(c).matrix());
    const Complex2x2 l = log_unitary(u);
    CHECK(Hermitian2::check(I * l, 1e-12));
    CHECK(frobenius_distance(testing::expm(l), u.matrix()) < 1e-12);
    CHECK(frobenius_distance(exp_antihermitian(l).matrix(), u.matrix()) < 1e-12);
  }
}
