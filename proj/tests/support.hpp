#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "robustgate/su2.hpp"

namespace testing {

using robustgate::Complex2x2;
using robustgate::cplx;

inline Eigen::Matrix2cd to_eigen(const Complex2x2& m) {
  Eigen::Matrix2cd e;
  e << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
  return e;
}

inline Complex2x2 from_eigen(const Eigen::Matrix2cd& e) {
  return {e(0, 0), e(0, 1), e(1, 0), e(1, 1)};
}

// Pade-based dense exponential, independent of the closed form under test.
inline Complex2x2 expm(const Complex2x2& m) { return from_eigen(to_eigen(m).exp()); }

inline Complex2x2 random_matrix(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng)), cplx(n(rng), n(rng))};
}

inline robustgate::Vec3 random_vec3(std::mt19937_64& rng, double bound) {
  std::uniform_real_distribution<double> u(-bound, bound);
  return {u(rng), u(rng), u(rng)};
}

inline robustgate::Unitary2 random_unitary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(-3.0, 3.0);
  const double p = phase(rng);
  return robustgate::Unitary2::trusted(
      std::polar(1.0, p) * robustgate::su2_exp(random_vec3(rng, 6.0)).matrix());
}

}  // namespace testing
