#pragma once

// Exact 2x2 complex algebra for single-qubit dynamics.
//
// Energies are measured in units of pi*hbar/T and time is the dimensionless
// angle theta in [0, pi], so every propagator here solves
//   i dU/dtheta = H(theta) U.

#include <array>
#include <complex>
#include <functional>

namespace robustgate {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kMatrixEqualTol = 1e-12;
inline constexpr int kDefaultGrid = 4096;

/// Row-major 2x2 complex matrix.
class Complex2x2 {
 public:
  constexpr Complex2x2() = default;
  constexpr Complex2x2(cplx a00, cplx a01, cplx a10, cplx a11) : m_{a00, a01, a10, a11} {}

  static Complex2x2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Complex2x2 zero() { return {}; }
  static Complex2x2 sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
  static Complex2x2 sigma2() { return {0.0, cplx(0, -1), cplx(0, 1), 0.0}; }
  static Complex2x2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }
  /// c0*1 + c1*sigma1 + c2*sigma2 + c3*sigma3 with complex weights.
  static Complex2x2 from_pauli(cplx c0, cplx c1, cplx c2, cplx c3);

  cplx operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }
  cplx& operator()(int row, int col) { return m_[static_cast<std::size_t>(2 * row + col)]; }

  Complex2x2 adjoint() const;
  cplx trace() const { return m_[0] + m_[3]; }
  cplx determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
  double frobenius_norm() const;
  bool is_finite() const;
  /// Coefficients (c0, c1, c2, c3) in the Pauli basis; c_k = Tr(sigma_k X)/2.
  std::array<cplx, 4> pauli_components() const;

  Complex2x2& operator+=(const Complex2x2& o);
  Complex2x2& operator-=(const Complex2x2& o);
  Complex2x2& operator*=(cplx s);

  friend Complex2x2 operator+(Complex2x2 a, const Complex2x2& b) { return a += b; }
  friend Complex2x2 operator-(Complex2x2 a, const Complex2x2& b) { return a -= b; }
  friend Complex2x2 operator-(Complex2x2 a) { return a *= -1.0; }
  friend Complex2x2 operator*(Complex2x2 a, cplx s) { return a *= s; }
  friend Complex2x2 operator*(cplx s, Complex2x2 a) { return a *= s; }
  friend Complex2x2 operator*(Complex2x2 a, double s) { return a *= s; }
  friend Complex2x2 operator*(double s, Complex2x2 a) { return a *= s; }
  friend Complex2x2 operator*(const Complex2x2& a, const Complex2x2& b);

 private:
  std::array<cplx, 4> m_{};
};

double frobenius_distance(const Complex2x2& a, const Complex2x2& b);
bool approx_equal(const Complex2x2& a, const Complex2x2& b, double tol = kMatrixEqualTol);

/// Complex2x2 satisfying U^dagger U = 1 and |det U| = 1 to kUnitaryTol.
class Unitary2 {
 public:
  Unitary2() : m_(Complex2x2::identity()) {}
  /// Throws ValidationError when the matrix is not unitary.
  explicit Unitary2(const Complex2x2& m);
  /// Skips the invariant check; only for products that are unitary by construction.
  static Unitary2 trusted(const Complex2x2& m);
  static bool check(const Complex2x2& m, double tol = kUnitaryTol);

  const Complex2x2& matrix() const { return m_; }
  Unitary2 adjoint() const { return trusted(m_.adjoint()); }
  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b) { return trusted(a.m_ * b.m_); }

 private:
  struct TrustedTag {};
  Unitary2(const Complex2x2& m, TrustedTag) : m_(m) {}
  Complex2x2 m_;
};

/// Complex2x2 satisfying X = X^dagger to kHermitianTol.
class Hermitian2 {
 public:
  Hermitian2() = default;
  /// Throws ValidationError when the matrix is not Hermitian.
  explicit Hermitian2(const Complex2x2& m);
  /// h0*1 + h1*sigma1 + h2*sigma2 + h3*sigma3; Hermitian exactly.
  static Hermitian2 from_pauli(double h0, double h1, double h2, double h3);
  static bool check(const Complex2x2& m, double tol = kHermitianTol);

  const Complex2x2& matrix() const { return m_; }
  /// Real Pauli coefficients (h0, h1, h2, h3).
  std::array<double, 4> pauli_components() const;

  friend Hermitian2 operator+(const Hermitian2& a, const Hermitian2& b);
  friend Hermitian2 operator*(double s, const Hermitian2& a);

 private:
  Complex2x2 m_{};
};

using HamiltonianFn = std::function<Hermitian2(double)>;

/// exp(i (c . sigma) / 2) in closed form; c = 0 gives the identity.
Unitary2 su2_exp(const Vec3& c);

/// exp(A) for anti-Hermitian A = i(a0 + a . sigma), via e^{i a0} su2_exp(2a).
Unitary2 exp_antihermitian(const Complex2x2& a);

struct Brackets {
  Hermitian2 herm;       ///< (X + X^dagger)/2
  Complex2x2 antiherm;   ///< (X - X^dagger)/2
  double real_trace;     ///< Re Tr(X) / 2
};

Brackets brackets(const Complex2x2& x);
Hermitian2 hermitian_part(const Complex2x2& x);
Complex2x2 antihermitian_part(const Complex2x2& x);
double real_trace(const Complex2x2& x);

/// Re Tr[W^dagger U] / 2, in [-1, 1].
double fidelity(const Unitary2& target, const Unitary2& achieved);

/// Midpoint piecewise-constant propagator over [theta0, theta1]: each step is
/// exp(-i h(mid) dtheta), exactly unitary, second-order accurate.
Unitary2 propagate_piecewise(const HamiltonianFn& h, double theta0, double theta1, int steps);

/// Principal logarithm of a unitary; the result is anti-Hermitian with
/// eigenphases in (-pi, pi). Throws NumericError ("log branch ambiguous")
/// when an eigenvalue lies within 1e-8 of -1.
Complex2x2 log_unitary(const Unitary2& u);

}  // namespace robustgate
