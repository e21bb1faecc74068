#include "robustgate/su2.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "robustgate/errors.hpp"

namespace robustgate {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kBranchTol = 1e-8;

double wrap_phase(double phi) {
  // Map to (-pi, pi].
  double w = std::remainder(phi, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

// x / sin(x), analytic at 0.
double x_over_sin(double x) {
  if (std::abs(x) < 1e-6) return 1.0 + x * x / 6.0;
  return x / std::sin(x);
}

}  // namespace

Complex2x2 Complex2x2::from_pauli(cplx c0, cplx c1, cplx c2, cplx c3) {
  return {c0 + c3, c1 - kI * c2, c1 + kI * c2, c0 - c3};
}

Complex2x2 Complex2x2::adjoint() const {
  return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

double Complex2x2::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : m_) s += std::norm(z);
  return std::sqrt(s);
}

bool Complex2x2::is_finite() const {
  for (const auto& z : m_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

std::array<cplx, 4> Complex2x2::pauli_components() const {
  return {0.5 * (m_[0] + m_[3]), 0.5 * (m_[1] + m_[2]), 0.5 * kI * (m_[1] - m_[2]),
          0.5 * (m_[0] - m_[3])};
}

Complex2x2& Complex2x2::operator+=(const Complex2x2& o) {
  for (std::size_t k = 0; k < 4; ++k) m_[k] += o.m_[k];
  return *this;
}

Complex2x2& Complex2x2::operator-=(const Complex2x2& o) {
  for (std::size_t k = 0; k < 4; ++k) m_[k] -= o.m_[k];
  return *this;
}

Complex2x2& Complex2x2::operator*=(cplx s) {
  for (auto& z : m_) z *= s;
  return *this;
}

Complex2x2 operator*(const Complex2x2& a, const Complex2x2& b) {
  return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
          a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
}

double frobenius_distance(const Complex2x2& a, const Complex2x2& b) {
  return (a - b).frobenius_norm();
}

bool approx_equal(const Complex2x2& a, const Complex2x2& b, double tol) {
  return frobenius_distance(a, b) <= tol;
}

// ---------------------------------------------------------------------------

bool Unitary2::check(const Complex2x2& m, double tol) {
  if (!m.is_finite()) return false;
  if (frobenius_distance(m.adjoint() * m, Complex2x2::identity()) > tol) return false;
  return std::abs(std::abs(m.determinant()) - 1.0) <= tol;
}

Unitary2::Unitary2(const Complex2x2& m) : m_(m) {
  if (!check(m)) throw ValidationError("matrix is not unitary");
}

Unitary2 Unitary2::trusted(const Complex2x2& m) { return Unitary2(m, TrustedTag{}); }

bool Hermitian2::check(const Complex2x2& m, double tol) {
  return m.is_finite() && frobenius_distance(m, m.adjoint()) <= tol;
}

Hermitian2::Hermitian2(const Complex2x2& m) : m_(m) {
  if (!check(m)) throw ValidationError("matrix is not Hermitian");
}

Hermitian2 Hermitian2::from_pauli(double h0, double h1, double h2, double h3) {
  Hermitian2 h;
  h.m_ = {cplx(h0 + h3, 0.0), cplx(h1, -h2), cplx(h1, h2), cplx(h0 - h3, 0.0)};
  return h;
}

std::array<double, 4> Hermitian2::pauli_components() const {
  const auto c = m_.pauli_components();
  return {c[0].real(), c[1].real(), c[2].real(), c[3].real()};
}

Hermitian2 operator+(const Hermitian2& a, const Hermitian2& b) {
  Hermitian2 h;
  h.m_ = a.m_ + b.m_;
  return h;
}

Hermitian2 operator*(double s, const Hermitian2& a) {
  Hermitian2 h;
  h.m_ = a.m_ * s;
  return h;
}

// ---------------------------------------------------------------------------

Unitary2 su2_exp(const Vec3& c) {
  for (double v : c) {
    if (!std::isfinite(v)) throw NumericError("su2_exp: non-finite rotation vector");
  }
  const double norm = std::hypot(c[0], c[1], c[2]);
  if (norm == 0.0) return Unitary2{};
  const double cs = std::cos(0.5 * norm);
  const double sn = std::sin(0.5 * norm) / norm;
  // cos(|c|/2) + i sin(|c|/2) (c/|c|).sigma
  return Unitary2::trusted({cplx(cs, sn * c[2]), cplx(sn * c[1], sn * c[0]),
                            cplx(-sn * c[1], sn * c[0]), cplx(cs, -sn * c[2])});
}

Unitary2 exp_antihermitian(const Complex2x2& a) {
  if (!a.is_finite()) throw NumericError("exp_antihermitian: non-finite input");
  const auto p = a.pauli_components();
  // a = i(a0 + a.sigma) with real a0, a; the real parts of p are the
  // Hermitian residue and are ignored.
  const double phase = p[0].imag();
  const Unitary2 rot = su2_exp({2.0 * p[1].imag(), 2.0 * p[2].imag(), 2.0 * p[3].imag()});
  return Unitary2::trusted(rot.matrix() * std::polar(1.0, phase));
}

Hermitian2 hermitian_part(const Complex2x2& x) {
  const cplx off = 0.5 * (x(0, 1) + std::conj(x(1, 0)));
  return Hermitian2(Complex2x2{cplx(x(0, 0).real(), 0.0), off, std::conj(off),
                               cplx(x(1, 1).real(), 0.0)});
}

Complex2x2 antihermitian_part(const Complex2x2& x) { return 0.5 * (x - x.adjoint()); }

double real_trace(const Complex2x2& x) { return 0.5 * x.trace().real(); }

Brackets brackets(const Complex2x2& x) {
  if (!x.is_finite()) throw NumericError("brackets: non-finite input");
  return {hermitian_part(x), antihermitian_part(x), real_trace(x)};
}

double fidelity(const Unitary2& target, const Unitary2& achieved) {
  return real_trace(target.matrix().adjoint() * achieved.matrix());
}

Unitary2 propagate_piecewise(const HamiltonianFn& h, double theta0, double theta1, int steps) {
  if (steps < 1) throw ValidationError("propagate_piecewise: steps must be >= 1");
  const double dt = (theta1 - theta0) / steps;
  Complex2x2 u = Complex2x2::identity();
  for (int k = 0; k < steps; ++k) {
    const double mid = theta0 + (k + 0.5) * dt;
    const auto c = h(mid).pauli_components();
    for (double v : c) {
      if (!std::isfinite(v)) throw NumericError("propagate_piecewise: non-finite Hamiltonian sample");
    }
    // exp(-i (h0 + h.sigma) dt) = e^{-i h0 dt} exp(i (-2 dt h).sigma / 2)
    const Unitary2 step = su2_exp({-2.0 * dt * c[1], -2.0 * dt * c[2], -2.0 * dt * c[3]});
    u = step.matrix() * u;
    if (c[0] != 0.0) u *= std::polar(1.0, -c[0] * dt);
  }
  return Unitary2::trusted(u);
}

Complex2x2 log_unitary(const Unitary2& u) {
  const Complex2x2& m = u.matrix();
  // u = e^{i phi} S with S in SU(2); S = cos(alpha) + i sin(alpha) n.sigma.
  const double phi = 0.5 * std::arg(m.determinant());
  const Complex2x2 s = m * std::polar(1.0, -phi);
  const auto p = s.pauli_components();
  const double cos_a = p[0].real();
  const double sin_a = std::hypot(p[1].imag(), p[2].imag(), p[3].imag());
  const double alpha = std::atan2(sin_a, cos_a);

  const double beta_plus = wrap_phase(phi + alpha);
  const double beta_minus = wrap_phase(phi - alpha);
  for (double beta : {beta_plus, beta_minus}) {
    if (std::abs(std::polar(1.0, beta) + 1.0) < kBranchTol) {
      throw NumericError("log branch ambiguous");
    }
  }
  const double mean = 0.5 * (beta_plus + beta_minus);
  const double half_gap = 0.5 * (beta_plus - beta_minus);
  // log u = i mean + (d / sin d) e^{-i mean} (u - e^{i mean} cos d)
  Complex2x2 result = m * std::polar(1.0, -mean) - Complex2x2::identity() * std::cos(half_gap);
  result *= x_over_sin(half_gap);
  result += Complex2x2::identity() * cplx(0.0, mean);
  return result;
}

}  // namespace robustgate
