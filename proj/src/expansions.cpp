#include "robustgate/expansions.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "robustgate/errors.hpp"

namespace robustgate {

namespace {

constexpr double kCriticalTol = 1e-8;

void check_order(int order) {
  if (order < 1 || order > kMaxExpansionOrder) {
    throw ValidationError("expansion order must be in 1.." + std::to_string(kMaxExpansionOrder));
  }
}

}  // namespace

cplx minus_i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

DysonStack DysonStack::scaled(double eps) const {
  DysonStack out = *this;
  double factor = 1.0;
  for (int n = 1; n <= kMaxExpansionOrder; ++n) {
    factor *= eps;
    out.P[static_cast<std::size_t>(n - 1)] *= factor;
  }
  return out;
}

Complex2x2 DysonStack::partial_sum() const {
  Complex2x2 v = Complex2x2::identity();
  for (int n = 1; n <= order; ++n) v += minus_i_pow(n) * (*this)[n];
  return v;
}

Complex2x2 MagnusStack::omega(int k) const {
  return cplx(0.0, -1.0) * i_omega[static_cast<std::size_t>(k - 1)];
}

Complex2x2 MagnusStack::sum() const {
  Complex2x2 s;
  for (int k = 0; k < order; ++k) s += i_omega[static_cast<std::size_t>(k)];
  return s;
}

HamiltonianFn interaction_hamiltonian(UnitaryFn u, const Hermitian2& dH) {
  return [u = std::move(u), dH](double theta) {
    const Unitary2 ut = u(theta);
    if (!Unitary2::check(ut.matrix())) {
      throw ValidationError("interaction_hamiltonian: non-unitary propagator sample");
    }
    return hermitian_part(ut.matrix().adjoint() * dH.matrix() * ut.matrix());
  };
}

DysonStack dyson_terms(std::span<const Hermitian2> samples, double span, int order) {
  check_order(order);
  const int grid = static_cast<int>(samples.size()) - 1;
  if (grid < kMinDysonGrid) {
    throw ValidationError("dyson_terms: grid must be >= " + std::to_string(kMinDysonGrid));
  }
  for (const auto& s : samples) {
    if (!s.matrix().is_finite()) throw NumericError("dyson_terms: non-finite sample");
  }
  const double h = span / grid;
  const auto nodes = samples.size();

  // prev[j] = P_{n-1}(t_j); the running integral of dH * prev gives P_n(t_j).
  std::vector<Complex2x2> prev(nodes, Complex2x2::identity());
  std::vector<Complex2x2> next(nodes);
  DysonStack out;
  out.order = order;
  out.grid = grid;
  out.span = span;
  for (int n = 1; n <= order; ++n) {
    next[0] = Complex2x2::zero();
    Complex2x2 left = samples[0].matrix() * prev[0];
    for (std::size_t j = 1; j < nodes; ++j) {
      const Complex2x2 right = samples[j].matrix() * prev[j];
      next[j] = next[j - 1] + (0.5 * h) * (left + right);
      left = right;
    }
    out.P[static_cast<std::size_t>(n - 1)] = next.back();
    std::swap(prev, next);
  }
  return out;
}

DysonStack dyson_terms(const HamiltonianFn& dHhat, double span, int order, int grid) {
  check_order(order);
  if (grid < kMinDysonGrid) {
    throw ValidationError("dyson_terms: grid must be >= " + std::to_string(kMinDysonGrid));
  }
  std::vector<Hermitian2> samples;
  samples.reserve(static_cast<std::size_t>(grid) + 1);
  for (int j = 0; j <= grid; ++j) samples.push_back(dHhat(span * j / grid));
  return dyson_terms(samples, span, order);
}

MagnusStack magnus_terms(const DysonStack& d) {
  MagnusStack m;
  m.order = d.order;
  if (d.order < 1) return m;
  const cplx i{0.0, 1.0};
  const Complex2x2& p1 = d[1];
  m.i_omega[0] = -i * p1;
  if (d.order < 2) return m;
  const Complex2x2& p2 = d[2];
  const Complex2x2 p1p1 = p1 * p1;
  m.i_omega[1] = -p2 + 0.5 * p1p1;
  if (d.order < 3) return m;
  const Complex2x2& p3 = d[3];
  const Complex2x2 p1p2 = p1 * p2;
  const Complex2x2 p2p1 = p2 * p1;
  // Third order of log(1 + X) carries X^3/3 = i P_1^3 / 3.
  m.i_omega[2] = i * p3 + (i / 3.0) * (p1p1 * p1) - (0.5 * i) * (p1p2 + p2p1);
  if (d.order < 4) return m;
  const Complex2x2& p4 = d[4];
  m.i_omega[3] = p4 - 0.5 * (p1 * p3 + p3 * p1) - 0.5 * (p2 * p2) +
                 (1.0 / 3.0) * (p1p1 * p2 + p1 * p2p1 + p2 * p1p1) - 0.25 * (p1p1 * p1p1);
  return m;
}

MagnusDysonReport verify_magnus_dyson(const HamiltonianFn& dHhat, double span, double eps,
                                      int grid, double tol) {
  if (grid < kMinDysonGrid) {
    throw ValidationError("verify_magnus_dyson: grid must be >= " + std::to_string(kMinDysonGrid));
  }
  std::vector<Hermitian2> samples;
  samples.reserve(static_cast<std::size_t>(grid) + 1);
  double sup = 0.0;
  for (int j = 0; j <= grid; ++j) {
    samples.push_back(dHhat(span * j / grid));
    sup = std::max(sup, samples.back().matrix().frobenius_norm());
  }
  if (std::abs(eps) * span * sup >= 0.5) {
    throw ValidationError("verify_magnus_dyson: perturbation too large for the truncated series");
  }
  const DysonStack d = dyson_terms(samples, span, kMaxExpansionOrder).scaled(eps);
  const MagnusStack m = magnus_terms(d);
  const Unitary2 v = propagate_piecewise(
      [&](double t) { return eps * dHhat(t); }, 0.0, span, grid);

  MagnusDysonReport r;
  r.tol = tol;
  r.log_residual = frobenius_distance(log_unitary(v), m.sum());
  r.dyson_residual = frobenius_distance(d.partial_sum(), v.matrix());
  r.passed = r.log_residual <= tol && r.dyson_residual <= tol;
  return r;
}

RobustnessFunctionals robustness_functionals(const UnitaryFn& u, const Hermitian2& dH,
                                             double span, int grid) {
  const DysonStack d = dyson_terms(interaction_hamiltonian(u, dH), span, 2, grid);
  RobustnessFunctionals r;
  r.norm_p1 = d[1].frobenius_norm();
  r.norm_herm_p2 = hermitian_part(minus_i_pow(2) * d[2]).matrix().frobenius_norm();
  r.norm_p2 = d[2].frobenius_norm();
  return r;
}

double critical_point_residual(const Unitary2& target, const Unitary2& achieved) {
  return antihermitian_part(target.matrix().adjoint() * achieved.matrix()).frobenius_norm();
}

std::vector<double> fidelity_expansion_terms(const Unitary2& target, const Unitary2& achieved,
                                             const DysonStack& d, int max_order) {
  if (max_order < 2 || max_order > d.order) {
    throw ValidationError("fidelity_expansion_terms: max_order must be in 2..stack order");
  }
  if (critical_point_residual(target, achieved) > kCriticalTol) {
    throw ValidationError("not at a critical point");
  }
  const Complex2x2 wu = hermitian_part(target.matrix().adjoint() * achieved.matrix()).matrix();
  std::vector<double> terms;
  for (int n = 2; n <= max_order; ++n) {
    const Complex2x2 hn = hermitian_part(minus_i_pow(n) * d[n]).matrix();
    terms.push_back(real_trace(wu * hn));
  }
  return terms;
}

EquivalenceResiduals equivalence_residuals(const DysonStack& d) {
  if (d.order < kMaxExpansionOrder) {
    throw ValidationError("equivalence_residuals: needs a fourth-order stack");
  }
  const Complex2x2 t2 = minus_i_pow(2) * d[2];
  EquivalenceResiduals r;
  r.herm_p2 = hermitian_part(t2).matrix().frobenius_norm();
  r.herm_p3 = hermitian_part(minus_i_pow(3) * d[3]).matrix().frobenius_norm();
  const Complex2x2 lhs = hermitian_part(minus_i_pow(4) * d[4]).matrix();
  const Complex2x2 rhs = hermitian_part(minus_i_pow(2) * (d[2] * d[2])).matrix();
  r.fourth_order = (lhs + 0.5 * rhs).frobenius_norm();
  return r;
}

}  // namespace robustgate
