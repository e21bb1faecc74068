#pragma once

// Dyson time-ordered integrals of an interaction-picture perturbation, the
// Magnus terms built from them, and the fidelity expansion around a
// critical point.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "robustgate/su2.hpp"

namespace robustgate {

using UnitaryFn = std::function<Unitary2(double)>;

inline constexpr int kMaxExpansionOrder = 4;
inline constexpr int kMinDysonGrid = 16;

/// P_1 ... P_4 of V = 1 + sum (-i)^n P_n. Entries beyond `order` are zero.
struct DysonStack {
  std::array<Complex2x2, kMaxExpansionOrder> P{};
  int order = 0;
  int grid = 0;
  double span = 0.0;

  const Complex2x2& operator[](int n) const { return P[static_cast<std::size_t>(n - 1)]; }
  /// Same stack for the perturbation scaled by eps: P_n -> eps^n P_n.
  DysonStack scaled(double eps) const;
  /// 1 + sum_{n<=order} (-i)^n P_n.
  Complex2x2 partial_sum() const;
};

/// Magnus generators i*Omega_k, k = 1..order.
struct MagnusStack {
  std::array<Complex2x2, kMaxExpansionOrder> i_omega{};
  int order = 0;

  /// Omega_k itself (Hermitian up to quadrature error).
  Complex2x2 omega(int k) const;
  Complex2x2 sum() const;
};

/// (-i)^n as a complex scalar.
cplx minus_i_pow(int n);

/// theta -> U^dagger(theta) dH U(theta).
HamiltonianFn interaction_hamiltonian(UnitaryFn u, const Hermitian2& dH);

/// Nested time-ordered integrals over [0, span] by the cumulative recursion
/// P_n(t) = int_0^t dHhat(s) P_{n-1}(s) ds, P_0 = 1, trapezoid rule on `grid`
/// uniform intervals.
DysonStack dyson_terms(const HamiltonianFn& dHhat, double span, int order, int grid);

/// Same recursion on pre-sampled values at the grid + 1 uniform nodes of [0, span].
DysonStack dyson_terms(std::span<const Hermitian2> samples, double span, int order);

/// Closed-form log(1 + sum (-i)^n P_n) expanded to fourth order.
MagnusStack magnus_terms(const DysonStack& d);

struct MagnusDysonReport {
  double log_residual = 0.0;    ///< || log V - sum i Omega_k ||_F
  double dyson_residual = 0.0;  ///< || 1 + sum (-i)^n P_n - V ||_F
  double tol = 0.0;
  bool passed = false;
};

/// Compares the fourth-order Magnus and Dyson truncations against the
/// propagated V for the perturbation eps * dHhat on [0, span].
MagnusDysonReport verify_magnus_dyson(const HamiltonianFn& dHhat, double span, double eps,
                                      int grid, double tol);

struct RobustnessFunctionals {
  double norm_p1 = 0.0;
  double norm_herm_p2 = 0.0;  ///< || <(-i)^2 P_2>_H ||_F
  double norm_p2 = 0.0;
};

RobustnessFunctionals robustness_functionals(const UnitaryFn& u, const Hermitian2& dH,
                                             double span, int grid = kDefaultGrid);

/// || <W^dagger U>_A ||_F, zero exactly at critical points of the fidelity.
double critical_point_residual(const Unitary2& target, const Unitary2& achieved);

/// Terms n = 2..max_order of the fidelity variation at a critical point:
/// Re Tr[<W^dagger U>_H <(-i)^n P_n>_H] / 2. Throws ValidationError when
/// critical_point_residual exceeds 1e-8.
std::vector<double> fidelity_expansion_terms(const Unitary2& target, const Unitary2& achieved,
                                             const DysonStack& d, int max_order);

/// Residuals of the identities that follow from unitarity of V when P_1 = 0.
struct EquivalenceResiduals {
  double herm_p2 = 0.0;       ///< || <(-i)^2 P_2>_H ||_F
  double herm_p3 = 0.0;       ///< || <(-i)^3 P_3>_H ||_F
  double fourth_order = 0.0;  ///< || <(-i)^4 P_4>_H + 1/2 <(-i)^2 P_2^2>_H ||_F
};

EquivalenceResiduals equivalence_residuals(const DysonStack& d);

}  // namespace robustgate
