#include "robustgate/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include <fmt/format.h>

#include "robustgate/errors.hpp"

namespace robustgate {

namespace {

constexpr double kSumTol = 1e-9;
constexpr double kThetaSlack = 1e-12;

void check_theta(double theta) {
  if (!(theta >= -kThetaSlack && theta <= std::numbers::pi + kThetaSlack)) {
    throw ValidationError(fmt::format("theta = {} outside [0, pi]", theta));
  }
}

}  // namespace

PulseCoefficients::PulseCoefficients(std::vector<double> a, std::vector<double> b,
                                     CoefficientMode mode, bool symmetric)
    : a_(std::move(a)), b_(std::move(b)), mode_(mode), symmetric_(symmetric) {
  if (a_.empty() || a_.size() != b_.size()) {
    throw ValidationError("pulse coefficients: a and b must be non-empty and of equal length");
  }
  for (double v : a_) {
    if (!std::isfinite(v)) throw ValidationError("pulse coefficients: non-finite a_k");
  }
  for (double v : b_) {
    if (!std::isfinite(v)) throw ValidationError("pulse coefficients: non-finite b_k");
  }
}

PulseCoefficients PulseCoefficients::constrained(std::vector<double> a_free,
                                                 std::vector<double> b, bool symmetric) {
  if (a_free.size() + 1 != b.size()) {
    throw ValidationError("constrained coefficients: expected n-1 free a_k for n b_k");
  }
  const double rest = std::accumulate(a_free.begin(), a_free.end(), 0.0);
  a_free.push_back(1.0 - rest);
  return {std::move(a_free), std::move(b), CoefficientMode::constrained, symmetric};
}

PulseCoefficients PulseCoefficients::raw(std::vector<double> a, std::vector<double> b,
                                         bool symmetric) {
  return {std::move(a), std::move(b), CoefficientMode::raw, symmetric};
}

PulseCoefficients PulseCoefficients::square() { return raw({0.0}, {0.0}); }

PulseCoefficients PulseCoefficients::with_scaled_b(double s) const {
  PulseCoefficients out = *this;
  for (double& v : out.b_) v *= s;
  return out;
}

ControlValues control_functions(const PulseCoefficients& c, double theta) {
  check_theta(theta);
  ControlValues v;
  const auto& a = c.a();
  const auto& b = c.b();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double w = 2.0 * k;
    const double s = std::sin(w * theta);
    const double co = std::cos(w * theta);
    v.L -= a[i] / w * s;
    v.Lp -= a[i] * co;
    v.Lpp += w * a[i] * s;
    v.Lppp += w * w * a[i] * co;

    const double wr = c.symmetric() ? w : k;
    const double sr = c.symmetric() ? s : std::sin(wr * theta);
    const double cr = c.symmetric() ? co : std::cos(wr * theta);
    v.R += b[i] * sr;
    v.Rp += wr * b[i] * cr;
    v.Rpp -= wr * wr * b[i] * sr;
    v.Rppp -= wr * wr * wr * b[i] * cr;
  }
  return v;
}

Unitary2 propagator(const PulseCoefficients& c, double theta) {
  const ControlValues v = control_functions(c, theta);
  // exp(i theta s1/2) exp(i L s1/2) = exp(i (theta + L) s1/2)
  return su2_exp({theta + v.L, 0.0, 0.0}) * su2_exp({0.0, 0.0, v.R});
}

Hermitian2 hamiltonian(const PulseCoefficients& c, double theta) {
  const ControlValues v = control_functions(c, theta);
  const double phase = theta + v.L;
  return Hermitian2::from_pauli(0.0, -0.5 * (1.0 + v.Lp), -0.5 * std::sin(phase) * v.Rp,
                                -0.5 * std::cos(phase) * v.Rp);
}

double rabi_frequency(const PulseCoefficients& c, double theta) {
  const ControlValues v = control_functions(c, theta);
  return std::hypot(1.0 + v.Lp, std::sin(theta + v.L) * v.Rp);
}

double chirp(const PulseCoefficients& c, double theta) {
  const ControlValues v = control_functions(c, theta);
  return -std::cos(theta + v.L) * v.Rp;
}

RabiDerivatives rabi_derivatives(const PulseCoefficients& c, double theta) {
  const ControlValues v = control_functions(c, theta);
  const double phase = theta + v.L;
  const double sp = std::sin(phase);
  const double cp = std::cos(phase);
  // Omega^2 = A^2 + B^2 with A = 1 + L', B = sin(theta + L) R'.
  const double A = 1.0 + v.Lp;
  const double dA = v.Lpp;
  const double d2A = v.Lppp;
  const double B = sp * v.Rp;
  const double dB = cp * A * v.Rp + sp * v.Rpp;
  const double d2B = -sp * A * A * v.Rp + cp * v.Lpp * v.Rp + 2.0 * cp * A * v.Rpp + sp * v.Rppp;

  RabiDerivatives r;
  r.Omega = std::hypot(A, B);
  if (r.Omega == 0.0) {
    r.dOmega = r.d2Omega = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const double g = A * dA + B * dB;
  r.dOmega = g / r.Omega;
  r.d2Omega = (dA * dA + A * d2A + dB * dB + B * d2B) / r.Omega - g * g / (r.Omega * r.Omega * r.Omega);
  return r;
}

double chirp_second_derivative(const PulseCoefficients& c, double theta) {
  const ControlValues v = control_functions(c, theta);
  const double phase = theta + v.L;
  const double sp = std::sin(phase);
  const double cp = std::cos(phase);
  const double A = 1.0 + v.Lp;
  return cp * A * A * v.Rp + sp * v.Lpp * v.Rp + 2.0 * sp * A * v.Rpp - cp * v.Rppp;
}

PulseProfile profile(const PulseCoefficients& c, double theta, int grid) {
  check_theta(theta);
  if (grid < 1) throw ValidationError("profile: grid must be >= 1");
  const ControlValues v = control_functions(c, theta);
  PulseProfile p;
  p.theta = theta;
  p.L = v.L;
  p.Lp = v.Lp;
  p.R = v.R;
  p.Rp = v.Rp;
  p.Omega = std::hypot(1.0 + v.Lp, std::sin(theta + v.L) * v.Rp);
  p.nu = -std::cos(theta + v.L) * v.Rp;

  const double h = std::numbers::pi / grid;
  const int steps = std::max(1, static_cast<int>(std::ceil(theta / h - 1e-9)));
  const double dt = theta / steps;
  double left = chirp(c, 0.0);
  for (int j = 1; j <= steps; ++j) {
    const double right = chirp(c, std::min(j * dt, theta));
    p.Phi += 0.5 * dt * (left + right);
    left = right;
  }
  return p;
}

std::vector<PulseProfile> profile_series(const PulseCoefficients& c, int samples) {
  if (samples < 2) throw ValidationError("profile_series: need at least 2 samples");
  std::vector<PulseProfile> out;
  out.reserve(static_cast<std::size_t>(samples));
  const double h = std::numbers::pi / (samples - 1);
  for (int j = 0; j < samples; ++j) {
    const double theta = j == samples - 1 ? std::numbers::pi : j * h;
    const ControlValues v = control_functions(c, theta);
    PulseProfile p;
    p.theta = theta;
    p.L = v.L;
    p.Lp = v.Lp;
    p.R = v.R;
    p.Rp = v.Rp;
    p.Omega = std::hypot(1.0 + v.Lp, std::sin(theta + v.L) * v.Rp);
    p.nu = -std::cos(theta + v.L) * v.Rp;
    p.Phi = j == 0 ? 0.0 : out.back().Phi + 0.5 * (theta - out.back().theta) * (out.back().nu + p.nu);
    out.push_back(p);
  }
  return out;
}

LabFrameRabi lab_frame_rabi(const PulseCoefficients& c, double theta, double omega0, double tol) {
  if (!(omega0 > 0.0)) throw ValidationError("lab_frame_rabi: omega0 must be positive");
  const double denom = std::abs(std::cos(omega0 * theta));
  LabFrameRabi r;
  r.singular = denom < tol;
  r.Omega_lab = rabi_frequency(c, theta) / denom;
  return r;
}

ValidationReport validate(const PulseCoefficients& c) {
  ValidationReport r;
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.violations.push_back(std::move(msg));
  };
  const double sum = std::accumulate(c.a().begin(), c.a().end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTol) fail(fmt::format("sum of a_k = {:.9g}, expected 1", sum));
  for (std::size_t k = 0; k < c.harmonics(); ++k) {
    if (std::abs(c.a()[k]) > kCoefficientBound) {
      fail(fmt::format("bound violation: |a_{}| = {:.9g} > 2 pi", k + 1, std::abs(c.a()[k])));
    }
    if (std::abs(c.b()[k]) > kCoefficientBound) {
      fail(fmt::format("bound violation: |b_{}| = {:.9g} > 2 pi", k + 1, std::abs(c.b()[k])));
    }
  }
  const double lp0 = control_functions(c, 0.0).Lp;
  if (std::abs(lp0 + 1.0) > kSumTol) fail(fmt::format("L'(0) = {:.9g}, expected -1", lp0));
  return r;
}

}  // namespace robustgate
