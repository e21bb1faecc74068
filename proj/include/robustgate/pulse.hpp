#pragma once

// Harmonic NOT-gate pulse family.
//
// The propagator is U(theta) = exp(i theta s1/2) exp(i L s1/2) exp(i R s3/2)
// with
//   L(theta) = -sum_k a_k/(2k) sin(2k theta)
//   R(theta) =  sum_k b_k sin(2k theta)      (symmetric Rabi modulation)
//   R(theta) =  sum_k b_k sin(k theta)       (asymmetric option)
// so that L and R vanish at both ends and U(pi) = i s1 for any coefficients.

#include <optional>
#include <string>
#include <vector>

#include "robustgate/su2.hpp"

namespace robustgate {

inline constexpr double kCoefficientBound = 2.0 * 3.14159265358979323846;

enum class CoefficientMode { constrained, raw };

class PulseCoefficients {
 public:
  /// a_1..a_{n-1} given; a_n = 1 - sum of the others. `b` has n entries.
  static PulseCoefficients constrained(std::vector<double> a_free, std::vector<double> b,
                                       bool symmetric = true);
  /// a and b taken as given (both length n).
  static PulseCoefficients raw(std::vector<double> a, std::vector<double> b,
                               bool symmetric = true);
  /// L = R = 0: the constant-amplitude pulse exp(i theta s1 / 2).
  static PulseCoefficients square();

  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& b() const { return b_; }
  std::size_t harmonics() const { return a_.size(); }
  CoefficientMode mode() const { return mode_; }
  bool symmetric() const { return symmetric_; }

  /// Coefficients with every b_k multiplied by `s` (a unchanged).
  PulseCoefficients with_scaled_b(double s) const;

 private:
  PulseCoefficients(std::vector<double> a, std::vector<double> b, CoefficientMode mode,
                    bool symmetric);
  std::vector<double> a_;
  std::vector<double> b_;
  CoefficientMode mode_ = CoefficientMode::raw;
  bool symmetric_ = true;
};

/// L, R and their first three theta-derivatives, evaluated analytically.
struct ControlValues {
  double L = 0.0, Lp = 0.0, Lpp = 0.0, Lppp = 0.0;
  double R = 0.0, Rp = 0.0, Rpp = 0.0, Rppp = 0.0;
};

struct PulseProfile {
  double theta = 0.0;
  double L = 0.0, Lp = 0.0, R = 0.0, Rp = 0.0;
  double Omega = 0.0;  ///< Rabi modulation, >= 0
  double nu = 0.0;     ///< chirp shift dPhi/dtheta
  double Phi = 0.0;    ///< accumulated phase
};

/// Throws ValidationError when theta lies outside [0, pi].
ControlValues control_functions(const PulseCoefficients& c, double theta);

Unitary2 propagator(const PulseCoefficients& c, double theta);

/// -1/2 (1+L') s1 - 1/2 sin(theta+L) R' s2 - 1/2 cos(theta+L) R' s3.
Hermitian2 hamiltonian(const PulseCoefficients& c, double theta);

/// sqrt((1+L')^2 + sin^2(theta+L) R'^2).
double rabi_frequency(const PulseCoefficients& c, double theta);

/// -cos(theta + L) R'.
double chirp(const PulseCoefficients& c, double theta);

/// Rabi frequency with its first and second theta-derivatives.
struct RabiDerivatives {
  double Omega = 0.0, dOmega = 0.0, d2Omega = 0.0;
};
RabiDerivatives rabi_derivatives(const PulseCoefficients& c, double theta);

/// Second theta-derivative of the chirp.
double chirp_second_derivative(const PulseCoefficients& c, double theta);

/// Profile at one angle; Phi integrates nu from 0 by the trapezoid rule with
/// the step of a `grid`-interval partition of [0, pi].
PulseProfile profile(const PulseCoefficients& c, double theta, int grid = kDefaultGrid);

/// Profiles at `samples` equally spaced angles covering [0, pi] inclusive,
/// with Phi accumulated on the same nodes.
std::vector<PulseProfile> profile_series(const PulseCoefficients& c, int samples);

struct LabFrameRabi {
  double Omega_lab = 0.0;
  bool singular = false;  ///< |cos(omega0 theta)| < tol; value unreliable
};

/// Rabi frequency without the rotating-wave approximation:
/// Omega(theta) / |cos(omega0 theta)|.
LabFrameRabi lab_frame_rabi(const PulseCoefficients& c, double theta, double omega0,
                            double tol = 1e-3);

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Checks sum a_k = 1, |a_k|, |b_k| <= 2 pi and L'(0) = -1.
ValidationReport validate(const PulseCoefficients& c);

}  // namespace robustgate
