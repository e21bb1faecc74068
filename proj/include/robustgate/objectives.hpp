#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "robustgate/pulse.hpp"

namespace robustgate {

enum class Objective { JdH, JOmega, JNu };

std::string_view objective_name(Objective o);
/// Accepts "JdH", "JOmega", "JNu". Throws ValidationError otherwise.
Objective parse_objective(std::string_view name);

/// Objective values with their labels, in configured order.
struct ObjectiveVector {
  std::vector<double> values;
  std::vector<Objective> labels;
};

/// || int_0^pi U^dagger(theta) s3 U(theta) dtheta ||_F by the trapezoid rule.
/// Equals 2 ||P_1||_F for the unit detuning perturbation s3/2.
double j_delta_h(const PulseCoefficients& c, int grid = kDefaultGrid);

/// Gaussian-dissimilarity integral
///   int_0^pi | W'' - W' (W'/W + 1/(theta - pi/2)) | dtheta
/// for the Rabi modulation W, using analytic derivatives. Midpoint nodes on an
/// even `grid` keep clear of 0, pi/2 and pi. Throws NumericError ("degenerate
/// pulse") if the modulation drops to 1e-12 or below at a node.
double j_omega(const PulseCoefficients& c, int grid = kDefaultGrid);

/// Same integral for an arbitrary modulation, with centred finite differences
/// of step pi / grid.
double j_omega(const std::function<double(double)>& omega, int grid = kDefaultGrid);

/// int_0^pi |nu''(theta)| dtheta by the trapezoid rule with analytic nu''.
double j_nu(const PulseCoefficients& c, int grid = kDefaultGrid);

ObjectiveVector evaluate_objectives(const PulseCoefficients& c,
                                    const std::vector<Objective>& which,
                                    int grid = kDefaultGrid);

enum class PerturbationMode { constant, gaussian };

struct PerturbationSpec {
  double epsilon = 0.0;
  PerturbationMode mode = PerturbationMode::constant;
  int segments = 20;
  std::uint64_t seed = 0;
  /// Standard deviation of each gaussian draw as a multiple of |epsilon|.
  double relative_stddev = 0.5;
};

/// Per-segment detuning values; constant mode repeats epsilon. Gaussian draws
/// use std::mt19937_64 seeded with `seed` and std::normal_distribution.
std::vector<double> perturbation_values(const PerturbationSpec& p);

/// Fidelity against i s1 after propagating H(theta) + eps(theta)/2 s3 over
/// [0, pi] with `steps` midpoint steps.
double fidelity_under_perturbation(const PulseCoefficients& c, const PerturbationSpec& p,
                                   int steps = kDefaultGrid);

/// Closed form for the square pulse under constant detuning eps:
/// sin(pi w / 2) / w with w = sqrt(1 + eps^2).
double square_pulse_fidelity(double eps);

/// max over the grid nodes of the Rabi modulation.
double max_rabi_frequency(const PulseCoefficients& c, int grid = kDefaultGrid);

/// eps_abs / max Omega. Throws NumericError for a zero-amplitude pulse.
double normalized_amplitude(const PulseCoefficients& c, double eps_abs, int grid = kDefaultGrid);

struct SweepRow {
  double epsilon_normalized = 0.0;
  double fidelity_constant = 0.0;
  std::vector<double> fidelity_random;
  double fidelity_square = 0.0;
};

struct SweepSpec {
  double eps_min = 0.0;
  double eps_max = 0.2;
  int points = 21;
  int random_samples = 5;
  int segments = 20;
  std::uint64_t seed = 0;
  int steps = kDefaultGrid;
};

/// Fidelity versus normalized detuning. Random sample s at point j is seeded
/// from std::seed_seq{seed_lo, seed_hi, j, s}.
std::vector<SweepRow> fidelity_sweep(const PulseCoefficients& c, const SweepSpec& spec);

}  // namespace robustgate
