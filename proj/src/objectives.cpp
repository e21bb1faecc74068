#include "robustgate/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "robustgate/errors.hpp"

namespace robustgate {

namespace {

constexpr double kDegenerateOmega = 1e-12;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

void require_even_grid(int grid, const char* who) {
  if (grid < 2 || grid % 2 != 0) {
    throw ValidationError(fmt::format("{}: grid must be even and >= 2", who));
  }
}

double gaussian_residual(double omega, double d_omega, double d2_omega, double theta) {
  return std::abs(d2_omega - d_omega * (d_omega / omega + 1.0 / (theta - kHalfPi)));
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint32_t a, std::uint32_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), a, b};
  return std::mt19937_64(seq);
}

}  // namespace

std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::JdH: return "JdH";
    case Objective::JOmega: return "JOmega";
    case Objective::JNu: return "JNu";
  }
  return "?";
}

Objective parse_objective(std::string_view name) {
  if (name == "JdH") return Objective::JdH;
  if (name == "JOmega") return Objective::JOmega;
  if (name == "JNu") return Objective::JNu;
  throw ValidationError(fmt::format("unknown objective '{}'", name));
}

double j_delta_h(const PulseCoefficients& c, int grid) {
  if (grid < 1) throw ValidationError("j_delta_h: grid must be >= 1");
  const double h = std::numbers::pi / grid;
  const Complex2x2 s3 = Complex2x2::sigma3();
  Complex2x2 acc;
  for (int j = 0; j <= grid; ++j) {
    const double theta = j == grid ? std::numbers::pi : j * h;
    const Complex2x2 u = propagator(c, theta).matrix();
    const double w = (j == 0 || j == grid) ? 0.5 : 1.0;
    acc += (w * h) * (u.adjoint() * s3 * u);
  }
  return acc.frobenius_norm();
}

double j_omega(const PulseCoefficients& c, int grid) {
  require_even_grid(grid, "j_omega");
  const double h = std::numbers::pi / grid;
  double sum = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double theta = (j + 0.5) * h;
    const RabiDerivatives r = rabi_derivatives(c, theta);
    if (!(r.Omega > kDegenerateOmega)) {
      throw NumericError(fmt::format("degenerate pulse: Omega({:.6g}) = {:.3g}", theta, r.Omega));
    }
    sum += gaussian_residual(r.Omega, r.dOmega, r.d2Omega, theta);
  }
  return sum * h;
}

double j_omega(const std::function<double(double)>& omega, int grid) {
  require_even_grid(grid, "j_omega");
  const double pi = std::numbers::pi;
  const double h = pi / grid;
  double sum = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double theta = (j + 0.5) * h;
    const double f0 = omega(theta);
    if (!(f0 > kDegenerateOmega)) {
      throw NumericError(fmt::format("degenerate pulse: Omega({:.6g}) = {:.3g}", theta, f0));
    }
    // Five-point centred stencil; the step shrinks near the ends so that
    // omega is only sampled inside [0, pi].
    const double s = std::min({h, theta / 2.5, (pi - theta) / 2.5});
    const double fp1 = omega(theta + s), fm1 = omega(theta - s);
    const double fp2 = omega(theta + 2.0 * s), fm2 = omega(theta - 2.0 * s);
    const double d1 = (8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * s);
    const double d2 = (16.0 * (fp1 + fm1) - (fp2 + fm2) - 30.0 * f0) / (12.0 * s * s);
    sum += gaussian_residual(f0, d1, d2, theta);
  }
  return sum * h;
}

double j_nu(const PulseCoefficients& c, int grid) {
  if (grid < 1) throw ValidationError("j_nu: grid must be >= 1");
  const double h = std::numbers::pi / grid;
  double sum = 0.0;
  for (int j = 0; j <= grid; ++j) {
    const double theta = j == grid ? std::numbers::pi : j * h;
    const double w = (j == 0 || j == grid) ? 0.5 : 1.0;
    sum += w * std::abs(chirp_second_derivative(c, theta));
  }
  return sum * h;
}

ObjectiveVector evaluate_objectives(const PulseCoefficients& c,
                                    const std::vector<Objective>& which, int grid) {
  ObjectiveVector out;
  out.labels = which;
  out.values.reserve(which.size());
  for (Objective o : which) {
    switch (o) {
      case Objective::JdH: out.values.push_back(j_delta_h(c, grid)); break;
      case Objective::JOmega: out.values.push_back(j_omega(c, grid)); break;
      case Objective::JNu: out.values.push_back(j_nu(c, grid)); break;
    }
  }
  return out;
}

std::vector<double> perturbation_values(const PerturbationSpec& p) {
  if (p.segments < 1) throw ValidationError("perturbation: segments must be >= 1");
  if (p.mode == PerturbationMode::constant) {
    return std::vector<double>(static_cast<std::size_t>(p.segments), p.epsilon);
  }
  const double stddev = p.relative_stddev * std::abs(p.epsilon);
  std::vector<double> values(static_cast<std::size_t>(p.segments), p.epsilon);
  if (stddev > 0.0) {
    std::mt19937_64 engine(p.seed);
    std::normal_distribution<double> draw(p.epsilon, stddev);
    for (double& v : values) v = draw(engine);
  }
  return values;
}

double fidelity_under_perturbation(const PulseCoefficients& c, const PerturbationSpec& p,
                                   int steps) {
  if (steps < 256) throw ValidationError("fidelity_under_perturbation: steps must be >= 256");
  if (p.mode == PerturbationMode::gaussian && p.segments > steps) {
    throw ValidationError("fidelity_under_perturbation: more segments than steps");
  }
  const std::vector<double> eps = perturbation_values(p);
  const auto segments = static_cast<double>(eps.size());
  const auto last = eps.size() - 1;
  const HamiltonianFn h = [&](double theta) {
    const auto seg = std::min(last, static_cast<std::size_t>(theta / std::numbers::pi * segments));
    return hamiltonian(c, theta) + Hermitian2::from_pauli(0.0, 0.0, 0.0, 0.5 * eps[seg]);
  };
  const Unitary2 u = propagate_piecewise(h, 0.0, std::numbers::pi, steps);
  return fidelity(su2_exp({std::numbers::pi, 0.0, 0.0}), u);
}

double square_pulse_fidelity(double eps) {
  const double w = std::sqrt(1.0 + eps * eps);
  return std::sin(0.5 * std::numbers::pi * w) / w;
}

double max_rabi_frequency(const PulseCoefficients& c, int grid) {
  if (grid < 1) throw ValidationError("max_rabi_frequency: grid must be >= 1");
  double best = 0.0;
  for (int j = 0; j <= grid; ++j) {
    const double theta = j == grid ? std::numbers::pi : j * std::numbers::pi / grid;
    best = std::max(best, rabi_frequency(c, theta));
  }
  return best;
}

double normalized_amplitude(const PulseCoefficients& c, double eps_abs, int grid) {
  const double peak = max_rabi_frequency(c, grid);
  if (!(peak > 0.0)) throw NumericError("degenerate pulse: maximum Rabi frequency is zero");
  return eps_abs / peak;
}

std::vector<SweepRow> fidelity_sweep(const PulseCoefficients& c, const SweepSpec& spec) {
  if (spec.points < 2) throw ValidationError("sweep: points must be >= 2");
  if (!std::isfinite(spec.eps_min) || !std::isfinite(spec.eps_max)) {
    throw ValidationError("sweep: epsilon range must be finite");
  }
  if (spec.random_samples < 0) throw ValidationError("sweep: random_samples must be >= 0");
  const double peak = max_rabi_frequency(c, spec.steps);
  if (!(peak > 0.0)) throw NumericError("degenerate pulse: maximum Rabi frequency is zero");

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.points));
  for (int j = 0; j < spec.points; ++j) {
    SweepRow row;
    row.epsilon_normalized = spec.eps_min + (spec.eps_max - spec.eps_min) * j / (spec.points - 1);
    const double eps_abs = row.epsilon_normalized * peak;
    row.fidelity_constant = fidelity_under_perturbation(
        c, {eps_abs, PerturbationMode::constant, 1, 0, 0.0}, spec.steps);
    for (int s = 0; s < spec.random_samples; ++s) {
      auto engine = seeded_engine(spec.seed, static_cast<std::uint32_t>(j),
                                  static_cast<std::uint32_t>(s));
      PerturbationSpec p{eps_abs, PerturbationMode::gaussian, spec.segments, engine(), 0.5};
      row.fidelity_random.push_back(fidelity_under_perturbation(c, p, spec.steps));
    }
    // The square pulse has unit peak amplitude, so its absolute and normalized
    // detunings coincide.
    row.fidelity_square = square_pulse_fidelity(row.epsilon_normalized);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace robustgate
