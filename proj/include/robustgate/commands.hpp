#pragma once

// Library side of the robustgate command-line tool. Each command returns a
// structured report and writes its files; the executable only parses flags,
// prints and maps exceptions to exit codes.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "robustgate/io.hpp"
#include "robustgate/mocma.hpp"
#include "robustgate/objectives.hpp"

namespace robustgate {

/// Reference table1 harmonics with a_3 renormalized so that sum a_k = 1.
PulseCoefficients reference_robust_pulse();

/// x = (a_1..a_{n-1}, b_1..b_n) -> constrained coefficients.
PulseCoefficients decode_decision_vector(std::span<const double> x, int n_harmonics);

/// Objective pair of a decision vector; NaN when a pulse is degenerate.
Problem make_pulse_problem(std::vector<Objective> objectives, int n_harmonics, int grid);

struct EvaluateReport {
  PulseCoefficients coefficients = PulseCoefficients::square();
  ValidationReport validation;
  double j_delta_h = 0.0;
  std::optional<double> j_omega;  ///< empty for a degenerate modulation
  double j_nu = 0.0;
  double max_omega = 0.0;
  std::filesystem::path profile_path;
};

/// Throws ValidationError if validation fails and `allow_raw` is false.
EvaluateReport cmd_evaluate(const std::filesystem::path& coeff_file, bool allow_raw, int grid,
                            int profile_samples, const std::filesystem::path& out_dir);

struct RunArtifacts {
  std::uint64_t seed = 0;
  EvolveResult result;
  std::filesystem::path dir;
};

struct OptimizeReport {
  std::vector<RunArtifacts> runs;
  ParetoArchive merged;
  std::optional<ArchiveEntry> knee;
  std::string knee_message;
  std::filesystem::path merged_path;
};

/// Seed of run r: config.seed + r * 0x9E3779B97F4A7C15 (mod 2^64).
std::uint64_t run_seed(std::uint64_t seed, int run);

OptimizeReport cmd_optimize(const RunConfig& config);

/// Writes the sweep CSV to `out_file`.
std::vector<SweepRow> cmd_robustness(const std::filesystem::path& coeff_file, const SweepSpec& spec,
                                     const std::filesystem::path& out_file);

struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const;
};

/// Expansion identities on the square pulse and reference_robust_pulse();
/// eps in [0, 0.3].
VerifyReport cmd_verify(double eps, int grid);

ParetoArchive cmd_front_merge(const std::vector<std::filesystem::path>& inputs,
                              const std::filesystem::path& out_file);
ArchiveEntry cmd_front_knee(const std::filesystem::path& input, double threshold);

/// `git describe` of the build tree, or "unknown".
std::string build_version();

}  // namespace robustgate
