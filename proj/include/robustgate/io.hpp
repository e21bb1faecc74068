#pragma once

// File formats: JSON coefficient and run-config documents, versioned CSV.
//
// Coefficient file:
//   {"mode": "raw" | "constrained", "symmetric": true, "a": [...], "b": [...]}
// In constrained mode "a" lists a_1..a_{n-1} and a_n is derived.
//
// Every CSV starts with the line "# schema=1" followed by a header row.

#include <filesystem>
#include <string>
#include <vector>

#include "robustgate/objectives.hpp"
#include "robustgate/pareto.hpp"
#include "robustgate/pulse.hpp"

namespace robustgate {

inline constexpr const char* kCsvSchemaLine = "# schema=1";

/// Shortest round-trip decimal form ("{:.17g}").
std::string format_double(double v);

/// Writes to "<path>.tmp" and renames over `path`. Creates parent directories.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

PulseCoefficients parse_coefficients(const std::string& json_text);
PulseCoefficients load_coefficients(const std::filesystem::path& path);
std::string coefficients_to_json(const PulseCoefficients& c);

/// Optimization run settings.
struct RunConfig {
  std::vector<Objective> objectives{Objective::JdH, Objective::JOmega};
  int n_harmonics = 3;
  int population = 100;
  int generations = 300;
  int runs = 10;
  std::uint64_t seed = 1;
  int grid = 1024;
  double bounds = kCoefficientBound;
  double threshold = 5e-4;
  double sigma0 = 0.6;
  double penalty_weight = 1.0;
  std::filesystem::path output_dir = "out";

  /// Throws ValidationError on duplicate objectives or non-positive counts.
  void validate() const;
  /// Decision dimension: n-1 free a_k plus n b_k.
  int dimension() const { return 2 * n_harmonics - 1; }
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

std::string profile_csv(const std::vector<PulseProfile>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Columns: <label1>,<label2>,x1..xn.
std::string front_csv(const ParetoArchive& archive);
ParetoArchive parse_front_csv(const std::string& text);
ParetoArchive load_front_csv(const std::filesystem::path& path);

}  // namespace robustgate
