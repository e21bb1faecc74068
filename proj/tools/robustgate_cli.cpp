// robustgate: evaluate, optimize and verify robust NOT-gate pulses.
//
// Exit codes: 0 success, 1 usage, 2 validation, 3 numeric failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "robustgate/commands.hpp"
#include "robustgate/errors.hpp"

namespace fs = std::filesystem;
using namespace robustgate;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct GlobalFlags {
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  std::optional<fs::path> out;
};

int run_evaluate(const GlobalFlags& g, const fs::path& file, bool raw, int samples) {
  const EvaluateReport r =
      cmd_evaluate(file, raw, g.grid.value_or(kDefaultGrid), samples, g.out.value_or("."));
  fmt::print("file: {}\n", file.string());
  fmt::print("mode: {}\n", r.coefficients.mode() == CoefficientMode::raw ? "raw" : "constrained");
  for (const auto& v : r.validation.violations) fmt::print("warning: {}\n", v);
  fmt::print("JdH: {}\n", format_double(r.j_delta_h));
  if (r.j_omega) {
    fmt::print("JOmega: {}\n", format_double(*r.j_omega));
  } else {
    fmt::print("JOmega: undefined (degenerate modulation)\n");
  }
  fmt::print("JNu: {}\n", format_double(r.j_nu));
  fmt::print("max_Omega: {}\n", format_double(r.max_omega));
  fmt::print("profile: {}\n", r.profile_path.string());
  return 0;
}

int run_optimize(const GlobalFlags& g, const fs::path& config_file) {
  RunConfig cfg = load_run_config(config_file);
  if (g.grid) cfg.grid = *g.grid;
  if (g.seed) cfg.seed = *g.seed;
  if (g.out) cfg.output_dir = *g.out;
  cfg.validate();
  const OptimizeReport r = cmd_optimize(cfg);
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const auto& run = r.runs[i];
    fmt::print("run {:2d}: seed {} archive {} points, final hypervolume {}\n", i, run.seed,
               run.result.archive.size(), format_double(run.result.history.back().hypervolume));
  }
  fmt::print("merged front: {} points -> {}\n", r.merged.size(), r.merged_path.string());
  fmt::print("{}\n", r.knee_message);
  return 0;
}

int run_robustness(const GlobalFlags& g, const fs::path& file, SweepSpec spec) {
  if (g.seed) spec.seed = *g.seed;
  if (g.grid) spec.steps = *g.grid;
  const fs::path out = g.out.value_or(".") / (file.stem().string() + "_robustness.csv");
  const auto rows = cmd_robustness(file, spec, out);
  fmt::print("{} rows -> {}\n", rows.size(), out.string());
  return 0;
}

int run_verify(const GlobalFlags& g, double eps) {
  const VerifyReport r = cmd_verify(eps, g.grid.value_or(kDefaultGrid));
  for (const auto& c : r.checks) {
    fmt::print("{:<36} {:>24} <= {:<10.3g} {}\n", c.name, format_double(c.value), c.tolerance,
               c.passed ? "PASS" : "FAIL");
  }
  fmt::print("{}\n", r.passed() ? "all identities hold" : "identity check failed");
  return r.passed() ? 0 : kExitNumeric;
}

int run_front(const GlobalFlags& g, const std::string& tool, const std::vector<fs::path>& inputs,
              double threshold) {
  if (tool == "merge") {
    const fs::path out = g.out.value_or(".") / "merged_front.csv";
    const ParetoArchive merged = cmd_front_merge(inputs, out);
    fmt::print("merged {} files: {} points -> {}\n", inputs.size(), merged.size(), out.string());
    return 0;
  }
  if (inputs.size() != 1) throw ValidationError("front knee takes exactly one input");
  const ArchiveEntry knee = cmd_front_knee(inputs.front(), threshold);
  std::string row = format_double(knee.f[0]) + "," + format_double(knee.f[1]);
  for (double v : knee.x) row += "," + format_double(v);
  fmt::print("{}\n", row);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesis and verification of off-resonance robust NOT-gate pulses"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--grid", g.grid, "Quadrature / propagation grid size");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--out", g.out, "Output directory");

  fs::path coeff_file;
  bool raw = false;
  int samples = 513;
  auto* evaluate = app.add_subcommand("evaluate", "Objectives and profile CSV of a coefficient file");
  evaluate->add_option("coefficients", coeff_file, "Coefficient JSON file")->required()->check(CLI::ExistingFile);
  evaluate->add_flag("--raw", raw, "Accept coefficients that fail validation");
  evaluate->add_option("--samples", samples, "Profile sample count")->check(CLI::Range(2, 1 << 24));

  fs::path config_file;
  auto* optimize = app.add_subcommand("optimize", "Multi-objective pulse optimization");
  optimize->add_option("config", config_file, "Run configuration JSON")->required()->check(CLI::ExistingFile);

  SweepSpec sweep;
  auto* robustness = app.add_subcommand("robustness", "Fidelity versus normalized detuning");
  robustness->add_option("coefficients", coeff_file, "Coefficient JSON file")->required()->check(CLI::ExistingFile);
  robustness->add_option("--eps-min", sweep.eps_min, "Smallest normalized detuning");
  robustness->add_option("--eps-max", sweep.eps_max, "Largest normalized detuning");
  robustness->add_option("--points", sweep.points, "Number of detuning values")->check(CLI::Range(2, 1 << 20));
  robustness->add_option("--random-samples", sweep.random_samples, "Gaussian draws per point")->check(CLI::NonNegativeNumber);
  robustness->add_option("--segments", sweep.segments, "Piecewise-constant segments per draw")->check(CLI::PositiveNumber);

  double eps = 0.05;
  auto* verify = app.add_subcommand("verify", "Check the Dyson/Magnus identities");
  verify->add_option("--eps", eps, "Perturbation scale")->check(CLI::Range(0.0, 0.3));

  std::string tool;
  std::vector<fs::path> inputs;
  double threshold = 5e-4;
  auto* front = app.add_subcommand("front", "Merge fronts or extract the knee point");
  front->add_option("tool", tool, "merge | knee")->required()->check(CLI::IsMember({"merge", "knee"}));
  front->add_option("inputs", inputs, "Front CSV files")->required()->check(CLI::ExistingFile);
  front->add_option("--threshold", threshold, "Knee threshold on the first objective");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*evaluate) return run_evaluate(g, coeff_file, raw, samples);
    if (*optimize) return run_optimize(g, config_file);
    if (*robustness) return run_robustness(g, coeff_file, sweep);
    if (*verify) return run_verify(g, eps);
    if (*front) return run_front(g, tool, inputs, threshold);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
