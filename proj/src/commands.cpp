#include "robustgate/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <numbers>

#include <fmt/format.h>

#include "json.hpp"
#include "robustgate/build_info.hpp"
#include "robustgate/errors.hpp"
#include "robustgate/expansions.hpp"

namespace robustgate {

using nlohmann::json;

namespace {

constexpr double kIdentityTol = 1e-5;
constexpr double kQuadratureTol = 1e-6;
constexpr double kSyntheticTol = 1e-4;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> label_names(const std::vector<Objective>& objectives) {
  std::vector<std::string> out;
  for (Objective o : objectives) out.emplace_back(objective_name(o));
  return out;
}

std::string history_csv(const std::vector<GenerationRecord>& history) {
  std::string out = fmt::format("{}\ngeneration,hypervolume,best_f1,best_f2\n", kCsvSchemaLine);
  for (const auto& h : history) {
    out += fmt::format("{},{},{},{}\n", h.generation, format_double(h.hypervolume),
                       format_double(h.best_f1), format_double(h.best_f2));
  }
  return out;
}

json config_json(const RunConfig& c) {
  json j;
  j["objectives"] = label_names(c.objectives);
  j["n_harmonics"] = c.n_harmonics;
  j["population"] = c.population;
  j["generations"] = c.generations;
  j["runs"] = c.runs;
  j["seed"] = c.seed;
  j["grid"] = c.grid;
  j["bounds"] = c.bounds;
  j["threshold"] = c.threshold;
  j["sigma0"] = c.sigma0;
  j["penalty_weight"] = c.penalty_weight;
  j["output_dir"] = c.output_dir.string();
  return j;
}

json run_metadata(const RunConfig& config, const RunArtifacts& run, int index) {
  const auto& k = run.result.constants;
  json j;
  j["config"] = config_json(config);
  j["run"] = index;
  j["seed"] = run.seed;
  j["constants"] = {{"d", k.d},         {"p_target", k.p_target}, {"c_p", k.c_p},
                    {"c_c", k.c_c},     {"c_cov", k.c_cov},       {"p_thresh", k.p_thresh}};
  j["rng"] = {{"engine", "std::mt19937_64"},
              {"normal", "std::normal_distribution<double>"},
              {"individual_stream", "std::seed_seq{seed & 0xffffffff, seed >> 32, generation, index}"},
              {"run_seed", "config.seed + run * 0x9E3779B97F4A7C15 mod 2^64"}};
  j["reference_point"] = run.result.reference_point;
  j["evaluations"] = run.result.evaluations;
  j["events"] = run.result.events;
  j["archive_size"] = run.result.archive.size();
  j["build"] = build_version();
  j["created_utc"] = utc_timestamp();
  return j;
}

VerifyCheck make_check(std::string name, double value, double tol) {
  return {std::move(name), value, tol, std::isfinite(value) && value <= tol};
}

HamiltonianFn unit_detuning_picture(const PulseCoefficients& c) {
  return interaction_hamiltonian([c](double t) { return propagator(c, t); },
                                 Hermitian2::from_pauli(0.0, 0.0, 0.0, 0.5));
}

// Zero-mean harmonics over one period, so P_1 vanishes.
Hermitian2 synthetic_zero_mean(double t) {
  return Hermitian2::from_pauli(0.0, 0.5 * std::sin(2.0 * t), 0.25 * std::cos(3.0 * t),
                                0.5 * std::cos(t));
}

}  // namespace

std::string build_version() { return kBuildVersion; }

PulseCoefficients reference_robust_pulse() {
  return PulseCoefficients::constrained({0.896833, 0.302287}, {3.0578, 0.429276, 0.0881475});
}

PulseCoefficients decode_decision_vector(std::span<const double> x, int n_harmonics) {
  const auto n = static_cast<std::size_t>(n_harmonics);
  if (x.size() != 2 * n - 1) throw ValidationError("decision vector has the wrong dimension");
  std::vector<double> a(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n - 1));
  std::vector<double> b(x.begin() + static_cast<std::ptrdiff_t>(n - 1), x.end());
  return PulseCoefficients::constrained(std::move(a), std::move(b));
}

Problem make_pulse_problem(std::vector<Objective> objectives, int n_harmonics, int grid) {
  return [objectives = std::move(objectives), n_harmonics, grid](std::span<const double> x) {
    try {
      return evaluate_objectives(decode_decision_vector(x, n_harmonics), objectives, grid).values;
    } catch (const NumericError&) {
      return std::vector<double>(objectives.size(), std::numeric_limits<double>::quiet_NaN());
    }
  };
}

EvaluateReport cmd_evaluate(const std::filesystem::path& coeff_file, bool allow_raw, int grid,
                            int profile_samples, const std::filesystem::path& out_dir) {
  EvaluateReport r;
  r.coefficients = load_coefficients(coeff_file);
  r.validation = validate(r.coefficients);
  if (!r.validation.valid && !allow_raw) {
    std::string msg = "coefficient validation failed:";
    for (const auto& v : r.validation.violations) msg += " " + v + ";";
    throw ValidationError(msg);
  }
  r.j_delta_h = j_delta_h(r.coefficients, grid);
  try {
    r.j_omega = j_omega(r.coefficients, grid);
  } catch (const NumericError&) {
    r.j_omega.reset();
  }
  r.j_nu = j_nu(r.coefficients, grid);
  r.max_omega = max_rabi_frequency(r.coefficients, grid);
  r.profile_path = out_dir / (coeff_file.stem().string() + "_profile.csv");
  write_file_atomic(r.profile_path, profile_csv(profile_series(r.coefficients, profile_samples)));
  return r;
}

std::uint64_t run_seed(std::uint64_t seed, int run) {
  return seed + static_cast<std::uint64_t>(run) * 0x9E3779B97F4A7C15ull;
}

OptimizeReport cmd_optimize(const RunConfig& config) {
  config.validate();
  OptimizeReport report;
  const std::vector<std::string> labels = label_names(config.objectives);

  MocmaConfig mc;
  mc.mu = config.population;
  mc.generations = config.generations;
  mc.box = Box::symmetric(config.dimension(), config.bounds);
  mc.sigma0 = config.sigma0;
  mc.penalty_weight = config.penalty_weight;
  mc.labels = labels;
  const Problem problem = make_pulse_problem(config.objectives, config.n_harmonics, config.grid);

  std::vector<ParetoArchive> archives;
  for (int r = 0; r < config.runs; ++r) {
    RunArtifacts run;
    run.seed = run_seed(config.seed, r);
    run.result = evolve(problem, mc, run.seed);
    run.dir = config.output_dir / fmt::format("run_{:02d}", r);
    write_file_atomic(run.dir / "metadata.json", run_metadata(config, run, r).dump(2) + "\n");
    write_file_atomic(run.dir / "history.csv", history_csv(run.result.history));
    write_file_atomic(run.dir / "front.csv", front_csv(run.result.archive));
    archives.push_back(run.result.archive);
    report.runs.push_back(std::move(run));
  }

  report.merged = merge_fronts(archives);
  report.merged_path = config.output_dir / "merged_front.csv";
  write_file_atomic(report.merged_path, front_csv(report.merged));

  json knee;
  knee["threshold"] = config.threshold;
  knee["objectives"] = labels;
  try {
    report.knee = knee_point(report.merged.entries(), config.threshold);
    knee["found"] = true;
    knee["f"] = report.knee->f;
    knee["x"] = report.knee->x;
    knee["coefficients"] = json::parse(
        coefficients_to_json(decode_decision_vector(report.knee->x, config.n_harmonics)));
    report.knee_message = fmt::format("knee point: {} = {}, {} = {}", labels[0],
                                      format_double(report.knee->f[0]), labels[1],
                                      format_double(report.knee->f[1]));
  } catch (const ValidationError& e) {
    knee["found"] = false;
    knee["reason"] = e.what();
    report.knee_message = fmt::format("no knee point: {}", e.what());
  }
  write_file_atomic(config.output_dir / "knee.json", knee.dump(2) + "\n");
  return report;
}

std::vector<SweepRow> cmd_robustness(const std::filesystem::path& coeff_file, const SweepSpec& spec,
                                     const std::filesystem::path& out_file) {
  const PulseCoefficients c = load_coefficients(coeff_file);
  std::vector<SweepRow> rows = fidelity_sweep(c, spec);
  write_file_atomic(out_file, sweep_csv(rows));
  return rows;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport cmd_verify(double eps, int grid) {
  if (!(eps >= 0.0 && eps <= 0.3)) throw ValidationError("verify: eps must lie in [0, 0.3]");
  if (grid < kMinDysonGrid) throw ValidationError("verify: grid too small");
  const double pi = std::numbers::pi;
  const Unitary2 target = su2_exp({pi, 0.0, 0.0});
  VerifyReport rep;

  // Square pulse.
  const PulseCoefficients square = PulseCoefficients::square();
  const HamiltonianFn sq = unit_detuning_picture(square);
  const MagnusDysonReport sq_md = verify_magnus_dyson(sq, pi, eps, grid, kIdentityTol);
  rep.checks.push_back(make_check("square.magnus_log_residual", sq_md.log_residual, kIdentityTol));
  rep.checks.push_back(make_check("square.dyson_residual", sq_md.dyson_residual, kIdentityTol));
  const DysonStack sq_stack = dyson_terms(sq, pi, kMaxExpansionOrder, grid);
  rep.checks.push_back(make_check("square.normP1_minus_sqrt2",
                                  std::abs(sq_stack[1].frobenius_norm() - std::sqrt(2.0)), 1e-4));
  const Unitary2 u_final = propagator(square, pi);
  const auto terms = fidelity_expansion_terms(target, u_final, sq_stack.scaled(eps), kMaxExpansionOrder);
  double predicted = 0.0;
  for (double t : terms) predicted += t;
  const Unitary2 v = propagate_piecewise([&](double t) { return eps * sq(t); }, 0.0, pi, grid);
  const double actual = fidelity(target, u_final * v) - 1.0;
  rep.checks.push_back(make_check("square.fidelity_expansion_error", std::abs(predicted - actual),
                                  std::max(eps * eps * eps, 1e-12)));

  // Robust pulse.
  const PulseCoefficients robust = reference_robust_pulse();
  const HamiltonianFn rb = unit_detuning_picture(robust);
  const DysonStack rb_stack = dyson_terms(rb, pi, kMaxExpansionOrder, grid);
  rep.checks.push_back(make_check("robust.normP1", rb_stack[1].frobenius_norm(), 1e-3));
  // <(-i)^2 P_2>_H = -P_1^2 / 2 for Hermitian perturbations.
  const Complex2x2 herm_p2 = hermitian_part(minus_i_pow(2) * rb_stack[2]).matrix();
  rep.checks.push_back(make_check("robust.herm_p2_minus_p1_square",
                                  (herm_p2 + 0.5 * (rb_stack[1] * rb_stack[1])).frobenius_norm(),
                                  kQuadratureTol));
  rep.checks.push_back(make_check("robust.critical_point_residual",
                                  critical_point_residual(target, propagator(robust, pi)), 1e-8));
  const MagnusDysonReport rb_md = verify_magnus_dyson(rb, pi, eps, grid, kIdentityTol);
  rep.checks.push_back(make_check("robust.magnus_log_residual", rb_md.log_residual, kIdentityTol));
  rep.checks.push_back(make_check("robust.dyson_residual", rb_md.dyson_residual, kIdentityTol));

  // Synthetic zero-mean perturbation, P_1 = 0 exactly.
  const DysonStack syn = dyson_terms(synthetic_zero_mean, 2.0 * pi, kMaxExpansionOrder, grid);
  const EquivalenceResiduals eq = equivalence_residuals(syn);
  rep.checks.push_back(make_check("synthetic.normP1", syn[1].frobenius_norm(), kSyntheticTol));
  rep.checks.push_back(make_check("synthetic.herm_p2", eq.herm_p2, kSyntheticTol));
  rep.checks.push_back(make_check("synthetic.herm_p3", eq.herm_p3, kSyntheticTol));
  rep.checks.push_back(make_check("synthetic.fourth_order", eq.fourth_order, kSyntheticTol));
  return rep;
}

ParetoArchive cmd_front_merge(const std::vector<std::filesystem::path>& inputs,
                              const std::filesystem::path& out_file) {
  if (inputs.empty()) throw ValidationError("front merge: no input files");
  std::vector<ParetoArchive> fronts;
  for (const auto& p : inputs) fronts.push_back(load_front_csv(p));
  ParetoArchive merged = merge_fronts(fronts);
  write_file_atomic(out_file, front_csv(merged));
  return merged;
}

ArchiveEntry cmd_front_knee(const std::filesystem::path& input, double threshold) {
  const ParetoArchive front = load_front_csv(input);
  return knee_point(front.entries(), threshold);
}

}  // namespace robustgate
