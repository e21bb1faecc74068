#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "robustgate/commands.hpp"
#include "robustgate/errors.hpp"

using namespace robustgate;
namespace fs = std::filesystem;

namespace {

const fs::path kData = ROBUSTGATE_DATA_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("robustgate_cmd_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(ROBUSTGATE_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("decode_decision_vector") {
  const double x[] = {0.1, 0.2, 1.0, 2.0, 3.0};
  const PulseCoefficients c = decode_decision_vector(x, 3);
  CHECK(c.a()[2] == doctest::Approx(0.7));
  CHECK(c.b()[1] == 2.0);
  CHECK_THROWS_AS(decode_decision_vector(std::span<const double>(x, 4), 3), ValidationError);
}

TEST_CASE("make_pulse_problem evaluates the configured pair") {
  const Problem p = make_pulse_problem({Objective::JdH, Objective::JOmega}, 1, 256);
  const double sine[] = {0.0};  // a_1 = 1, b_1 = 0
  const auto f = p(sine);
  CHECK(f[0] == doctest::Approx(j_delta_h(PulseCoefficients::raw({1.0}, {0.0}), 256)));
  CHECK(f[1] == doctest::Approx(j_omega(PulseCoefficients::raw({1.0}, {0.0}), 256)));
  const Problem q = make_pulse_problem({Objective::JdH, Objective::JNu}, 2, 256);
  const double x[] = {1.0, 0.0, 0.0};  // a = (1, 0), b = 0
  CHECK(q(x)[1] == 0.0);
}

TEST_CASE("cmd_evaluate: reference pulses and validation") {
  const fs::path out = scratch("evaluate");
  const EvaluateReport r = cmd_evaluate(kData / "table1.json", true, 4096, 65, out);
  CHECK(r.j_delta_h <= 5e-3);
  REQUIRE(r.j_omega.has_value());
  CHECK(*r.j_omega == doctest::Approx(3.33).epsilon(0.3));
  CHECK_FALSE(r.validation.valid);
  CHECK(fs::exists(out / "table1_profile.csv"));
  CHECK_THROWS_AS(cmd_evaluate(kData / "table1.json", false, 4096, 65, out), ValidationError);

  const EvaluateReport s = cmd_evaluate(kData / "table1_renormalized.json", false, 4096, 65, out);
  CHECK(s.validation.valid);
  CHECK(s.j_delta_h <= 5e-3);

  const EvaluateReport t = cmd_evaluate(kData / "table2.json", true, 4096, 65, out);
  CHECK(t.j_nu <= 1e-4);
  CHECK(t.j_delta_h <= 1e-4);

  // The square pulse has a constant modulation: J_Omega is zero, J_nu too.
  const EvaluateReport q = cmd_evaluate(kData / "square.json", true, 4096, 65, out);
  CHECK(q.j_nu == 0.0);
  CHECK(q.j_delta_h == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-5));
}

TEST_CASE("cmd_verify") {
  const VerifyReport r = cmd_verify(0.05, 4096);
  CHECK(r.passed());
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
  const VerifyReport z = cmd_verify(0.0, 1024);
  for (const auto& c : z.checks) {
    if (c.name.find("residual") != std::string::npos && c.name.find("critical") == std::string::npos) {
      CAPTURE(c.name);
      CHECK(c.value == 0.0);
    }
  }
  CHECK_THROWS_AS(cmd_verify(0.5, 1024), ValidationError);
}

TEST_CASE("cmd_robustness is byte-reproducible") {
  const fs::path out = scratch("robustness");
  SweepSpec s;
  s.points = 6;
  s.random_samples = 2;
  s.seed = 11;
  s.steps = 512;
  const auto rows = cmd_robustness(kData / "table1_renormalized.json", s, out / "a.csv");
  cmd_robustness(kData / "table1_renormalized.json", s, out / "b.csv");
  CHECK(read_text_file(out / "a.csv") == read_text_file(out / "b.csv"));
  CHECK(rows.front().fidelity_constant == doctest::Approx(1.0).epsilon(1e-10));
  // The optimized pulse beats the square pulse at every detuning.
  for (const auto& r : rows) CHECK(r.fidelity_constant >= r.fidelity_square - 1e-8);
}

TEST_CASE("cmd_optimize smoke run and front tools") {
  const fs::path out = scratch("optimize");
  RunConfig cfg;
  cfg.population = 2;
  cfg.generations = 1;
  cfg.runs = 2;
  cfg.grid = 256;
  cfg.threshold = 1e9;
  cfg.output_dir = out;
  const OptimizeReport r = cmd_optimize(cfg);
  REQUIRE(r.runs.size() == 2);
  CHECK(r.runs[1].seed == run_seed(1, 1));
  CHECK(run_seed(1, 1) == 1 + 0x9E3779B97F4A7C15ull);
  for (const char* f : {"run_00/metadata.json", "run_00/history.csv", "run_00/front.csv",
                        "run_01/front.csv", "merged_front.csv", "knee.json"}) {
    CAPTURE(f);
    CHECK(fs::exists(out / f));
  }
  CHECK(r.knee.has_value());
  const auto meta = nlohmann::json::parse(read_text_file(out / "run_00/metadata.json"));
  CHECK(meta["constants"]["d"].get<double>() == doctest::Approx(3.5));
  CHECK(meta["rng"]["engine"] == "std::mt19937_64");

  // Same config again: the CSV outputs are byte-identical.
  const std::string front = read_text_file(out / "merged_front.csv");
  const std::string hist = read_text_file(out / "run_01/history.csv");
  cmd_optimize(cfg);
  CHECK(read_text_file(out / "merged_front.csv") == front);
  CHECK(read_text_file(out / "run_01/history.csv") == hist);

  const ParetoArchive merged =
      cmd_front_merge({out / "run_00/front.csv", out / "run_01/front.csv"}, out / "re_merged.csv");
  CHECK(read_text_file(out / "re_merged.csv") == front);
  CHECK(merged.size() == r.merged.size());
  CHECK(cmd_front_knee(out / "merged_front.csv", 1e9).f == r.knee->f);
  CHECK_THROWS_AS(cmd_front_knee(out / "merged_front.csv", 0.0), ValidationError);
  CHECK_THROWS_AS(cmd_front_merge({}, out / "none.csv"), ValidationError);
}

TEST_CASE("cli exit codes") {
  const fs::path out = scratch("cli");
  const std::string o = " --out " + out.string();
  CHECK(cli("") == 1);
  CHECK(cli("bogus") == 1);
  CHECK(cli("evaluate " + (kData / "table1_renormalized.json").string() + o) == 0);
  CHECK(fs::exists(out / "table1_renormalized_profile.csv"));
  CHECK(cli("evaluate " + (kData / "table1.json").string() + o) == 2);
  CHECK(cli("evaluate " + (kData / "table1.json").string() + " --raw" + o) == 0);
  CHECK(cli("verify --eps 0.05") == 0);
  CHECK(cli("verify --eps 0.9") == 1);
  CHECK(cli("robustness " + (kData / "table2.json").string() + " --points 3 --random-samples 1" + o) == 0);
  CHECK(fs::exists(out / "table2_robustness.csv"));

  write_file_atomic(out / "bad.json", R"({"objectives": ["JdH", "JdH"]})");
  CHECK(cli("optimize " + (out / "bad.json").string()) == 2);
  write_file_atomic(out / "tiny.json", R"({"population": 2, "generations": 1, "runs": 1, "grid": 256})");
  CHECK(cli("optimize " + (out / "tiny.json").string() + o) == 0);
  CHECK(cli("front knee " + (out / "merged_front.csv").string() + " --threshold 1e9") == 0);
  CHECK(cli("front knee " + (out / "merged_front.csv").string() + " --threshold 0") == 2);
  CHECK(cli("front merge " + (out / "run_00/front.csv").string() + o) == 0);
}
