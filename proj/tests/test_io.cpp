#include <filesystem>
#include <numbers>
#include <string>

#include "doctest.h"
#include "robustgate/errors.hpp"
#include "robustgate/io.hpp"

using namespace robustgate;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("robustgate_io_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, std::numbers::pi, -1e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("coefficient files") {
  const PulseCoefficients c = parse_coefficients(R"({"mode": "constrained", "a": [0.25, 0.5], "b": [1, 2, 3]})");
  CHECK(c.a()[2] == doctest::Approx(0.25));
  CHECK(c.symmetric());

  const PulseCoefficients r = parse_coefficients(R"({"mode": "raw", "symmetric": false, "a": [0.4], "b": [2]})");
  CHECK(r.mode() == CoefficientMode::raw);
  CHECK_FALSE(r.symmetric());

  const PulseCoefficients back = parse_coefficients(coefficients_to_json(c));
  CHECK(back.a() == c.a());
  CHECK(back.b() == c.b());
  CHECK(back.mode() == c.mode());

  CHECK_THROWS_AS(parse_coefficients("{"), ValidationError);
  CHECK_THROWS_AS(parse_coefficients(R"({"mode": "fancy", "a": [1], "b": [0]})"), ValidationError);
  CHECK_THROWS_AS(parse_coefficients(R"({"a": [1]})"), ValidationError);
  CHECK_THROWS_AS(load_coefficients("/nonexistent/coefficients.json"), ValidationError);
}

TEST_CASE("run configuration") {
  const RunConfig d = parse_run_config("{}");
  CHECK(d.population == 100);
  CHECK(d.runs == 10);
  CHECK(d.bounds == doctest::Approx(2 * std::numbers::pi));
  CHECK(d.threshold == 5e-4);
  CHECK(d.dimension() == 5);

  const RunConfig c = parse_run_config(R"({"objectives": ["JdH", "JNu"], "generations": 7, "seed": 18446744073709551615})");
  CHECK(c.objectives[1] == Objective::JNu);
  CHECK(c.generations == 7);
  CHECK(c.seed == 18446744073709551615ull);

  CHECK_THROWS_AS(parse_run_config(R"({"objectives": ["JdH", "JdH"]})"), ValidationError);
  CHECK_THROWS_AS(parse_run_config(R"({"objectives": ["JdH"]})"), ValidationError);
  CHECK_THROWS_AS(parse_run_config(R"({"runs": 0})"), ValidationError);
  CHECK_THROWS_AS(parse_run_config(R"({"grid": 300.5})"), ValidationError);
  CHECK_THROWS_AS(parse_run_config(R"({"grid": 257})"), ValidationError);
  CHECK_THROWS_AS(parse_run_config(R"({"objectives": ["JdH", "Jx"]})"), ValidationError);
}

TEST_CASE("csv writers carry the schema line and fixed headers") {
  PulseProfile p;
  p.theta = 0.5;
  p.Omega = 1.25;
  const std::string prof = profile_csv({p});
  CHECK(prof.rfind("# schema=1\ntheta,L,R,Omega,nu,Phi\n0.5,0,0,1.25,0,0\n", 0) == 0);

  SweepRow r;
  r.epsilon_normalized = 0.1;
  r.fidelity_constant = 0.99;
  r.fidelity_random = {0.98, 0.97};
  r.fidelity_square = 0.95;
  CHECK(sweep_csv({r}) ==
        "# schema=1\nepsilon_normalized,J_constant,J_random_sample_1,J_random_sample_2,"
        "J_square_analytic\n0.10000000000000001,0.98999999999999999,0.97999999999999998,"
        "0.96999999999999997,0.94999999999999996\n");
}

TEST_CASE("front csv round-trip") {
  ParetoArchive a({"JdH", "JOmega"});
  a.insert({{0.1, -0.2, 0.3}, {2e-4, 3.5}});
  a.insert({{1.0, 2.0, 3.0}, {1e-5, 9.0}});
  const std::string text = front_csv(a);
  CHECK(text.rfind("# schema=1\nJdH,JOmega,x1,x2,x3\n1.0000000000000001e-05,", 0) == 0);
  const ParetoArchive b = parse_front_csv(text);
  CHECK(b.labels() == a.labels());
  CHECK(front_csv(b) == text);

  CHECK_THROWS_AS(parse_front_csv("JdH,JOmega\n1,2\n"), ValidationError);
  CHECK_THROWS_AS(parse_front_csv("# schema=1\nJdH,JOmega\n1,2,3\n"), ValidationError);
  CHECK_THROWS_AS(parse_front_csv("# schema=1\nJdH,JOmega\n1,abc\n"), ValidationError);
}

TEST_CASE("atomic writes leave no temporary file") {
  const fs::path dir = scratch("atomic");
  const fs::path f = dir / "nested" / "out.txt";
  write_file_atomic(f, "one");
  write_file_atomic(f, "two");
  CHECK(read_text_file(f) == "two");
  CHECK_FALSE(fs::exists(dir / "nested" / "out.txt.tmp"));
  fs::remove_all(dir);
}
