#include "robustgate/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "robustgate/errors.hpp"

namespace robustgate {

using nlohmann::json;

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError(fmt::format("cannot write {}", tmp.string()));
    out << content;
    if (!out) throw ValidationError(fmt::format("write failed for {}", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------

PulseCoefficients parse_coefficients(const std::string& json_text) {
  try {
    const json doc = json::parse(json_text);
    const std::string mode = doc.value("mode", std::string("constrained"));
    const bool symmetric = doc.value("symmetric", true);
    auto a = doc.at("a").get<std::vector<double>>();
    auto b = doc.at("b").get<std::vector<double>>();
    if (mode == "raw") return PulseCoefficients::raw(std::move(a), std::move(b), symmetric);
    if (mode == "constrained") {
      return PulseCoefficients::constrained(std::move(a), std::move(b), symmetric);
    }
    throw ValidationError(fmt::format("unknown coefficient mode '{}'", mode));
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("coefficient file: {}", e.what()));
  }
}

PulseCoefficients load_coefficients(const std::filesystem::path& path) {
  return parse_coefficients(read_text_file(path));
}

std::string coefficients_to_json(const PulseCoefficients& c) {
  json doc;
  const bool constrained = c.mode() == CoefficientMode::constrained;
  doc["mode"] = constrained ? "constrained" : "raw";
  doc["symmetric"] = c.symmetric();
  std::vector<double> a = c.a();
  if (constrained) a.pop_back();
  doc["a"] = a;
  doc["b"] = c.b();
  return doc.dump(2) + "\n";
}

void RunConfig::validate() const {
  if (objectives.size() != 2) throw ValidationError("config: exactly two objectives required");
  if (objectives[0] == objectives[1]) throw ValidationError("config: objectives must be distinct");
  if (n_harmonics < 1 || population < 2 || generations < 1 || runs < 1) {
    throw ValidationError("config: n_harmonics, generations, runs >= 1 and population >= 2");
  }
  if (grid < 256 || grid % 2 != 0) throw ValidationError("config: grid must be even and >= 256");
  if (!(bounds > 0.0)) throw ValidationError("config: bounds must be positive");
  if (!(sigma0 > 0.0)) throw ValidationError("config: sigma0 must be positive");
}

namespace {

// Integer fields must be JSON integers; 300.5 is not silently truncated.
template <class T>
T integer_field(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ValidationError(fmt::format("config: {} must be an integer", key));
  return v.get<T>();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  RunConfig cfg;
  try {
    const json doc = json::parse(json_text);
    if (doc.contains("objectives")) {
      cfg.objectives.clear();
      for (const auto& name : doc.at("objectives")) {
        cfg.objectives.push_back(parse_objective(name.get<std::string>()));
      }
    }
    cfg.n_harmonics = integer_field(doc, "n_harmonics", cfg.n_harmonics);
    cfg.population = integer_field(doc, "population", cfg.population);
    cfg.generations = integer_field(doc, "generations", cfg.generations);
    cfg.runs = integer_field(doc, "runs", cfg.runs);
    cfg.seed = integer_field(doc, "seed", cfg.seed);
    cfg.grid = integer_field(doc, "grid", cfg.grid);
    cfg.bounds = doc.value("bounds", cfg.bounds);
    cfg.threshold = doc.value("threshold", cfg.threshold);
    cfg.sigma0 = doc.value("sigma0", cfg.sigma0);
    cfg.penalty_weight = doc.value("penalty_weight", cfg.penalty_weight);
    cfg.output_dir = doc.value("output_dir", cfg.output_dir.string());
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("config file: {}", e.what()));
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text_file(path));
}

// ---------------------------------------------------------------------------

std::string profile_csv(const std::vector<PulseProfile>& rows) {
  std::string out = fmt::format("{}\ntheta,L,R,Omega,nu,Phi\n", kCsvSchemaLine);
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", format_double(r.theta), format_double(r.L),
                       format_double(r.R), format_double(r.Omega), format_double(r.nu),
                       format_double(r.Phi));
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  const std::size_t k = rows.empty() ? 0 : rows.front().fidelity_random.size();
  std::string out = fmt::format("{}\nepsilon_normalized,J_constant", kCsvSchemaLine);
  for (std::size_t s = 1; s <= k; ++s) out += fmt::format(",J_random_sample_{}", s);
  out += ",J_square_analytic\n";
  for (const auto& r : rows) {
    out += format_double(r.epsilon_normalized) + "," + format_double(r.fidelity_constant);
    for (double v : r.fidelity_random) out += "," + format_double(v);
    out += "," + format_double(r.fidelity_square) + "\n";
  }
  return out;
}

std::string front_csv(const ParetoArchive& archive) {
  if (archive.labels().size() != 2) throw ValidationError("front_csv: needs two objective labels");
  std::size_t dim = 0;
  for (const auto& e : archive.entries()) dim = std::max(dim, e.x.size());
  std::string out = fmt::format("{}\n{},{}", kCsvSchemaLine, archive.labels()[0], archive.labels()[1]);
  for (std::size_t i = 1; i <= dim; ++i) out += fmt::format(",x{}", i);
  out += "\n";

  // Sorted by the first objective for stable, readable output.
  std::vector<const ArchiveEntry*> rows;
  for (const auto& e : archive.entries()) rows.push_back(&e);
  std::sort(rows.begin(), rows.end(), [](const ArchiveEntry* l, const ArchiveEntry* r) {
    return l->f < r->f || (l->f == r->f && l->x < r->x);
  });
  for (const ArchiveEntry* e : rows) {
    out += format_double(e->f[0]) + "," + format_double(e->f[1]);
    for (double v : e->x) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) parts.push_back(cur);
  return parts;
}

double parse_number(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ValidationError(fmt::format("bad number '{}'", s));
    return v;
  } catch (const std::logic_error&) {
    throw ValidationError(fmt::format("bad number '{}'", s));
  }
}

}  // namespace

ParetoArchive parse_front_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvSchemaLine) {
    throw ValidationError("front csv: missing '# schema=1' line");
  }
  if (!std::getline(in, line)) throw ValidationError("front csv: missing header");
  const auto header = split(line, ',');
  if (header.size() < 2) throw ValidationError("front csv: header needs two objective columns");
  ParetoArchive archive({header[0], header[1]});
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw ValidationError("front csv: ragged row");
    ArchiveEntry e;
    e.f = {parse_number(cells[0]), parse_number(cells[1])};
    for (std::size_t i = 2; i < cells.size(); ++i) e.x.push_back(parse_number(cells[i]));
    archive.insert(std::move(e));
  }
  return archive;
}

ParetoArchive load_front_csv(const std::filesystem::path& path) {
  return parse_front_csv(read_text_file(path));
}

}  // namespace robustgate
