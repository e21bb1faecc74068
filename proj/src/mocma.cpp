#include "robustgate/mocma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "robustgate/errors.hpp"

namespace robustgate {

namespace {

std::mt19937_64 stream(std::uint64_t seed, std::uint32_t generation, std::uint32_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), generation, index};
  return std::mt19937_64(seq);
}

bool all_finite(const std::vector<double>& f) {
  return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
}

void evaluate(const Problem& problem, const MocmaConfig& config, Individual& ind,
              std::vector<std::string>& events, int generation, std::size_t index) {
  std::vector<double> f = problem(std::span<const double>(ind.x.data(), static_cast<std::size_t>(ind.x.size())));
  if (f.size() != 2 || !all_finite(f)) {
    ind.valid = false;
    ind.f.assign(2, std::numeric_limits<double>::infinity());
    events.push_back(fmt::format("generation {} individual {}: non-finite objective, ranked last",
                                 generation, index));
    return;
  }
  for (double& v : f) v += config.penalty_weight * ind.penalty;
  ind.valid = true;
  ind.f = std::move(f);
}

}  // namespace

StrategyConstants StrategyConstants::defaults(int dim) {
  const double n = dim;
  StrategyConstants k;
  k.d = 1.0 + n / 2.0;
  k.p_target = 1.0 / (5.0 + std::sqrt(0.5));
  k.c_p = k.p_target / (2.0 + k.p_target);
  k.c_c = 2.0 / (n + 2.0);
  k.c_cov = 2.0 / (n * n + 6.0);
  k.p_thresh = 0.44;
  return k;
}

Box Box::symmetric(int dim, double bound) {
  return {std::vector<double>(static_cast<std::size_t>(dim), -bound),
          std::vector<double>(static_cast<std::size_t>(dim), bound)};
}

OffspringSample sample_offspring(Individual& ind, const Box& box, std::mt19937_64& rng,
                                 std::vector<std::string>* events) {
  const auto n = ind.x.size();
  Eigen::LLT<Eigen::MatrixXd> llt(ind.C);
  if (llt.info() != Eigen::Success) {
    ind.C = Eigen::MatrixXd::Identity(n, n);
    llt.compute(ind.C);
    if (events != nullptr) events->push_back("covariance factorization failed; reset to identity");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(rng);

  OffspringSample out;
  const Eigen::VectorXd correlated = llt.matrixL() * z;
  out.x = ind.x + ind.sigma * correlated;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double clamped = std::clamp(out.x[i], box.lower[k], box.upper[k]);
    out.repair_sq += (out.x[i] - clamped) * (out.x[i] - clamped);
    out.x[i] = clamped;
  }
  return out;
}

void update_step_size(Individual& ind, bool success, const StrategyConstants& k) {
  ind.p_succ_bar = (1.0 - k.c_p) * ind.p_succ_bar + k.c_p * (success ? 1.0 : 0.0);
  ind.sigma *= std::exp((ind.p_succ_bar - k.p_target) / (k.d * (1.0 - k.p_target)));
}

void update_covariance(Individual& ind, const Eigen::VectorXd& step, const StrategyConstants& k) {
  if (ind.p_succ_bar < k.p_thresh) {
    ind.p_c = (1.0 - k.c_c) * ind.p_c + std::sqrt(k.c_c * (2.0 - k.c_c)) * step;
    ind.C = (1.0 - k.c_cov) * ind.C + k.c_cov * ind.p_c * ind.p_c.transpose();
  } else {
    ind.p_c = (1.0 - k.c_c) * ind.p_c;
    ind.C = (1.0 - k.c_cov) * ind.C +
            k.c_cov * (ind.p_c * ind.p_c.transpose() + k.c_c * (2.0 - k.c_c) * ind.C);
  }
  ind.C = 0.5 * (ind.C + ind.C.transpose()).eval();
}

Point adaptive_reference(const std::vector<Point>& points) {
  if (points.empty()) throw ValidationError("adaptive_reference: no points");
  Point ref = points.front();
  for (const auto& p : points) {
    for (std::size_t i = 0; i < ref.size(); ++i) ref[i] = std::max(ref[i], p[i]);
  }
  for (double& r : ref) r += 0.1 * std::abs(r) + 1e-12;
  return ref;
}

std::vector<std::size_t> select_survivors(const std::vector<Individual>& pool, std::size_t keep) {
  std::vector<std::size_t> valid_idx;
  std::vector<std::size_t> invalid_idx;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    (pool[i].valid ? valid_idx : invalid_idx).push_back(i);
  }
  std::vector<Point> pts;
  pts.reserve(valid_idx.size());
  for (std::size_t i : valid_idx) pts.push_back(pool[i].f);

  std::vector<std::size_t> chosen;
  if (!pts.empty()) {
    const std::vector<int> rank = nondominated_sort(pts);
    const Point ref = adaptive_reference(pts);
    const int max_rank = *std::max_element(rank.begin(), rank.end());
    for (int r = 0; r <= max_rank && chosen.size() < keep; ++r) {
      std::vector<std::size_t> front;  // positions in valid_idx
      for (std::size_t j = 0; j < rank.size(); ++j) {
        if (rank[j] == r) front.push_back(j);
      }
      if (chosen.size() + front.size() > keep) {
        while (chosen.size() + front.size() > keep) {
          std::vector<Point> fp;
          fp.reserve(front.size());
          for (std::size_t j : front) fp.push_back(pts[j]);
          const std::vector<double> contrib = hv_contributions_2d(fp, ref);
          std::size_t worst = 0;
          for (std::size_t m = 1; m < front.size(); ++m) {
            if (contrib[m] <= contrib[worst]) worst = m;
          }
          front.erase(front.begin() + static_cast<std::ptrdiff_t>(worst));
        }
      }
      for (std::size_t j : front) chosen.push_back(valid_idx[j]);
    }
  }
  for (std::size_t i : invalid_idx) {
    if (chosen.size() >= keep) break;
    chosen.push_back(i);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

EvolveResult evolve(const Problem& problem, const MocmaConfig& config, std::uint64_t seed) {
  const int dim = config.box.dim();
  if (dim < 1 || config.box.upper.size() != config.box.lower.size()) {
    throw ValidationError("evolve: box must have matching, non-empty bounds");
  }
  if (config.mu < 2) throw ValidationError("evolve: mu must be >= 2");
  if (config.generations < 1) throw ValidationError("evolve: generations must be >= 1");
  if (!(config.sigma0 > 0.0)) throw ValidationError("evolve: sigma0 must be positive");

  const auto mu = static_cast<std::size_t>(config.mu);
  EvolveResult result;
  result.constants = StrategyConstants::defaults(dim);
  result.archive = ParetoArchive(config.labels);
  const StrategyConstants& k = result.constants;

  std::vector<Individual> parents(mu);
  for (std::size_t i = 0; i < mu; ++i) {
    auto rng = stream(seed, 0, static_cast<std::uint32_t>(i));
    Individual& ind = parents[i];
    ind.x.resize(dim);
    for (int d = 0; d < dim; ++d) {
      const auto b = static_cast<std::size_t>(d);
      ind.x[d] = std::uniform_real_distribution<double>(config.box.lower[b], config.box.upper[b])(rng);
    }
    ind.sigma = config.sigma0;
    ind.C = Eigen::MatrixXd::Identity(dim, dim);
    ind.p_c = Eigen::VectorXd::Zero(dim);
    ind.p_succ_bar = k.p_target;
    evaluate(problem, config, ind, result.events, 0, i);
    ++result.evaluations;
    if (ind.valid) result.archive.insert({std::vector<double>(ind.x.data(), ind.x.data() + dim), ind.f});
  }

  if (!config.reference_point.empty()) {
    result.reference_point = config.reference_point;
  } else {
    std::vector<Point> pts;
    for (const auto& p : parents) {
      if (p.valid) pts.push_back(p.f);
    }
    result.reference_point = pts.empty() ? Point{1.0, 1.0} : adaptive_reference(pts);
  }
  result.archive.set_reference_point(result.reference_point);

  auto record = [&](int generation) {
    GenerationRecord rec;
    rec.generation = generation;
    rec.hypervolume = result.archive.hypervolume(result.reference_point);
    rec.best_f1 = rec.best_f2 = std::numeric_limits<double>::infinity();
    for (const auto& e : result.archive.entries()) {
      rec.best_f1 = std::min(rec.best_f1, e.f[0]);
      rec.best_f2 = std::min(rec.best_f2, e.f[1]);
    }
    result.history.push_back(rec);
  };
  record(0);

  for (int g = 1; g <= config.generations; ++g) {
    std::vector<Individual> pool = parents;
    pool.reserve(2 * mu);
    std::vector<Eigen::VectorXd> steps(mu);
    for (std::size_t i = 0; i < mu; ++i) {
      auto rng = stream(seed, static_cast<std::uint32_t>(g), static_cast<std::uint32_t>(i));
      Individual child = parents[i];
      const OffspringSample s = sample_offspring(child, config.box, rng, &result.events);
      steps[i] = (s.x - parents[i].x) / parents[i].sigma;
      child.x = s.x;
      child.penalty = s.repair_sq;
      evaluate(problem, config, child, result.events, g, mu + i);
      ++result.evaluations;
      pool.push_back(std::move(child));
    }

    const std::vector<std::size_t> survivors = select_survivors(pool, mu);
    std::vector<bool> selected(pool.size(), false);
    for (std::size_t i : survivors) selected[i] = true;

    for (std::size_t i = 0; i < mu; ++i) {
      Individual& child = pool[mu + i];
      const bool success = selected[mu + i] && child.valid;
      update_step_size(pool[i], success, k);
      update_step_size(child, success, k);
      update_covariance(child, steps[i], k);
      if (child.valid) {
        result.archive.insert({std::vector<double>(child.x.data(), child.x.data() + dim), child.f});
      }
    }

    std::vector<Individual> next;
    next.reserve(mu);
    for (std::size_t i : survivors) next.push_back(std::move(pool[i]));
    parents = std::move(next);
    record(g);
  }

  result.population = std::move(parents);
  return result;
}

}  // namespace robustgate
