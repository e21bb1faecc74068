#pragma once

// Multi-objective CMA evolution strategy: mu single-parent (1+1)-CMA
// strategies with success-rule step sizes, (mu + mu) selection by Pareto rank
// and then by hypervolume contribution. Two objectives.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "robustgate/pareto.hpp"

namespace robustgate {

/// Published MO-CMA-ES defaults for a search space of dimension n.
struct StrategyConstants {
  double d = 0.0;         ///< step-size damping, 1 + n/2
  double p_target = 0.0;  ///< 1 / (5 + sqrt(1/2))
  double c_p = 0.0;       ///< p_target / (2 + p_target)
  double c_c = 0.0;       ///< 2 / (n + 2)
  double c_cov = 0.0;     ///< 2 / (n^2 + 6)
  double p_thresh = 0.44;

  static StrategyConstants defaults(int dim);
};

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  static Box symmetric(int dim, double bound);
  int dim() const { return static_cast<int>(lower.size()); }
};

struct Individual {
  Eigen::VectorXd x;
  double sigma = 1.0;
  Eigen::MatrixXd C;
  double p_succ_bar = 0.0;
  Eigen::VectorXd p_c;
  std::vector<double> f;
  double penalty = 0.0;  ///< squared box-repair distance of x
  bool valid = true;     ///< false when the objective returned non-finite values
};

struct OffspringSample {
  Eigen::VectorXd x;        ///< repaired into the box
  double repair_sq = 0.0;   ///< squared distance moved by the repair
};

/// x + sigma A z with A A^T = C (Cholesky), z ~ N(0, 1), clamped into the box.
/// A failed factorization resets C to the identity and logs an event.
OffspringSample sample_offspring(Individual& ind, const Box& box, std::mt19937_64& rng,
                                 std::vector<std::string>* events = nullptr);

/// Smoothed success rate and success-rule step size.
void update_step_size(Individual& ind, bool success, const StrategyConstants& k);

/// Rank-one update with evolution path; `step` is (x_child - x_parent) / sigma_parent.
void update_covariance(Individual& ind, const Eigen::VectorXd& step, const StrategyConstants& k);

using Problem = std::function<std::vector<double>(std::span<const double>)>;

struct MocmaConfig {
  int mu = 100;
  int generations = 300;
  Box box;
  double sigma0 = 0.6;
  double penalty_weight = 1.0;
  /// Fixed reference for the archive hypervolume history; when empty it is
  /// frozen from the initial population (componentwise max, widened by 10%).
  std::vector<double> reference_point;
  std::vector<std::string> labels{"f1", "f2"};
};

struct GenerationRecord {
  int generation = 0;
  double hypervolume = 0.0;
  double best_f1 = 0.0;
  double best_f2 = 0.0;
};

struct EvolveResult {
  std::vector<Individual> population;
  ParetoArchive archive;
  std::vector<GenerationRecord> history;
  std::vector<std::string> events;
  StrategyConstants constants;
  std::vector<double> reference_point;
  std::size_t evaluations = 0;
};

/// Reference point widened from the componentwise maximum of `points`:
/// m + 0.1 |m| (+1e-12 so zero maxima stay strictly dominated).
Point adaptive_reference(const std::vector<Point>& points);

/// Indices (into `pool`) of the `keep` survivors: whole Pareto ranks first,
/// then the last rank thinned by repeatedly dropping the smallest hypervolume
/// contributor. Invalid individuals rank last. Ties drop the highest index.
std::vector<std::size_t> select_survivors(const std::vector<Individual>& pool, std::size_t keep);

/// Deterministic in `seed`. Individual k draws from std::mt19937_64 seeded
/// by std::seed_seq{seed_lo, seed_hi, g, k}, g = 0 for initialization and
/// the generation number afterwards.
EvolveResult evolve(const Problem& problem, const MocmaConfig& config, std::uint64_t seed);

}  // namespace robustgate
