#pragma once

// Pareto dominance, ranking, exact 2-D hypervolume and the non-dominated
// archive. All objectives are minimized.

#include <span>
#include <string>
#include <vector>

namespace robustgate {

using Point = std::vector<double>;

/// f1 <= f2 componentwise with at least one strict inequality.
/// Throws ValidationError on a length mismatch.
bool dominates(std::span<const double> f1, std::span<const double> f2);

/// Rank 0 for the minimal elements, rank k for the minimal elements once
/// ranks < k are removed.
std::vector<int> nondominated_sort(const std::vector<Point>& points);

/// Exact 2-objective hypervolume bounded by `ref`. Throws ValidationError if
/// a point does not strictly dominate the reference point.
double hypervolume_2d(const std::vector<Point>& front, const Point& ref);

/// HV(front) - HV(front without point i).
double hv_contribution(const std::vector<Point>& front, const Point& ref, std::size_t i);

/// All contributions of a mutually non-dominated 2-D front in one sorted pass.
std::vector<double> hv_contributions_2d(const std::vector<Point>& front, const Point& ref);

struct ArchiveEntry {
  std::vector<double> x;
  std::vector<double> f;
};

/// Mutually non-dominated (x, f) pairs. Points equal in objective space are
/// stored once.
class ParetoArchive {
 public:
  ParetoArchive() = default;
  explicit ParetoArchive(std::vector<std::string> labels) : labels_(std::move(labels)) {}

  /// Adds the entry unless some stored entry dominates or equals it; removes
  /// stored entries it dominates. Returns whether it was added.
  bool insert(ArchiveEntry entry);

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::vector<Point> objective_points() const;

  const std::vector<double>& reference_point() const { return reference_point_; }
  void set_reference_point(std::vector<double> ref) { reference_point_ = std::move(ref); }

  /// 2-D hypervolume against `ref`, counting only entries that strictly
  /// dominate it.
  double hypervolume(const Point& ref) const;

 private:
  std::vector<std::string> labels_;
  std::vector<ArchiveEntry> entries_;
  std::vector<double> reference_point_;
};

/// Pools every archive and keeps the mutually non-dominated subset. Throws
/// ValidationError if the archives carry different objective labels.
ParetoArchive merge_fronts(std::span<const ParetoArchive> runs);

/// Among entries with f[0] < threshold_f1, the one with the smallest f[1].
/// Throws ValidationError ("threshold too strict") if none qualifies.
const ArchiveEntry& knee_point(std::span<const ArchiveEntry> front, double threshold_f1);

}  // namespace robustgate
