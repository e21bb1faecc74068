#include "robustgate/pareto.hpp"

#include <algorithm>
#include <numeric>

#include "robustgate/errors.hpp"

namespace robustgate {

namespace {

void require_2d(const Point& p) {
  if (p.size() != 2) throw ValidationError("hypervolume: only 2 objectives are supported");
}

// Indices of `front` ordered by (f1, f2).
std::vector<std::size_t> sorted_order(const std::vector<Point>& front) {
  std::vector<std::size_t> order(front.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return front[a][0] < front[b][0] || (front[a][0] == front[b][0] && front[a][1] < front[b][1]);
  });
  return order;
}

}  // namespace

bool dominates(std::span<const double> f1, std::span<const double> f2) {
  if (f1.size() != f2.size()) throw ValidationError("dominates: objective vectors differ in length");
  bool strict = false;
  for (std::size_t i = 0; i < f1.size(); ++i) {
    if (f1[i] > f2[i]) return false;
    if (f1[i] < f2[i]) strict = true;
  }
  return strict;
}

std::vector<int> nondominated_sort(const std::vector<Point>& points) {
  const std::size_t n = points.size();
  std::vector<int> rank(n, 0);
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated_by[i].push_back(j);
        ++count[j];
      } else if (dominates(points[j], points[i])) {
        dominated_by[j].push_back(i);
        ++count[i];
      }
    }
  }
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (count[i] == 0) current.push_back(i);
  }
  int level = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      rank[i] = level;
      for (std::size_t j : dominated_by[i]) {
        if (--count[j] == 0) next.push_back(j);
      }
    }
    current = std::move(next);
    ++level;
  }
  return rank;
}

double hypervolume_2d(const std::vector<Point>& front, const Point& ref) {
  require_2d(ref);
  for (const auto& p : front) {
    require_2d(p);
    if (!(p[0] < ref[0] && p[1] < ref[1])) {
      throw ValidationError("hypervolume_2d: point does not dominate the reference point");
    }
  }
  double hv = 0.0;
  double level = ref[1];
  for (std::size_t i : sorted_order(front)) {
    const Point& p = front[i];
    if (p[1] < level) {
      hv += (ref[0] - p[0]) * (level - p[1]);
      level = p[1];
    }
  }
  return hv;
}

double hv_contribution(const std::vector<Point>& front, const Point& ref, std::size_t i) {
  if (i >= front.size()) throw ValidationError("hv_contribution: index out of range");
  std::vector<Point> rest;
  rest.reserve(front.size() - 1);
  for (std::size_t j = 0; j < front.size(); ++j) {
    if (j != i) rest.push_back(front[j]);
  }
  return hypervolume_2d(front, ref) - hypervolume_2d(rest, ref);
}

std::vector<double> hv_contributions_2d(const std::vector<Point>& front, const Point& ref) {
  require_2d(ref);
  for (const auto& p : front) {
    require_2d(p);
    if (!(p[0] < ref[0] && p[1] < ref[1])) {
      throw ValidationError("hv_contributions_2d: point does not dominate the reference point");
    }
  }
  const auto order = sorted_order(front);
  std::vector<double> out(front.size(), 0.0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const Point& p = front[order[k]];
    const double right = k + 1 < order.size() ? front[order[k + 1]][0] : ref[0];
    const double above = k > 0 ? front[order[k - 1]][1] : ref[1];
    out[order[k]] = (right - p[0]) * (above - p[1]);
  }
  return out;
}

bool ParetoArchive::insert(ArchiveEntry entry) {
  for (const auto& e : entries_) {
    if (e.f == entry.f || dominates(e.f, entry.f)) return false;
  }
  std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(entry.f, e.f); });
  entries_.push_back(std::move(entry));
  return true;
}

std::vector<Point> ParetoArchive::objective_points() const {
  std::vector<Point> pts;
  pts.reserve(entries_.size());
  for (const auto& e : entries_) pts.push_back(e.f);
  return pts;
}

double ParetoArchive::hypervolume(const Point& ref) const {
  std::vector<Point> inside;
  for (const auto& e : entries_) {
    if (e.f.size() == ref.size() && e.f[0] < ref[0] && e.f[1] < ref[1]) inside.push_back(e.f);
  }
  return hypervolume_2d(inside, ref);
}

ParetoArchive merge_fronts(std::span<const ParetoArchive> runs) {
  if (runs.empty()) return {};
  ParetoArchive merged(runs.front().labels());
  for (const auto& run : runs) {
    if (run.labels() != merged.labels()) {
      throw ValidationError("merge_fronts: archives carry different objective labels");
    }
    for (const auto& e : run.entries()) merged.insert(e);
  }
  merged.set_reference_point(runs.front().reference_point());
  return merged;
}

const ArchiveEntry& knee_point(std::span<const ArchiveEntry> front, double threshold_f1) {
  const ArchiveEntry* best = nullptr;
  for (const auto& e : front) {
    if (e.f.size() < 2) throw ValidationError("knee_point: needs two objectives");
    if (e.f[0] < threshold_f1 && (best == nullptr || e.f[1] < best->f[1])) best = &e;
  }
  if (best == nullptr) throw ValidationError("threshold too strict");
  return *best;
}

}  // namespace robustgate
