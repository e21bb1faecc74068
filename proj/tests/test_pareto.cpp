#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "robustgate/errors.hpp"
#include "robustgate/pareto.hpp"

using namespace robustgate;

namespace {

bool dom(const Point& a, const Point& b) { return dominates(a, b); }

// Peel minimal elements one layer at a time.
std::vector<int> brute_ranks(const std::vector<Point>& pts) {
  std::vector<int> rank(pts.size(), -1);
  for (int r = 0; std::count(rank.begin(), rank.end(), -1) > 0; ++r) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (rank[i] != -1) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (rank[j] == -1 && dom(pts[j], pts[i])) minimal = false;
      }
      if (minimal) layer.push_back(i);
    }
    for (std::size_t i : layer) rank[i] = r;
  }
  return rank;
}

// Union of boxes [p, ref] on the grid spanned by all coordinates.
double brute_hv(const std::vector<Point>& pts, const Point& ref) {
  std::vector<double> xs{ref[0]}, ys{ref[1]};
  for (const auto& p : pts) {
    xs.push_back(p[0]);
    ys.push_back(p[1]);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double hv = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const double cx = 0.5 * (xs[i] + xs[i + 1]);
      const double cy = 0.5 * (ys[j] + ys[j + 1]);
      const bool covered = std::any_of(pts.begin(), pts.end(),
                                       [&](const Point& p) { return p[0] <= cx && p[1] <= cy; });
      if (covered) hv += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
    }
  }
  return hv;
}

std::vector<Point> random_points(std::mt19937_64& rng, std::size_t n, bool integer) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> k(0, 6);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(integer ? Point{double(k(rng)), double(k(rng))} : Point{u(rng), u(rng)});
  }
  return pts;
}

}  // namespace

TEST_CASE("dominates: examples") {
  CHECK(dom({1, 2}, {2, 2}));
  CHECK_FALSE(dom({1, 2}, {2, 1}));
  CHECK_FALSE(dom({1, 1}, {1, 1}));
  CHECK_THROWS_AS(dom({1, 2}, {1, 2, 3}), ValidationError);
}

TEST_CASE("nondominated_sort: examples") {
  CHECK(nondominated_sort({{1, 3}, {2, 2}, {3, 1}}) == std::vector<int>{0, 0, 0});
  CHECK(nondominated_sort({{1, 1}, {2, 2}}) == std::vector<int>{0, 1});
  CHECK(nondominated_sort({{0, 0}}) == std::vector<int>{0});
  CHECK(nondominated_sort({}).empty());
}

TEST_CASE("nondominated_sort matches layer peeling on random instances") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  for (int t = 0; t < 1000; ++t) {
    // Integer grids force ties and duplicates; three objectives half the time.
    auto pts = random_points(rng, size(rng), t % 2 == 0);
    if (t % 4 == 1) {
      std::uniform_int_distribution<int> k(0, 4);
      for (auto& p : pts) p.push_back(double(k(rng)));
    }
    CHECK(nondominated_sort(pts) == brute_ranks(pts));
  }
}

TEST_CASE("hypervolume_2d: examples") {
  const std::vector<Point> front{{1, 3}, {2, 2}, {3, 1}};
  CHECK(hypervolume_2d(front, {4, 4}) == doctest::Approx(6.0));
  CHECK(hv_contribution(front, {4, 4}, 1) == doctest::Approx(1.0));
  CHECK(hypervolume_2d({{1, 1}}, {2, 2}) == doctest::Approx(1.0));
  CHECK(hv_contribution({{1, 1}}, {2, 2}, 0) == doctest::Approx(1.0));
  CHECK(hypervolume_2d({}, {2, 2}) == 0.0);
  CHECK_THROWS_AS(hypervolume_2d({{1, 2}}, {2, 2}), ValidationError);
}

TEST_CASE("hypervolume_2d matches the grid oracle on random instances") {
  std::mt19937_64 rng(52);
  std::uniform_int_distribution<std::size_t> size(1, 10);
  for (int t = 0; t < 1000; ++t) {
    const auto pts = random_points(rng, size(rng), t % 2 == 0);
    const Point ref{11.0, 12.0};
    CHECK(hypervolume_2d(pts, ref) == doctest::Approx(brute_hv(pts, ref)).epsilon(1e-12));
  }
}

TEST_CASE("hv_contributions_2d matches leave-one-out on random fronts") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 300; ++t) {
    auto pts = random_points(rng, 8, false);
    const auto rank = nondominated_sort(pts);
    std::vector<Point> front;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (rank[i] == 0) front.push_back(pts[i]);
    }
    const Point ref{10.5, 10.5};
    const auto fast = hv_contributions_2d(front, ref);
    for (std::size_t i = 0; i < front.size(); ++i) {
      std::vector<Point> rest = front;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      const double loo = brute_hv(front, ref) - brute_hv(rest, ref);
      CHECK(fast[i] == doctest::Approx(loo).epsilon(1e-10));
      CHECK(hv_contribution(front, ref, i) == doctest::Approx(loo).epsilon(1e-10));
    }
  }
}

TEST_CASE("ParetoArchive keeps a mutually non-dominated set") {
  ParetoArchive a({"f1", "f2"});
  CHECK(a.insert({{0.0}, {2, 2}}));
  CHECK_FALSE(a.insert({{1.0}, {2, 2}}));
  CHECK_FALSE(a.insert({{1.0}, {3, 3}}));
  CHECK(a.insert({{2.0}, {1, 3}}));
  CHECK(a.insert({{3.0}, {1, 1}}));
  REQUIRE(a.size() == 1);
  CHECK(a.entries()[0].x == std::vector<double>{3.0});

  std::mt19937_64 rng(54);
  ParetoArchive b({"f1", "f2"});
  double last_hv = 0.0;
  for (int t = 0; t < 500; ++t) {
    const auto p = random_points(rng, 1, false).front();
    b.insert({{double(t)}, p});
    const auto pts = b.objective_points();
    const auto ranks = nondominated_sort(pts);
    CHECK(std::all_of(ranks.begin(), ranks.end(), [](int r) { return r == 0; }));
    const double hv = b.hypervolume({10.0, 10.0});
    CHECK(hv >= last_hv);
    last_hv = hv;
  }
  // Points outside the reference box are ignored, not an error.
  ParetoArchive c({"f1", "f2"});
  c.insert({{}, {20.0, 0.5}});
  c.insert({{}, {1.0, 1.0}});
  CHECK(c.hypervolume({2.0, 2.0}) == doctest::Approx(1.0));
}

TEST_CASE("merge_fronts and knee_point") {
  ParetoArchive r1({"JdH", "JOmega"}), r2({"JdH", "JOmega"});
  r1.insert({{1}, {1e-3, 2.0}});
  r1.insert({{2}, {1e-4, 5.0}});
  r2.insert({{3}, {2e-4, 3.0}});
  r2.insert({{4}, {2e-3, 2.5}});
  const std::vector<ParetoArchive> runs{r1, r2};
  const ParetoArchive m = merge_fronts(runs);
  CHECK(m.size() == 3);
  CHECK(knee_point(m.entries(), 5e-4).x == std::vector<double>{3});
  CHECK(knee_point(m.entries(), 1.0).x == std::vector<double>{1});
  CHECK_THROWS_WITH_AS(knee_point(m.entries(), 1e-4), doctest::Contains("threshold too strict"),
                       ValidationError);

  const std::vector<ParetoArchive> single{r1};
  CHECK(merge_fronts(single).size() == r1.size());

  const std::vector<ParetoArchive> mixed{r1, ParetoArchive({"JdH", "JNu"})};
  CHECK_THROWS_AS(merge_fronts(mixed), ValidationError);
}
