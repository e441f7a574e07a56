#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "xsmoo/metrics.hpp"

using namespace xsmoo;

namespace {

// Counts unit cells of an integer grid covered by the union of boxes.
double raster_hv(const PointSet& s, int scale) {
  double area = 0;
  const double cell = 1.0 / scale;
  for (int i = 0; i < 10 * scale; ++i) {
    for (int j = 0; j < 10 * scale; ++j) {
      const double cx = (i + 0.5) * cell, cy = (j + 0.5) * cell;
      for (const Point& p : s) {
        if (p[0] >= cx && p[1] >= cy) {
          area += cell * cell;
          break;
        }
      }
    }
  }
  return area;
}

}  // namespace

TEST_CASE("gd and igd examples") {
  const PointSet a{{1, 1}, {3, 2}};
  CHECK(gd(a, a) == 0);
  CHECK(igd(a, a) == 0);
  CHECK(gd({{1, 1}}, {{4, 5}}) == doctest::Approx(5.0).epsilon(1e-12));
  // distance from (0,0) to (4,5) is sqrt(41)
  CHECK(gd({{0, 0}, {4, 5}}, {{4, 5}}) == doctest::Approx(std::sqrt(41.0) / 2).epsilon(1e-12));
  CHECK(igd({{4, 5}}, {{0, 0}, {4, 5}}) == doctest::Approx(std::sqrt(41.0) / 2).epsilon(1e-12));
  CHECK(gd({{1, 1}, {4, 5}}, {{4, 5}}) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(igd({{4, 5}}, {{1, 1}, {4, 5}}) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(igd({{4, 5}, {1, 1}}, {{4, 5}}) == 0);
  CHECK_THROWS_AS(gd({}, a), std::invalid_argument);
}

TEST_CASE("hv examples") {
  CHECK(hv({{1, 2}, {2, 1}}, {0, 0}) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(hv({{1, 1}}, {0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hv({{2, 2}, {1, 1}}, {0, 0}) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(hv({{-1, 2}}, {0, 0}), std::invalid_argument);
}

TEST_CASE("hv matches rasterization and is monotone") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    PointSet s;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      // quarter-integer coordinates so the raster at scale 4 is exact
      s.push_back({static_cast<double>(rng() % 40) / 4, static_cast<double>(rng() % 40) / 4});
    }
    CHECK(std::abs(hv(s, {0, 0}) - raster_hv(s, 4)) < 1e-9);
    PointSet more = s;
    more.push_back({static_cast<double>(rng() % 40) / 4, static_cast<double>(rng() % 40) / 4});
    CHECK(hv(more, {0, 0}) >= hv(s, {0, 0}));
  }
}

TEST_CASE("hv in three dimensions is estimated") {
  const HvEstimate h = hypervolume({{1, 1, 1}, {2, 0.5, 0.5}}, {0, 0, 0}, 200000, 1);
  CHECK(!h.exact);
  // exact union: 1 + 0.5 - 0.25 = 1.25
  CHECK(std::abs(h.value - 1.25) < 4 * h.std_error + 1e-3);
}

TEST_CASE("sp examples and invariance") {
  CHECK(sp({{0, 0}, {5, 5}}) == 0);
  CHECK(sp({{0, 0}, {1, 0}, {2, 0}}) == doctest::Approx(0.0));
  CHECK(sp({{0, 0}, {1, 0}, {3, 0}}) == doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-12));
  CHECK_THROWS_AS(sp({{1, 1}}), std::invalid_argument);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 20; ++t) {
    PointSet s;
    for (int i = 0; i < 6; ++i) s.push_back({u(rng), u(rng)});
    const double th = u(rng), dx = u(rng), dy = u(rng);
    PointSet moved;
    for (const Point& p : s) {
      moved.push_back({std::cos(th) * p[0] - std::sin(th) * p[1] + dx, std::sin(th) * p[0] + std::cos(th) * p[1] + dy});
    }
    CHECK(std::abs(sp(s) - sp(moved)) < 1e-9);
  }
}

TEST_CASE("normalize examples") {
  Normalization n;
  const auto out = normalize({{{2, 0}, {4, 10}}, {{3, 5}}}, &n);
  CHECK(out[1][0] == Point{0.5, 0.5});
  CHECK(out[0][0] == Point{0, 0});
  CHECK(out[0][1] == Point{1, 1});
  CHECK(!n.degenerate);

  const auto flat = normalize({{{1, 7}, {2, 7}}}, &n);
  CHECK(n.degenerate);
  CHECK(flat[0][0][1] == 0);
  CHECK(flat[0][1][1] == 0);

  // metric after normalization is just the metric of the mapped points
  const PointSet a{{2, 0}, {4, 10}}, b{{3, 5}};
  const auto m = normalize({a, b}, &n);
  CHECK(gd(m[0], m[1]) == doctest::Approx(gd(n.apply(a), n.apply(b))));
}

TEST_CASE("merge_reference examples") {
  const PointSet s{{1, 4}, {4, 1}};
  CHECK(merge_reference({s, s}) == s);
  CHECK(merge_reference({{{1, 4}}, {{4, 1}}}) == s);
  CHECK(merge_reference({{{1, 1}}, {{2, 2}}}) == PointSet{{2, 2}});
}

TEST_CASE("csv ingestion") {
  std::istringstream in("x,p_1,p_2,cost\n0101,2,1/2,3\n1100,4,0.25,1\n");
  const PointSet s = read_points_csv(in);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == Point{2, 0.5, -3});
  CHECK(s[1] == Point{4, 0.25, -1});
  std::istringstream bare("1,2\n3,4\n");
  CHECK(read_points_csv(bare) == PointSet{{1, 2}, {3, 4}});
  std::istringstream bad("1,2\n3\n");
  CHECK_THROWS_AS(read_points_csv(bad), std::invalid_argument);
}

TEST_CASE("compare covers an exact frontier with zero igd") {
  const PointSet ref{{1, 4}, {4, 1}, {2, 2}};
  const MetricsReport r = compare(ref, {ref});
  CHECK(r.gd == 0);
  CHECK(r.igd == 0);
  CHECK(r.hv > 0);
}
