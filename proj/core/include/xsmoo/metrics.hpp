#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace xsmoo {

/// Objective vectors, larger is better in every coordinate.
using Point = std::vector<double>;
using PointSet = std::vector<Point>;

/// Mean distance from each candidate point to its nearest reference point.
double gd(const PointSet& candidate, const PointSet& reference);
/// gd with the roles swapped.
double igd(const PointSet& candidate, const PointSet& reference);

struct HvEstimate {
  double value = 0;
  /// Zero for the exact two-dimensional sweep.
  double std_error = 0;
  bool exact = true;
};

/// Volume dominated by `candidate` and bounded below by `ref`. Exact for
/// k <= 2, Monte Carlo over the bounding box otherwise.
HvEstimate hypervolume(const PointSet& candidate, const Point& ref, std::size_t samples = 1000000,
                       std::uint64_t seed = 0);
double hv(const PointSet& candidate, const Point& ref);

/// Sample deviation of nearest-neighbour distances; needs two points.
double sp(const PointSet& candidate);

struct Normalization {
  Point lo;
  Point span;
  /// Dimensions with zero span; they map to 0.
  std::vector<bool> constant;
  bool degenerate = false;
  Point apply(const Point& p) const;
  PointSet apply(const PointSet& s) const;
};

/// Min-max over the union of all sets, per dimension.
Normalization fit_normalization(const std::vector<PointSet>& sets);
std::vector<PointSet> normalize(const std::vector<PointSet>& sets, Normalization* map = nullptr);

/// Strictly non-dominated points of the union, duplicates collapsed, in
/// order of first appearance.
PointSet merge_reference(const std::vector<PointSet>& sets);

/// One point per row. A header row is recognised by any non-numeric field;
/// with a header, a column named "x" is skipped and a column named "cost"
/// is negated so that larger stays better. Fields may be "num/den".
PointSet read_points_csv(std::istream& in);

struct MetricsReport {
  double gd = 0;
  double igd = 0;
  double hv = 0;
  double hv_std_error = 0;
  /// NaN when the candidate has fewer than two points.
  double sp = 0;
  bool degenerate = false;
};

/// Merges candidate and reference into the reference frontier in raw
/// space, normalizes both with the union's span, then scores the candidate
/// (HV against the origin).
MetricsReport compare(const PointSet& candidate, const std::vector<PointSet>& references);

}  // namespace xsmoo
