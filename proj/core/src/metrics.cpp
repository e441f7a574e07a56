#include "xsmoo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "xsmoo/rational.hpp"

namespace xsmoo {

namespace {

void check_dims(const PointSet& s, std::size_t k) {
  for (const Point& p : s) {
    if (p.size() != k) throw std::invalid_argument("points have mixed dimensions");
    for (double v : p) {
      if (!std::isfinite(v)) throw std::invalid_argument("points must be finite");
    }
  }
}

double dist(const Point& a, const Point& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double mean_nearest(const PointSet& from, const PointSet& to) {
  if (from.empty() || to.empty()) throw std::invalid_argument("distance metrics need nonempty sets");
  check_dims(from, from[0].size());
  check_dims(to, from[0].size());
  double total = 0;
  for (const Point& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point& q : to) best = std::min(best, dist(p, q));
    total += best;
  }
  return total / static_cast<double>(from.size());
}

bool weakly_dominates(const Point& a, const Point& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

}  // namespace

double gd(const PointSet& candidate, const PointSet& reference) { return mean_nearest(candidate, reference); }
double igd(const PointSet& candidate, const PointSet& reference) { return mean_nearest(reference, candidate); }

HvEstimate hypervolume(const PointSet& candidate, const Point& ref, std::size_t samples, std::uint64_t seed) {
  const std::size_t k = ref.size();
  check_dims(candidate, k);
  for (const Point& p : candidate) {
    if (!weakly_dominates(p, ref)) throw std::invalid_argument("every point must dominate the reference point");
  }
  HvEstimate out;
  if (candidate.empty() || k == 0) return out;
  if (k == 1) {
    double best = ref[0];
    for (const Point& p : candidate) best = std::max(best, p[0]);
    out.value = best - ref[0];
    return out;
  }
  if (k == 2) {
    PointSet s = candidate;
    std::sort(s.begin(), s.end(), [](const Point& a, const Point& b) {
      return a[0] != b[0] ? a[0] > b[0] : a[1] > b[1];
    });
    double top = ref[1];
    for (const Point& p : s) {
      if (p[1] > top) {
        out.value += (p[0] - ref[0]) * (p[1] - top);
        top = p[1];
      }
    }
    return out;
  }
  if (samples == 0) throw std::invalid_argument("Monte Carlo hypervolume needs samples");
  Point hi = ref;
  for (const Point& p : candidate) {
    for (std::size_t i = 0; i < k; ++i) hi[i] = std::max(hi[i], p[i]);
  }
  double box = 1;
  for (std::size_t i = 0; i < k; ++i) box *= hi[i] - ref[i];
  out.exact = false;
  if (box == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t hit = 0;
  Point q(k);
  for (std::size_t t = 0; t < samples; ++t) {
    for (std::size_t i = 0; i < k; ++i) q[i] = ref[i] + unit(rng) * (hi[i] - ref[i]);
    for (const Point& p : candidate) {
      if (weakly_dominates(p, q)) {
        ++hit;
        break;
      }
    }
  }
  const double frac = static_cast<double>(hit) / static_cast<double>(samples);
  out.value = frac * box;
  out.std_error = box * std::sqrt(frac * (1 - frac) / static_cast<double>(samples));
  return out;
}

double hv(const PointSet& candidate, const Point& ref) { return hypervolume(candidate, ref).value; }

double sp(const PointSet& candidate) {
  if (candidate.size() < 2) throw std::invalid_argument("spacing needs at least two points");
  check_dims(candidate, candidate[0].size());
  std::vector<double> d;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < candidate.size(); ++j) {
      if (i != j) best = std::min(best, dist(candidate[i], candidate[j]));
    }
    d.push_back(best);
  }
  double mean = 0;
  for (double v : d) mean += v;
  mean /= static_cast<double>(d.size());
  double ss = 0;
  for (double v : d) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(d.size() - 1));
}

Point Normalization::apply(const Point& p) const {
  if (p.size() != lo.size()) throw std::invalid_argument("normalization dimension mismatch");
  Point out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = constant[i] ? 0.0 : (p[i] - lo[i]) / span[i];
  return out;
}

PointSet Normalization::apply(const PointSet& s) const {
  PointSet out;
  out.reserve(s.size());
  for (const Point& p : s) out.push_back(apply(p));
  return out;
}

Normalization fit_normalization(const std::vector<PointSet>& sets) {
  Normalization n;
  std::size_t k = 0;
  bool any = false;
  for (const PointSet& s : sets) {
    if (!s.empty()) {
      k = s[0].size();
      any = true;
      break;
    }
  }
  if (!any) throw std::invalid_argument("normalization needs at least one point");
  Point lo(k, std::numeric_limits<double>::infinity()), hi(k, -std::numeric_limits<double>::infinity());
  for (const PointSet& s : sets) {
    check_dims(s, k);
    for (const Point& p : s) {
      for (std::size_t i = 0; i < k; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    }
  }
  n.lo = lo;
  n.span.resize(k);
  n.constant.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    n.span[i] = hi[i] - lo[i];
    n.constant[i] = !(n.span[i] > 0);
    n.degenerate = n.degenerate || n.constant[i];
  }
  return n;
}

std::vector<PointSet> normalize(const std::vector<PointSet>& sets, Normalization* map) {
  const Normalization n = fit_normalization(sets);
  std::vector<PointSet> out;
  for (const PointSet& s : sets) out.push_back(n.apply(s));
  if (map != nullptr) *map = n;
  return out;
}

PointSet merge_reference(const std::vector<PointSet>& sets) {
  PointSet all;
  for (const PointSet& s : sets) {
    for (const Point& p : s) {
      if (!all.empty() && p.size() != all[0].size()) throw std::invalid_argument("points have mixed dimensions");
      if (std::find(all.begin(), all.end(), p) == all.end()) all.push_back(p);
    }
  }
  PointSet out;
  for (const Point& p : all) {
    bool dominated = false;
    for (const Point& q : all) {
      if (q != p && weakly_dominates(q, p)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(p);
  }
  return out;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) {
    const auto b = cur.find_first_not_of(" \t\r");
    const auto e = cur.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

bool numeric(const std::string& s, double& v) {
  if (s.empty()) return false;
  try {
    v = to_double(parse_rational(s));
    return true;
  } catch (const std::exception&) {
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end != s.c_str() && *end == '\0';
  }
}

}  // namespace

PointSet read_points_csv(std::istream& in) {
  PointSet out;
  std::string line;
  std::vector<int> role;  // 0 keep, 1 skip, -1 negate
  bool header_seen = false;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    const std::vector<std::string> fields = split_row(line);
    std::vector<double> vals(fields.size());
    bool all_numeric = true;
    for (std::size_t i = 0; i < fields.size(); ++i) all_numeric = all_numeric && numeric(fields[i], vals[i]);
    if (!all_numeric && !header_seen && out.empty()) {
      header_seen = true;
      role.assign(fields.size(), 0);
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i] == "x") role[i] = 1;
        if (fields[i] == "cost") role[i] = -1;
      }
      continue;
    }
    Point p;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const int r = i < role.size() ? role[i] : 0;
      if (r == 1) continue;
      double v = 0;
      if (!numeric(fields[i], v)) throw std::invalid_argument("non-numeric value on CSV row " + std::to_string(row));
      p.push_back(r == -1 ? -v : v);
    }
    if (!out.empty() && p.size() != out[0].size()) {
      throw std::invalid_argument("CSV row " + std::to_string(row) + " has a different width");
    }
    out.push_back(std::move(p));
  }
  return out;
}

MetricsReport compare(const PointSet& candidate, const std::vector<PointSet>& references) {
  std::vector<PointSet> pool = references;
  pool.push_back(candidate);
  const PointSet reference = merge_reference(pool);
  Normalization n;
  const std::vector<PointSet> scaled = normalize({candidate, reference}, &n);
  MetricsReport r;
  r.degenerate = n.degenerate;
  r.gd = gd(scaled[0], scaled[1]);
  r.igd = igd(scaled[0], scaled[1]);
  const HvEstimate h = hypervolume(scaled[0], Point(candidate.at(0).size(), 0.0));
  r.hv = h.value;
  r.hv_std_error = h.std_error;
  r.sp = candidate.size() >= 2 ? sp(scaled[0]) : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace xsmoo
