#include "xsmoo/pareto.hpp"

#include <stdexcept>

namespace xsmoo {

std::vector<Rational> GridPoint::thresholds() const {
  std::vector<Rational> out;
  out.reserve(exponents.size());
  for (int l : exponents) out.push_back(pow2(l));
  return out;
}

bool dominates(std::span<const Rational> p, std::span<const Rational> q) {
  if (p.size() != q.size()) throw std::invalid_argument("dominates: vector lengths differ");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < q[i]) return false;
  }
  return true;
}

bool strictly_dominates(std::span<const Rational> p, std::span<const Rational> q) {
  if (!dominates(p, q)) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > q[i]) return true;
  }
  return false;
}

ScoreVector dominance_key(const FrontierEntry& e) {
  ScoreVector key = e.p;
  if (e.cost) key.push_back(-*e.cost);
  return key;
}

Frontier prune_nondominated(const std::vector<FrontierEntry>& entries) {
  std::vector<ScoreVector> keys;
  for (const FrontierEntry& e : entries) keys.push_back(dominance_key(e));
  Frontier out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < entries.size() && keep; ++j) {
      if (i == j) continue;
      if (keys[j] == keys[i]) {
        keep = j > i;  // first representative wins
      } else if (dominates(keys[j], keys[i])) {
        keep = false;
      }
    }
    if (keep) out.push_back(entries[i]);
  }
  return out;
}

Frontier strict_nondominated(const std::vector<FrontierEntry>& entries) {
  std::vector<ScoreVector> keys;
  for (const FrontierEntry& e : entries) keys.push_back(dominance_key(e));
  Frontier out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < entries.size() && keep; ++j) {
      if (i != j && strictly_dominates(keys[j], keys[i])) keep = false;
    }
    if (keep) out.push_back(entries[i]);
  }
  return out;
}

bool is_gamma_approximate(const std::vector<ScoreVector>& candidates, const std::vector<ScoreVector>& reference,
                          const Rational& gamma, const Rational& floor) {
  for (const ScoreVector& r : reference) {
    bool exempt = false;
    for (const Rational& v : r) exempt = exempt || v < floor;
    if (exempt) continue;
    bool covered = false;
    for (const ScoreVector& c : candidates) {
      if (c.size() != r.size()) throw std::invalid_argument("score dimension mismatch");
      bool ok = true;
      for (std::size_t i = 0; i < r.size() && ok; ++i) ok = gamma * c[i] >= r[i];
      if (ok) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace xsmoo
