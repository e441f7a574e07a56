#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "xsmoo/sat.hpp"

namespace xsmoo {

namespace {

constexpr std::uint8_t kFalse = 0;
constexpr std::uint8_t kTrue = 1;
constexpr std::uint8_t kUndef = 2;

enum class RKind : std::uint8_t { None, Clause, Xor, Card };

struct Reason {
  RKind kind = RKind::None;
  std::uint32_t idx = 0;
  bool operator==(const Reason&) const = default;
};

struct ClauseRec {
  std::vector<Lit> lits;
  bool learnt = false;
  bool removed = false;
  std::uint32_t lbd = 0;
  double activity = 0;
};

struct Watch {
  std::uint32_t cref;
  Lit blocker;
};

struct XorRec {
  std::vector<Var> vars;
  bool parity = false;
};

struct CardRec {
  std::vector<Lit> lits;
  std::uint32_t bound = 0;
  std::uint32_t nfalse = 0;
};

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

struct CdclSolver::Impl {
  std::size_t n = 0;
  bool ok = true;

  std::vector<std::uint8_t> value;
  std::vector<std::uint32_t> level;
  std::vector<std::uint32_t> trail_pos;
  std::vector<Reason> reason;
  std::vector<std::uint8_t> phase;
  std::vector<std::uint8_t> seen;
  std::vector<Lit> trail;
  std::vector<std::uint32_t> trail_lim;
  std::size_t qhead = 0;

  std::vector<ClauseRec> clauses;
  std::vector<std::uint32_t> free_slots;
  std::vector<std::vector<Watch>> watches;  // by literal code; triggered when that literal becomes false
  std::vector<XorRec> xors;
  std::vector<std::vector<std::uint32_t>> xor_watches;  // by var
  std::vector<CardRec> cards;
  std::vector<std::vector<std::uint32_t>> card_occ;  // by literal code

  // VSIDS
  std::vector<double> activity;
  std::vector<std::uint8_t> priority;
  double var_inc = 1.0;
  double cla_inc = 1.0;
  std::vector<Var> heap;
  std::vector<std::int64_t> heap_index;

  std::size_t num_learnts = 0;
  double max_learnts = 0;

  SolveStats stats;
  std::vector<Lit> assumptions;
  std::vector<Lit> buf, buf2, to_clear;

  explicit Impl(std::size_t vars, std::uint64_t seed) : n(vars) {
    value.assign(n, kUndef);
    level.assign(n, 0);
    trail_pos.assign(n, 0);
    reason.assign(n, {});
    phase.assign(n, kTrue);
    seen.assign(n, 0);
    watches.resize(2 * n);
    xor_watches.resize(n);
    card_occ.resize(2 * n);
    activity.assign(n, 0.0);
    priority.assign(n, 0);
    std::mt19937_64 rng(seed);
    if (seed != 0) {
      for (std::size_t v = 0; v < n; ++v) activity[v] = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 1e-5;
    }
    heap_index.assign(n, -1);
    for (Var v = 0; v < n; ++v) heap_insert(v);
  }

  // ---- heap ----
  bool heap_less(Var a, Var b) const {
    if (priority[a] != priority[b]) return priority[a] > priority[b];
    if (activity[a] != activity[b]) return activity[a] > activity[b];
    return a < b;
  }
  void heap_up(std::size_t i) {
    const Var v = heap[i];
    while (i > 0) {
      const std::size_t p = (i - 1) / 2;
      if (!heap_less(v, heap[p])) break;
      heap[i] = heap[p];
      heap_index[heap[i]] = static_cast<std::int64_t>(i);
      i = p;
    }
    heap[i] = v;
    heap_index[v] = static_cast<std::int64_t>(i);
  }
  void heap_down(std::size_t i) {
    const Var v = heap[i];
    for (;;) {
      std::size_t c = 2 * i + 1;
      if (c >= heap.size()) break;
      if (c + 1 < heap.size() && heap_less(heap[c + 1], heap[c])) ++c;
      if (!heap_less(heap[c], v)) break;
      heap[i] = heap[c];
      heap_index[heap[i]] = static_cast<std::int64_t>(i);
      i = c;
    }
    heap[i] = v;
    heap_index[v] = static_cast<std::int64_t>(i);
  }
  void heap_insert(Var v) {
    if (heap_index[v] >= 0) return;
    heap.push_back(v);
    heap_up(heap.size() - 1);
  }
  Var heap_pop() {
    const Var top = heap[0];
    heap_index[top] = -1;
    const Var last = heap.back();
    heap.pop_back();
    if (!heap.empty()) {
      heap[0] = last;
      heap_index[last] = 0;
      heap_down(0);
    }
    return top;
  }

  void bump_var(Var v) {
    activity[v] += var_inc;
    if (activity[v] > 1e100) {
      for (double& a : activity) a *= 1e-100;
      var_inc *= 1e-100;
    }
    if (heap_index[v] >= 0) heap_up(static_cast<std::size_t>(heap_index[v]));
  }
  void bump_clause(ClauseRec& c) {
    c.activity += cla_inc;
    if (c.activity > 1e20) {
      for (ClauseRec& r : clauses) {
        if (r.learnt) r.activity *= 1e-20;
      }
      cla_inc *= 1e-20;
    }
  }

  // ---- assignment ----
  std::uint8_t lit_value(Lit l) const {
    const std::uint8_t v = value[l.var()];
    return v == kUndef ? kUndef : static_cast<std::uint8_t>(v ^ (l.negated() ? 1 : 0));
  }
  std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim.size()); }

  void enqueue(Lit p, Reason r) {
    const Var v = p.var();
    value[v] = p.negated() ? kFalse : kTrue;
    level[v] = decision_level();
    trail_pos[v] = static_cast<std::uint32_t>(trail.size());
    reason[v] = r;
    trail.push_back(p);
    for (std::uint32_t c : card_occ[(~p).code()]) ++cards[c].nfalse;
  }

  void backtrack(std::uint32_t lvl) {
    if (decision_level() <= lvl) return;
    const std::size_t lim = trail_lim[lvl];
    for (std::size_t i = trail.size(); i-- > lim;) {
      const Lit p = trail[i];
      const Var v = p.var();
      for (std::uint32_t c : card_occ[(~p).code()]) --cards[c].nfalse;
      phase[v] = value[v];
      value[v] = kUndef;
      reason[v] = {};
      heap_insert(v);
    }
    trail.resize(lim);
    trail_lim.resize(lvl);
    qhead = std::min(qhead, trail.size());
  }

  // ---- constraint store ----
  std::uint32_t store_clause(std::vector<Lit> lits, bool learnt, std::uint32_t lbd) {
    std::uint32_t cref;
    if (!free_slots.empty()) {
      cref = free_slots.back();
      free_slots.pop_back();
      clauses[cref] = ClauseRec{std::move(lits), learnt, false, lbd, 0};
    } else {
      cref = static_cast<std::uint32_t>(clauses.size());
      clauses.push_back(ClauseRec{std::move(lits), learnt, false, lbd, 0});
    }
    const ClauseRec& c = clauses[cref];
    watches[c.lits[0].code()].push_back({cref, c.lits[1]});
    watches[c.lits[1].code()].push_back({cref, c.lits[0]});
    return cref;
  }

  void add_clause(std::span<const Lit> in) {
    if (!ok) return;
    backtrack(0);
    std::vector<Lit> lits(in.begin(), in.end());
    for (Lit l : lits) {
      if (l.var() >= n) throw std::out_of_range("clause literal out of range");
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::vector<Lit> kept;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (i + 1 < lits.size() && lits[i + 1] == ~lits[i]) return;  // tautology
      const std::uint8_t v = lit_value(lits[i]);
      if (v == kTrue) return;
      if (v == kFalse) continue;
      kept.push_back(lits[i]);
    }
    if (kept.empty()) {
      ok = false;
      return;
    }
    if (kept.size() == 1) {
      enqueue(kept[0], {});
      return;
    }
    store_clause(std::move(kept), false, 0);
  }

  void add_xor(std::span<const Var> in, bool parity) {
    if (!ok) return;
    backtrack(0);
    std::vector<Var> vars(in.begin(), in.end());
    for (Var v : vars) {
      if (v >= n) throw std::out_of_range("xor variable out of range");
    }
    std::sort(vars.begin(), vars.end());
    std::vector<Var> kept;
    for (std::size_t i = 0; i < vars.size();) {
      std::size_t j = i;
      while (j < vars.size() && vars[j] == vars[i]) ++j;
      if ((j - i) % 2 == 1) {
        if (value[vars[i]] == kUndef) {
          kept.push_back(vars[i]);
        } else if (value[vars[i]] == kTrue) {
          parity = !parity;
        }
      }
      i = j;
    }
    if (kept.empty()) {
      if (parity) ok = false;
      return;
    }
    if (kept.size() == 1) {
      enqueue(Lit(kept[0], !parity), {});
      return;
    }
    const auto idx = static_cast<std::uint32_t>(xors.size());
    xors.push_back({std::move(kept), parity});
    xor_watches[xors[idx].vars[0]].push_back(idx);
    xor_watches[xors[idx].vars[1]].push_back(idx);
  }

  void add_cardinality(std::span<const Lit> in, std::size_t bound) {
    if (!ok) return;
    backtrack(0);
    std::vector<Lit> lits;
    std::size_t need = bound;
    for (Lit l : in) {
      if (l.var() >= n) throw std::out_of_range("cardinality literal out of range");
      const std::uint8_t v = lit_value(l);
      if (v == kTrue) {
        if (need > 0) --need;
      } else if (v == kUndef) {
        lits.push_back(l);
      }
    }
    // A complementary pair contributes exactly one true literal.
    std::sort(lits.begin(), lits.end());
    std::vector<Lit> kept;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (!kept.empty() && kept.back() == ~lits[i]) {
        kept.pop_back();
        if (need > 0) --need;
        continue;
      }
      kept.push_back(lits[i]);
    }
    if (need == 0) return;
    if (need > kept.size()) {
      ok = false;
      return;
    }
    if (need == kept.size()) {
      for (Lit l : kept) {
        if (lit_value(l) == kUndef) enqueue(l, {});
        else if (lit_value(l) == kFalse) ok = false;
      }
      return;
    }
    if (need == 1) {
      add_clause(kept);
      return;
    }
    const auto idx = static_cast<std::uint32_t>(cards.size());
    CardRec rec;
    rec.lits = std::move(kept);
    rec.bound = static_cast<std::uint32_t>(need);
    cards.push_back(std::move(rec));
    for (Lit l : cards[idx].lits) card_occ[l.code()].push_back(idx);
  }

  // ---- propagation ----
  Reason propagate() {
    Reason confl;
    while (qhead < trail.size()) {
      const Lit p = trail[qhead++];
      const Lit falsified = ~p;
      ++stats.propagations;

      // clauses
      {
        auto& ws = watches[falsified.code()];
        std::size_t i = 0, j = 0;
        while (i < ws.size()) {
          const Watch w = ws[i++];
          if (lit_value(w.blocker) == kTrue) {
            ws[j++] = w;
            continue;
          }
          ClauseRec& c = clauses[w.cref];
          if (c.removed) continue;
          auto& L = c.lits;
          if (L[0] == falsified) std::swap(L[0], L[1]);
          const Lit first = L[0];
          if (first != w.blocker && lit_value(first) == kTrue) {
            ws[j++] = {w.cref, first};
            continue;
          }
          bool found = false;
          for (std::size_t k = 2; k < L.size(); ++k) {
            if (lit_value(L[k]) != kFalse) {
              L[1] = L[k];
              L[k] = falsified;
              watches[L[1].code()].push_back({w.cref, first});
              found = true;
              break;
            }
          }
          if (found) continue;
          ws[j++] = {w.cref, first};
          if (lit_value(first) == kFalse) {
            confl = {RKind::Clause, w.cref};
            while (i < ws.size()) ws[j++] = ws[i++];
          } else {
            enqueue(first, {RKind::Clause, w.cref});
          }
        }
        ws.resize(j);
        if (confl.kind != RKind::None) return confl;
      }

      // xors
      {
        const Var v = p.var();
        auto& ws = xor_watches[v];
        std::size_t i = 0, j = 0;
        while (i < ws.size()) {
          const std::uint32_t x = ws[i++];
          auto& V = xors[x].vars;
          if (V[0] == v) std::swap(V[0], V[1]);
          bool found = false;
          for (std::size_t k = 2; k < V.size(); ++k) {
            if (value[V[k]] == kUndef) {
              std::swap(V[1], V[k]);
              xor_watches[V[1]].push_back(x);
              found = true;
              break;
            }
          }
          if (found) continue;
          ws[j++] = x;
          bool par = xors[x].parity;
          for (std::size_t k = 1; k < V.size(); ++k) par ^= (value[V[k]] == kTrue);
          if (value[V[0]] == kUndef) {
            enqueue(Lit(V[0], !par), {RKind::Xor, x});
          } else if ((value[V[0]] == kTrue) != par) {
            confl = {RKind::Xor, x};
            while (i < ws.size()) ws[j++] = ws[i++];
          }
        }
        ws.resize(j);
        if (confl.kind != RKind::None) return confl;
      }

      // cardinality
      for (std::uint32_t c : card_occ[falsified.code()]) {
        CardRec& C = cards[c];
        const std::uint32_t slack = static_cast<std::uint32_t>(C.lits.size()) - C.bound;
        if (C.nfalse > slack) return {RKind::Card, c};
        if (C.nfalse == slack) {
          for (Lit l : C.lits) {
            if (lit_value(l) == kUndef) enqueue(l, {RKind::Card, c});
          }
        }
      }
    }
    return confl;
  }

  // Literals of the reason for var v, implied literal first.
  void explain(Var v, std::vector<Lit>& out) {
    out.clear();
    const Reason r = reason[v];
    const Lit implied(v, value[v] == kFalse);
    switch (r.kind) {
      case RKind::Clause:
        out = clauses[r.idx].lits;
        break;
      case RKind::Xor:
        out.push_back(implied);
        for (Var w : xors[r.idx].vars) {
          if (w != v) out.push_back(Lit(w, value[w] == kTrue));
        }
        break;
      case RKind::Card:
        out.push_back(implied);
        for (Lit l : cards[r.idx].lits) {
          if (lit_value(l) == kFalse && trail_pos[l.var()] < trail_pos[v]) out.push_back(l);
        }
        break;
      case RKind::None:
        throw std::logic_error("explain on decision");
    }
  }

  void explain_conflict(Reason r, std::vector<Lit>& out) {
    out.clear();
    switch (r.kind) {
      case RKind::Clause:
        out = clauses[r.idx].lits;
        break;
      case RKind::Xor:
        for (Var w : xors[r.idx].vars) out.push_back(Lit(w, value[w] == kTrue));
        break;
      case RKind::Card:
        for (Lit l : cards[r.idx].lits) {
          if (lit_value(l) == kFalse) out.push_back(l);
        }
        break;
      case RKind::None:
        throw std::logic_error("empty conflict");
    }
  }

  void analyze(Reason confl, std::vector<Lit>& learnt, std::uint32_t& bt_level) {
    learnt.clear();
    learnt.push_back(Lit());
    int path = 0;
    Lit p;
    bool have_p = false;
    std::size_t index = trail.size();
    if (confl.kind == RKind::Clause && clauses[confl.idx].learnt) bump_clause(clauses[confl.idx]);
    explain_conflict(confl, buf);
    for (;;) {
      for (Lit q : buf) {
        if (have_p && q == p) continue;
        const Var v = q.var();
        if (!seen[v] && level[v] > 0) {
          seen[v] = 1;
          bump_var(v);
          if (level[v] >= decision_level()) {
            ++path;
          } else {
            learnt.push_back(q);
          }
        }
      }
      do {
        --index;
      } while (!seen[trail[index].var()]);
      p = trail[index];
      have_p = true;
      seen[p.var()] = 0;
      --path;
      if (path == 0) break;
      const Reason r = reason[p.var()];
      if (r.kind == RKind::Clause && clauses[r.idx].learnt) bump_clause(clauses[r.idx]);
      explain(p.var(), buf);
    }
    learnt[0] = ~p;

    // cheap minimization: drop literals whose reason is covered by the clause
    to_clear.assign(learnt.begin() + 1, learnt.end());
    std::size_t keep = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      const Var v = learnt[i].var();
      bool redundant = false;
      if (reason[v].kind != RKind::None) {
        explain(v, buf2);
        redundant = true;
        for (std::size_t k = 1; k < buf2.size() && redundant; ++k) {
          const Var w = buf2[k].var();
          if (!seen[w] && level[w] > 0) redundant = false;
        }
      }
      if (!redundant) learnt[keep++] = learnt[i];
    }
    for (Lit l : to_clear) seen[l.var()] = 0;
    learnt.resize(keep);

    bt_level = 0;
    if (learnt.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i) {
        if (level[learnt[i].var()] > level[learnt[max_i].var()]) max_i = i;
      }
      std::swap(learnt[1], learnt[max_i]);
      bt_level = level[learnt[1].var()];
    }
  }

  std::uint32_t compute_lbd(const std::vector<Lit>& lits) {
    std::vector<std::uint32_t> levels;
    levels.reserve(lits.size());
    for (Lit l : lits) levels.push_back(level[l.var()]);
    std::sort(levels.begin(), levels.end());
    return static_cast<std::uint32_t>(std::unique(levels.begin(), levels.end()) - levels.begin());
  }

  bool locked(std::uint32_t cref) const {
    const ClauseRec& c = clauses[cref];
    const Var v = c.lits[0].var();
    return lit_value(c.lits[0]) == kTrue && reason[v] == Reason{RKind::Clause, cref};
  }

  void reduce_db() {
    std::vector<std::uint32_t> cand;
    for (std::uint32_t i = 0; i < clauses.size(); ++i) {
      const ClauseRec& c = clauses[i];
      if (c.learnt && !c.removed && c.lbd > 2 && !locked(i)) cand.push_back(i);
    }
    std::sort(cand.begin(), cand.end(), [&](std::uint32_t a, std::uint32_t b) {
      const ClauseRec& x = clauses[a];
      const ClauseRec& y = clauses[b];
      if (x.lbd != y.lbd) return x.lbd > y.lbd;
      if (x.activity != y.activity) return x.activity < y.activity;
      return a < b;
    });
    const std::size_t drop = cand.size() / 2;
    for (std::size_t i = 0; i < drop; ++i) {
      ClauseRec& c = clauses[cand[i]];
      c.removed = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
      --num_learnts;
    }
    // purge stale watches so freed slots can be reused
    for (auto& ws : watches) {
      ws.erase(std::remove_if(ws.begin(), ws.end(), [&](const Watch& w) { return clauses[w.cref].removed; }),
               ws.end());
    }
    for (std::size_t i = 0; i < drop; ++i) free_slots.push_back(cand[i]);
  }

  bool pick_branch(Lit& out) {
    while (!heap.empty()) {
      const Var v = heap_pop();
      if (value[v] == kUndef) {
        ++stats.decisions;
        out = Lit(v, phase[v] != kTrue);
        return true;
      }
    }
    return false;
  }

  SolveStatus search(std::uint64_t conflict_budget, const SolveLimits& limits,
                     std::chrono::steady_clock::time_point start, std::uint64_t base_conflicts) {
    std::vector<Lit> learnt;
    std::uint64_t local = 0;
    for (;;) {
      const Reason confl = propagate();
      if (confl.kind != RKind::None) {
        ++stats.conflicts;
        ++local;
        if (decision_level() == 0) {
          ok = false;
          return SolveStatus::Unsat;
        }
        std::uint32_t bt = 0;
        analyze(confl, learnt, bt);
        backtrack(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], {});
        } else {
          const std::uint32_t lbd = compute_lbd(learnt);
          const std::uint32_t cref = store_clause(learnt, true, lbd);
          ++num_learnts;
          bump_clause(clauses[cref]);
          enqueue(learnt[0], {RKind::Clause, cref});
        }
        var_inc /= 0.95;
        cla_inc /= 0.999;
        if (limits.conflict_limit != 0 && stats.conflicts - base_conflicts >= limits.conflict_limit) {
          return SolveStatus::Timeout;
        }
        if (limits.time_limit_s > 0 && (stats.conflicts & 63) == 0) {
          const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          if (el > limits.time_limit_s) return SolveStatus::Timeout;
        }
        continue;
      }
      if (local >= conflict_budget) {
        backtrack(0);
        return SolveStatus::Timeout;  // restart marker, handled by caller
      }
      if (static_cast<double>(num_learnts) - static_cast<double>(trail.size()) >= max_learnts) {
        reduce_db();
        max_learnts *= 1.1;
      }
      Lit next;
      bool have = false;
      while (decision_level() < assumptions.size()) {
        const Lit a = assumptions[decision_level()];
        const std::uint8_t v = lit_value(a);
        if (v == kTrue) {
          trail_lim.push_back(static_cast<std::uint32_t>(trail.size()));
        } else if (v == kFalse) {
          return SolveStatus::Unsat;
        } else {
          next = a;
          have = true;
          break;
        }
      }
      if (!have) {
        if (limits.time_limit_s > 0 && (stats.decisions & 4095) == 0) {
          const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          if (el > limits.time_limit_s) return SolveStatus::Timeout;
        }
        if (!pick_branch(next)) return SolveStatus::Sat;
      }
      trail_lim.push_back(static_cast<std::uint32_t>(trail.size()));
      enqueue(next, {});
    }
  }

  SolveStatus solve(std::span<const Lit> assume, const SolveLimits& limits) {
    model_valid = false;
    if (!ok) return SolveStatus::Unsat;
    backtrack(0);
    assumptions.assign(assume.begin(), assume.end());
    for (Lit a : assumptions) {
      if (a.var() >= n) throw std::out_of_range("assumption out of range");
    }
    if (propagate().kind != RKind::None) {
      ok = false;
      return SolveStatus::Unsat;
    }
    max_learnts = std::max<double>(2000.0, static_cast<double>(clauses.size() + xors.size() + cards.size()) / 3.0);
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t base = stats.conflicts;
    for (int r = 0;; ++r) {
      const auto budget = static_cast<std::uint64_t>(luby(2.0, r) * 100.0);
      SolveStatus st = search(budget, limits, start, base);
      if (st == SolveStatus::Sat) {
        model_bits.assign(n, 0);
        for (std::size_t v = 0; v < n; ++v) model_bits[v] = value[v] == kTrue ? 1 : 0;
        model_valid = true;
        backtrack(0);
        return st;
      }
      if (st == SolveStatus::Unsat) {
        backtrack(0);
        return st;
      }
      const bool budget_hit = limits.conflict_limit != 0 && stats.conflicts - base >= limits.conflict_limit;
      bool time_hit = false;
      if (limits.time_limit_s > 0) {
        time_hit = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
                   limits.time_limit_s;
      }
      if (budget_hit || time_hit) {
        backtrack(0);
        return SolveStatus::Timeout;
      }
      ++stats.restarts;
      backtrack(0);
    }
  }

  void set_priority(std::span<const Var> vars) {
    for (Var v : vars) {
      if (v >= n) throw std::out_of_range("priority variable out of range");
      priority[v] = 1;
    }
    heap.clear();
    std::fill(heap_index.begin(), heap_index.end(), -1);
    for (Var v = 0; v < n; ++v) {
      if (value[v] == kUndef || level[v] > 0) heap_insert(v);
    }
  }

  std::vector<std::uint8_t> model_bits;
  bool model_valid = false;
};

CdclSolver::CdclSolver(std::size_t num_vars, std::uint64_t seed) : impl_(std::make_unique<Impl>(num_vars, seed)) {}
CdclSolver::~CdclSolver() = default;

std::size_t CdclSolver::num_vars() const { return impl_->n; }
void CdclSolver::add_clause(std::span<const Lit> lits) { impl_->add_clause(lits); }
void CdclSolver::add_xor(std::span<const Var> vars, bool parity) { impl_->add_xor(vars, parity); }
void CdclSolver::add_cardinality(std::span<const Lit> lits, std::size_t bound) {
  impl_->add_cardinality(lits, bound);
}

void CdclSolver::prioritize(std::span<const Var> vars) { impl_->set_priority(vars); }

void CdclSolver::add_formula(const Formula& f) {
  if (f.space().total() > impl_->n) throw std::invalid_argument("formula space exceeds solver variables");
  for (const Clause& c : f.clauses()) add_clause(c);
  for (const XorConstraint& x : f.xors()) add_xor(x.vars, x.parity);
  for (const CardinalityConstraint& c : f.cards()) add_cardinality(c.lits, c.bound);
}

SolveStatus CdclSolver::solve(std::span<const Lit> assumptions, const SolveLimits& limits) {
  return impl_->solve(assumptions, limits);
}

Assignment CdclSolver::model() const {
  if (!impl_->model_valid) throw std::logic_error("no model available");
  Assignment a(impl_->n);
  for (Var v = 0; v < impl_->n; ++v) a.set(v, impl_->model_bits[v] != 0);
  return a;
}

SolveStats CdclSolver::stats() const { return impl_->stats; }
bool CdclSolver::okay() const { return impl_->ok; }

}  // namespace xsmoo
