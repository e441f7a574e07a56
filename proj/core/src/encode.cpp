#include "xsmoo/encode.hpp"

#include <algorithm>
#include <stdexcept>

namespace xsmoo {

namespace {

// A literal or a known constant, used while building counters.
struct Node {
  enum Kind { False, True, Literal } kind = False;
  Lit lit;
  static Node constant(bool v) { return {v ? True : False, {}}; }
  static Node of(Lit l) { return {Literal, l}; }
};

std::vector<Var> reduce_pairs(std::vector<Var> vars) {
  std::sort(vars.begin(), vars.end());
  std::vector<Var> out;
  for (std::size_t i = 0; i < vars.size();) {
    std::size_t j = i;
    while (j < vars.size() && vars[j] == vars[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(vars[i]);
    i = j;
  }
  return out;
}

// Clauses forcing a ^ b ^ c == parity.
void xor3(Lit a, Lit b, Lit c, bool parity, std::vector<Clause>& out) {
  for (int m = 0; m < 8; ++m) {
    const bool va = m & 1, vb = m & 2, vc = m & 4;
    if ((va ^ vb ^ vc) == parity) continue;
    // forbid (a=va, b=vb, c=vc)
    out.push_back({va ? ~a : a, vb ? ~b : b, vc ? ~c : c});
  }
}

// Sequential counter over `lits`: returns nodes equivalent to
// "at least j of lits" for j = 0..bound. Definitions go to `out`.
std::vector<Node> counter(const std::vector<Lit>& lits, std::size_t bound, VariableSpace& space,
                          std::size_t owner, std::vector<Clause>& out) {
  std::vector<Node> prev(bound + 1, Node::constant(false));
  prev[0] = Node::constant(true);
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const Lit x = lits[i];
    std::vector<Node> cur(bound + 1, Node::constant(false));
    cur[0] = Node::constant(true);
    for (std::size_t j = 1; j <= bound; ++j) {
      // cur[j] <-> prev[j] or (x and prev[j-1])
      const Node& keep = prev[j];
      const Node& step = prev[j - 1];
      if (keep.kind == Node::True) {
        cur[j] = Node::constant(true);
        continue;
      }
      if (step.kind == Node::False) {
        cur[j] = keep;
        continue;
      }
      const Var s = space.allocate_aux(1, owner);
      const Lit o = Lit::pos(s);
      if (step.kind == Node::True) {
        // o <-> keep or x
        if (keep.kind == Node::False) {
          cur[j] = Node::of(x);
          continue;
        }
        out.push_back({~o, keep.lit, x});
        out.push_back({o, ~keep.lit});
        out.push_back({o, ~x});
      } else if (keep.kind == Node::False) {
        // o <-> x and step
        out.push_back({~o, x});
        out.push_back({~o, step.lit});
        out.push_back({o, ~x, ~step.lit});
      } else {
        out.push_back({~o, keep.lit, x});
        out.push_back({~o, keep.lit, step.lit});
        out.push_back({o, ~keep.lit});
        out.push_back({o, ~x, ~step.lit});
      }
      cur[j] = Node::of(o);
    }
    prev = std::move(cur);
  }
  return prev;
}

Node cardinality_node(const CardinalityConstraint& c, VariableSpace& space, std::size_t owner,
                      std::vector<Clause>& out) {
  if (c.bound == 0) return Node::constant(true);
  if (c.bound > c.lits.size()) return Node::constant(false);
  return counter(c.lits, c.bound, space, owner, out)[c.bound];
}

}  // namespace

std::vector<Clause> encode_xor_to_cnf(const XorConstraint& x, VariableSpace& space) {
  std::vector<Clause> out;
  const std::vector<Var> vars = reduce_pairs(x.vars);
  const bool p = x.parity;
  if (vars.empty()) {
    if (p) out.push_back({});
    return out;
  }
  if (vars.size() == 1) {
    out.push_back({Lit(vars[0], !p)});
    return out;
  }
  if (vars.size() == 2) {
    const Lit a = Lit::pos(vars[0]), b = Lit::pos(vars[1]);
    if (p) {
      out.push_back({a, b});
      out.push_back({~a, ~b});
    } else {
      out.push_back({a, ~b});
      out.push_back({~a, b});
    }
    return out;
  }
  // t_1 = v_1 ^ v_2, t_i = t_{i-1} ^ v_{i+1}, t_{n-2} ^ v_{n-1} ^ v_n = p
  Lit acc = Lit::pos(vars[0]);
  for (std::size_t i = 1; i + 2 < vars.size(); ++i) {
    const Lit t = Lit::pos(space.allocate_aux(1));
    xor3(acc, Lit::pos(vars[i]), t, false, out);
    acc = t;
  }
  xor3(acc, Lit::pos(vars[vars.size() - 2]), Lit::pos(vars.back()), p, out);
  return out;
}

std::vector<Clause> encode_cardinality(const CardinalityConstraint& c, VariableSpace& space) {
  std::vector<Clause> out;
  const Node top = cardinality_node(c, space, kSharedAux, out);
  if (top.kind == Node::False) {
    out.clear();
    out.push_back({});
  } else if (top.kind == Node::Literal) {
    out.push_back({top.lit});
  }
  return out;
}

Formula lower_to_cnf(const Formula& f) {
  VariableSpace space = f.space();
  std::vector<Clause> extra;
  for (const XorConstraint& x : f.xors()) {
    auto cl = encode_xor_to_cnf(x, space);
    extra.insert(extra.end(), cl.begin(), cl.end());
  }
  for (const CardinalityConstraint& c : f.cards()) {
    auto cl = encode_cardinality(c, space);
    extra.insert(extra.end(), cl.begin(), cl.end());
  }
  Formula out(space);
  for (const Clause& c : f.clauses()) out.add_clause(c);
  for (Clause& c : extra) out.add_clause(std::move(c));
  return out;
}

Lit reify(const Formula& f, Formula& out, std::size_t owner) {
  if (f.space().total() > out.space().total()) {
    throw std::invalid_argument("reify: formula does not fit the target space");
  }
  std::vector<Lit> parts;
  bool falsified = false;

  for (const Clause& c : f.clauses()) {
    if (c.empty()) {
      falsified = true;
      continue;
    }
    if (c.size() == 1) {
      parts.push_back(c[0]);
      continue;
    }
    const Lit e = Lit::pos(out.fresh(1, owner));
    Clause big{~e};
    for (Lit l : c) {
      big.push_back(l);
      out.add_clause({e, ~l});
    }
    out.add_clause(std::move(big));
    parts.push_back(e);
  }

  for (const XorConstraint& x : f.xors()) {
    const std::vector<Var> vars = reduce_pairs(x.vars);
    if (vars.empty()) {
      if (x.parity) falsified = true;
      continue;
    }
    if (vars.size() == 1) {
      parts.push_back(Lit(vars[0], !x.parity));
      continue;
    }
    // e <-> (xor vars == parity)  iff  xor(vars, e) == parity ^ 1
    const Var e = out.fresh(1, owner);
    XorConstraint def{vars, !x.parity};
    def.vars.push_back(e);
    out.add_xor(std::move(def));
    parts.push_back(Lit::pos(e));
  }

  for (const CardinalityConstraint& c : f.cards()) {
    VariableSpace space = out.space();
    std::vector<Clause> defs;
    // Counter aux must be allocated through `out` so its space stays in sync.
    const std::size_t before = space.total();
    const Node top = cardinality_node(c, space, owner, defs);
    const std::size_t added = space.total() - before;
    if (added > 0) {
      const Var first = out.fresh(added, owner);
      if (first != before) throw std::logic_error("reify: aux allocation out of sync");
    }
    for (Clause& d : defs) out.add_clause(std::move(d));
    if (top.kind == Node::False) falsified = true;
    if (top.kind == Node::Literal) parts.push_back(top.lit);
  }

  const Lit b = Lit::pos(out.fresh(1, owner));
  if (falsified) {
    out.add_unit(~b);
    return b;
  }
  Clause back{b};
  for (Lit l : parts) {
    out.add_clause({~b, l});
    back.push_back(~l);
  }
  out.add_clause(std::move(back));
  return b;
}

}  // namespace xsmoo
