#include "xsmoo/hashing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "xsmoo/encode.hpp"
#include "xsmoo/problem.hpp"

namespace xsmoo {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

// Raw generator bits, lowest first; every draw starts on a fresh word.
class BitSource {
 public:
  explicit BitSource(Rng& rng) : rng_(rng) {}
  bool next() {
    if (left_ == 0) {
      word_ = rng_();
      left_ = 64;
    }
    const bool b = (word_ & 1u) != 0;
    word_ >>= 1;
    --left_;
    return b;
  }

 private:
  Rng& rng_;
  std::uint64_t word_ = 0;
  int left_ = 0;
};

}  // namespace

XorConstraint sample_xor(std::span<const Var> vars, Rng& rng) {
  BitSource bits(rng);
  XorConstraint x;
  for (Var v : vars) {
    if (bits.next()) x.vars.push_back(v);
  }
  x.parity = bits.next();
  return x;
}

std::pair<std::uint64_t, bool> sample_xor_mask(std::size_t count, Rng& rng) {
  if (count > 64) throw std::invalid_argument("sample_xor_mask handles at most 64 variables");
  BitSource bits(rng);
  std::uint64_t mask = 0;
  for (std::size_t t = 0; t < count; ++t) {
    if (bits.next()) mask |= std::uint64_t{1} << t;
  }
  return {mask, bits.next()};
}

std::optional<bool> xor_counting(const Formula& f, std::size_t block, int l, const Assignment& x0,
                                 SolverBackend& backend, Rng& rng, const SolveLimits& limits) {
  if (l < 0) throw std::invalid_argument("xor_counting needs l >= 0");
  const VariableSpace& space = f.space();
  if (x0.size() < space.decision_count()) throw std::invalid_argument("x0 must fix every decision variable");
  Formula q = f;
  for (std::size_t j = 0; j < space.decision_count(); ++j) q.add_unit(Lit(space.decision(j), !x0[static_cast<Var>(j)]));
  const std::vector<Var> latent = space.block_vars(block);
  for (int t = 0; t < l; ++t) q.add_xor(sample_xor(latent, rng));
  const SolveOutcome out = solve(q, backend, rng(), limits);
  if (out.status == SolveStatus::Timeout) return std::nullopt;
  return out.status == SolveStatus::Sat;
}

Rational amplification_ratio(int l_star) {
  if (l_star < 2) throw std::invalid_argument("l* must be at least 2, got " + std::to_string(l_star));
  if (l_star > 60) throw std::invalid_argument("l* too large");
  // a = 2^l*, d = (a-1)^2:  2p/(p-1/2)^2 = 8 d (d - a) / (d - 2a)^2
  const mpz_class a = mpz_class(1) << l_star;
  const mpz_class d = (a - 1) * (a - 1);
  const mpz_class gap = d - 2 * a;
  Rational r(8 * d * (d - a), gap * gap);
  r.canonicalize();
  return r;
}

std::size_t amplification_size(int l_star, double tau) {
  if (!(tau > 0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
  const Rational product = amplification_ratio(l_star) * Rational(tau);
  const mpz_class m = -floor(-product);
  if (!m.fits_ulong_p()) throw std::overflow_error("amplification size overflow");
  return static_cast<std::size_t>(m.get_ui());
}

AmplifiedQuery build_amplified(const Formula& f, std::size_t block, int l, int l_star, double tau, Rng& rng,
                               const AmplifyOptions& options) {
  if (l < 0) throw std::invalid_argument("build_amplified needs l >= 0");
  AmplifiedQuery q;
  q.l = l;
  q.l_star = l_star;
  q.tau = tau;
  q.m = options.m_override ? *options.m_override : amplification_size(l_star, tau);
  if (q.m == 0) throw std::invalid_argument("m must be positive");

  ReplicatedLatent rep = replicate_latent(f, block, q.m);
  q.psi = Formula(rep.space);
  q.copy_latents = std::move(rep.latent_vars);
  for (std::size_t j = 0; j < q.m; ++j) {
    Formula psi_j = std::move(rep.copies[j]);
    for (int t = 0; t < l; ++t) psi_j.add_xor(sample_xor(q.copy_latents[j], rng));
    q.indicators.push_back(reify(psi_j, q.psi, block));
    if (options.keep_copies) q.copies.push_back(std::move(psi_j));
  }
  q.psi.add_cardinality({q.indicators, q.m / 2 + 1});
  return q;
}

}  // namespace xsmoo
