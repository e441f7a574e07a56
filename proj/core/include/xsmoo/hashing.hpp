#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "xsmoo/formula.hpp"
#include "xsmoo/rational.hpp"
#include "xsmoo/sat.hpp"

namespace xsmoo {

using Rng = std::mt19937_64;

/// Stream `stream` of master seed `master`: one SplitMix64 step over
/// master + (stream + 1) * golden-gamma. Distinct streams give unrelated seeds.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

/// XOR over a random subset (each variable kept with probability 1/2) with a
/// uniform parity bit. Uses raw generator bits, so the draw is portable.
XorConstraint sample_xor(std::span<const Var> vars, Rng& rng);

/// The draw of sample_xor over `count` variables (count <= 64) as a mask:
/// bit t set when variable t is included. Consumes the generator identically.
std::pair<std::uint64_t, bool> sample_xor_mask(std::size_t count, Rng& rng);

/// Satisfiability of f with the decision variables frozen at x0 and `l`
/// fresh random XORs over latent block `block`. Empty on solver timeout.
std::optional<bool> xor_counting(const Formula& f, std::size_t block, int l, const Assignment& x0,
                                 SolverBackend& backend, Rng& rng, const SolveLimits& limits = {});

/// ceil(2p / (p - 1/2)^2 * tau) with p = 1 - 2^l* / (2^l* - 1)^2, evaluated
/// with an exact ratio. Throws for l_star < 2 or tau <= 0.
std::size_t amplification_size(int l_star, double tau);

/// The exact ratio 2p / (p - 1/2)^2 for the given l*.
Rational amplification_ratio(int l_star);

struct AmplifiedQuery {
  /// Majority over the m hashed copies; lives in an extended space whose
  /// aux variables are owned by the objective's block.
  Formula psi;
  std::size_t m = 0;
  int l = 0;
  int l_star = 0;
  double tau = 0;
  /// copy_latents[j][t] stands in for latent t of the block in copy j.
  std::vector<std::vector<Var>> copy_latents;
  /// indicators[j] is true exactly when copy j (with its XORs) holds.
  std::vector<Lit> indicators;
  /// copies[j] is psi_j: the renamed formula plus its l XORs. Only kept
  /// when AmplifyOptions::keep_copies is set.
  std::vector<Formula> copies;
};

struct AmplifyOptions {
  /// Replaces the computed m. Diagnostics and tests only.
  std::optional<std::size_t> m_override;
  bool keep_copies = false;
};

AmplifiedQuery build_amplified(const Formula& f, std::size_t block, int l, int l_star, double tau, Rng& rng,
                               const AmplifyOptions& options = {});

}  // namespace xsmoo
