#pragma once

#include "dirac/dirac.hpp"

#include <cstdint>

namespace dirac {

enum class Block { Full, Vector };

/// Numerical rank of the frame matrix (or its vector block) evaluated in
/// double precision; threshold is tol relative to the largest pivot of the
/// whole frame matrix, also for the vector block.
/// `finite` is false (and rank -1) when evaluation produced inf/nan.
struct FloatRank {
  int rank = -1;
  bool finite = true;
};
FloatRank float_rank(const DiracFrame& f, std::span<const double> p, double tol = 1e-9,
                     Block block = Block::Full);

/// float_rank against the exact rank at each in-domain point of pts (the
/// rational point cast to doubles). Named "oracle_rank" or
/// "oracle_leaf_dimension".
Check rank_concordance(const DiracFrame& f, std::span<const Point> pts, double tol = 1e-9,
                       Block block = Block::Full);

/// Random pairs of sections a = Σ c_i e_i with degree ≤ 1 rational
/// polynomial coefficients; ⟨[a, b], e_k⟩ is evaluated exactly at pts.
Check sampled_closure(const DiracFrame& f, std::span<const Point> pts, int trials = 10,
                      std::uint64_t seed = 0);

}  // namespace dirac
