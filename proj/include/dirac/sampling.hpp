#pragma once

#include "dirac/expr.hpp"

#include <cstdint>
#include <vector>

namespace dirac {

/// Deterministic rational points: numerators uniform in [-bound, bound],
/// denominators in {1, 2, 3}. Same (dim, count, seed, bound) gives the same
/// list. Throws PreconditionError for count < 1.
std::vector<Point> sample_points(const Chart& chart, int count, std::uint64_t seed, int bound = 9);

}  // namespace dirac
