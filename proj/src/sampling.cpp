#include "dirac/sampling.hpp"

#include "dirac/errors.hpp"

#include <random>

namespace dirac {

std::vector<Point> sample_points(const Chart& chart, int count, std::uint64_t seed, int bound) {
  if (count < 1) throw PreconditionError("sample count must be at least 1");
  if (bound < 0) throw PreconditionError("sample bound must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<Point> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    Point p;
    p.reserve(chart.dim());
    for (int i = 0; i < chart.dim(); ++i) {
      const int a = num(rng);
      const int b = den(rng);
      p.emplace_back(a, b);
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace dirac
