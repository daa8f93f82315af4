#pragma once

#include "dirac/normal_form.hpp"

#include <map>

namespace dirac {

/// dim pr1(L_p): exact rank of the vector block at p.
int leaf_dimension_at(const DiracFrame& f, std::span<const Rational> p);

struct ParityScan {
  Check check;
  std::vector<int> dims;         // per input point, -1 where skipped
  std::map<int, int> histogram;  // dimension -> count
  int base_dimension = 0;
};

/// Leaf dimensions at pts compared mod 2 with the base point. Points outside
/// the frame's domain are skipped, not failed.
ParityScan parity_scan(const DiracFrame& f, std::span<const Point> pts);

/// X_i·α_jk + X_j·α_ki + X_k·α_ij ≡ 0 for all i < j < k.
Check leafwise_closedness(const NormalFrame& nf);

}  // namespace dirac
