#pragma once

#include "dirac/normal_form.hpp"

#include <optional>
#include <utility>

namespace dirac {

/// Coordinate slice {c = value for the fixed coordinates} with its own chart
/// on the remaining coordinates (order and split inherited).
class Slice {
 public:
  Slice(const Chart& ambient, const std::vector<std::pair<int, Rational>>& fixed);
  /// Parses "x1=0,x2=1/2".
  static Slice parse(const Chart& ambient, std::string_view text);

  const Chart& ambient() const { return ambient_; }
  const Chart& chart() const { return chart_; }
  /// Ambient index -> slice index, or -1 for fixed coordinates.
  const std::vector<int>& new_index() const { return new_index_; }
  const std::vector<std::optional<Rational>>& values() const { return values_; }
  bool contains(std::span<const Rational> ambient_point) const;
  Point restrict(std::span<const Rational> ambient_point) const;
  Point lift(std::span<const Rational> slice_point) const;
  Expr restrict(const Expr& e) const;

 private:
  Chart ambient_;
  Chart chart_;
  std::vector<int> new_index_;
  std::vector<std::optional<Rational>> values_;
};

/// L_Q on the slice: L ∩ (TQ ⊕ T*M) projected modulo TQ°. Throws
/// ConstantDimensionError when the intersection changes dimension along the
/// slice, DomainError when the slice meets a denominator, and
/// PreconditionError when the base point is not on the slice.
DiracFrame induced_on_slice(const DiracFrame& f, const Slice& slice);

struct SliceBivector {
  Chart chart;
  Bivector pi;
  Point base_point;
};

/// Π_Q(dy_i, dy_j) = Z_ij restricted to x = x(m0), on the y-chart.
SliceBivector transverse_poisson(const NormalFrame& nf);

/// Π^V on the full chart: ∂y-components Z_ij(x, y).
Bivector vertical_poisson(const NormalFrame& nf);

/// Restriction of a bivector's slice components to the slice chart.
Bivector restrict(const Bivector& pi, const Slice& slice);

/// [X_i, Π^V] ≡ 0 for every horizontal field X_i = pr1(H_i).
Check check_horizontal_invariance(const NormalFrame& nf);

}  // namespace dirac
