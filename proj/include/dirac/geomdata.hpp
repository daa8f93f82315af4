#pragma once

#include "dirac/normal_form.hpp"

#include <functional>

namespace dirac {

/// (γ, Π^V, 𝔽) on a trivial bundle chart: base coordinates are the chart's
/// split.x, fiber coordinates split.y.
///   gamma(i, k)  = Γ_i^k,  hor(∂x_i) = ∂x_i + Σ_k Γ_i^k ∂y_k   (r×s)
///   pi_v(k, l)   = Π^V(dy_k, dy_l)                            (s×s, skew)
///   f2(i, j)     = 𝔽(∂x_i, ∂x_j)                              (r×r, skew)
/// Conditions (i)-(iv) are not enforced; see verify_conditions.
class GeometricData {
 public:
  GeometricData(Chart chart, ExprMatrix gamma, ExprMatrix pi_v, ExprMatrix f2, Point base_point = {});

  const Chart& chart() const { return chart_; }
  int r() const { return chart_.r(); }
  int s() const { return chart_.s(); }
  const ExprMatrix& gamma() const { return gamma_; }
  const ExprMatrix& pi_v() const { return pi_v_; }
  const ExprMatrix& f2() const { return f2_; }
  const Point& base_point() const { return base_; }

  /// Π^V as a bivector on the whole chart.
  Bivector vertical_bivector() const;

  friend bool operator==(const GeometricData&, const GeometricData&) = default;

 private:
  Chart chart_;
  ExprMatrix gamma_;
  ExprMatrix pi_v_;
  ExprMatrix f2_;
  Point base_;
};

VectorField horizontal_lift(const GeometricData& gd, int i);

/// η_k = dy_k − Σ_i Γ_i^k dx_i; these span Hor°.
OneForm vertical_coframe(const GeometricData& gd, int k);

/// [hor ∂x_i, hor ∂x_j]; always vertical.
VectorField curvature(const GeometricData& gd, int i, int j);

/// ∂_γ on base forms evaluated on coordinate fields (k ≤ 2; the index range
/// of the outputs is the base, 0..r-1).
ExprVector partial_gamma(const GeometricData& gd, const Expr& g);
TwoForm partial_gamma(const GeometricData& gd, const ExprVector& g);
ThreeForm partial_gamma(const GeometricData& gd, const TwoForm& g);

/// The four defining conditions, checked on coordinate fields.
Report verify_conditions(const GeometricData& gd);

GeometricData extract(const NormalFrame& nf);

/// H_i = (hor ∂x_i, Σ_j 𝔽_ij dx_j), V_k = ((Π^V)♯η_k, η_k). Throws
/// PreconditionError naming the failed condition unless verify_conditions
/// passes.
DiracFrame reconstruct(const GeometricData& gd);

/// reduce -> extract -> verify -> reconstruct, then the three checks on the
/// result and mutual span with f at pts. `tamper` (if set) edits the data
/// between extraction and verification.
Report roundtrip_check(const DiracFrame& f, std::span<const Point> pts,
                       const std::function<GeometricData(const GeometricData&)>& tamper = {});

/// At points where det 𝔽 ≠ 0 the reconstructed frame is the graph of a
/// bivector (BivectorGraph or Both) and that bivector is skew.
Report poisson_corollary_check(const GeometricData& gd, std::span<const Point> pts);

}  // namespace dirac
