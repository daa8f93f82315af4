#pragma once

#include "dirac/dirac.hpp"

namespace dirac {

/// Frame of the shape
///   H_i = (∂x_i + Σ_k X_ik ∂y_k, Σ_k α_ik dx_k),
///   V_j = (Σ_k Z_jk ∂y_k, dy_j + Σ_k β_jk dx_k)
/// on a chart with split (x_1..x_r, y_1..y_s). The constructor does not
/// enforce the shape so that defective frames can be represented and reported;
/// the accessors read the components the shape designates.
class NormalFrame {
 public:
  NormalFrame(Chart chart, std::vector<Section> h, std::vector<Section> v, Point base_point,
              std::vector<Polynomial> denominators = {});
  /// Assembles H and V from the four coefficient blocks.
  static NormalFrame from_blocks(const Chart& chart, const ExprMatrix& X, const ExprMatrix& alpha,
                                 const ExprMatrix& Z, const ExprMatrix& beta, Point base_point = {});

  const Chart& chart() const { return frame_.chart(); }
  int r() const { return static_cast<int>(h_.size()); }
  int s() const { return static_cast<int>(v_.size()); }
  const Section& H(int i) const { return h_.at(i); }
  const Section& V(int j) const { return v_.at(j); }
  const Point& base_point() const { return frame_.base_point(); }
  const std::vector<Polynomial>& denominators() const { return frame_.denominators(); }

  const Expr& X(int i, int k) const;
  const Expr& alpha(int i, int k) const;
  const Expr& Z(int j, int k) const;
  const Expr& beta(int j, int k) const;
  ExprMatrix X_matrix() const;      // r×s
  ExprMatrix alpha_matrix() const;  // r×r
  ExprMatrix Z_matrix() const;      // s×s
  ExprMatrix beta_matrix() const;   // s×r

  /// H_1..H_r, V_1..V_s as a Dirac frame.
  const DiracFrame& frame() const { return frame_; }

 private:
  std::vector<Section> h_;
  std::vector<Section> v_;
  DiracFrame frame_;
};

/// Rank-0 case: L near m0 is the graph of a Poisson bivector, Π = C⁻¹V.
/// Requires pr1(L_m0) = 0 and a frame passing the three checks.
Bivector poisson_branch(const DiracFrame& f);

/// Reduction to normal form in the chart's declared split. Throws
/// NormalFormError carrying the failing step (-1 for input validation).
NormalFrame reduce_to_normal_form(const DiracFrame& f);

/// Shape, vanishing at m0, the skew/transpose identities, the Ω_L
/// components, domain tracking and mutual span with `original` at pts.
Report verify_normal_frame(const NormalFrame& nf, const DiracFrame& original,
                           std::span<const Point> pts);

}  // namespace dirac
