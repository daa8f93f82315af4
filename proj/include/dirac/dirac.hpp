#pragma once

#include "dirac/calculus.hpp"
#include "dirac/report.hpp"

#include <span>
#include <vector>

namespace dirac {

/// A presentation of L near a base point: n sections on an n-dimensional
/// chart together with the denominators that bound its domain of validity.
class DiracFrame {
 public:
  /// Throws PreconditionError on arity mismatches and DomainError if the
  /// base point meets a denominator. Rank is not enforced here, see
  /// check_rank.
  DiracFrame(Chart chart, std::vector<Section> sections, Point base_point = {},
             std::vector<Polynomial> extra_denominators = {});

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  int size() const { return static_cast<int>(sections_.size()); }
  const std::vector<Section>& sections() const { return sections_; }
  const Section& section(int i) const { return sections_.at(i); }
  const Point& base_point() const { return base_; }
  /// Monic, pairwise distinct; includes every coefficient denominator.
  const std::vector<Polynomial>& denominators() const { return dens_; }

  bool in_domain(std::span<const Rational> p) const;
  /// Throws DomainError naming the point unless in_domain(p).
  void require_domain(std::span<const Rational> p) const;

  /// Row i is section i: [vector components | covector components].
  const ExprMatrix& matrix() const { return matrix_; }
  auto vector_block() const { return matrix_.leftCols(dim()); }
  auto covector_block() const { return matrix_.rightCols(dim()); }
  RationalMatrix matrix_at(std::span<const Rational> p) const;

 private:
  Chart chart_;
  std::vector<Section> sections_;
  Point base_;
  std::vector<Polynomial> dens_;
  ExprMatrix matrix_;
};

/// ⟨e_i, e_j⟩ ≡ 0 for all i ≤ j.
Check check_isotropy(const DiracFrame& f);
/// Rank n of the section matrix at the base point and at every point of pts.
Check check_rank(const DiracFrame& f, std::span<const Point> pts = {});
/// T_ijk = ⟨[e_i, e_j], e_k⟩ ≡ 0. Throws PreconditionError unless the frame
/// is isotropic with rank n at its base point.
Check check_integrability(const DiracFrame& f);

/// isotropy, rank and integrability; integrability is skipped when either
/// of the others fails.
Report dirac_checks(const DiracFrame& f, std::span<const Point> pts = {});

/// Section s evaluated at p: [vector | covector].
RationalVector eval(const Section& s, std::span<const Rational> p);

/// s(p) ∈ L_p, decided by ⟨s, e_i⟩(p) = 0 for all i.
bool membership(const Section& s, const DiracFrame& f, std::span<const Rational> p);

/// Ω_L at a point: basis of pr1(L_p) (rows), the chosen lifts (rows),
/// Ω_ab = α_a(X_b), and the covectors of L_p ∩ ({0} ⊕ T*M) (rows).
struct Presymplectic {
  RationalMatrix basis;
  RationalMatrix lifts;
  RationalMatrix omega;
  RationalMatrix kernel_covectors;
};
Presymplectic presymplectic_at(const DiracFrame& f, std::span<const Rational> p);

DiracFrame graph_of_two_form(const Chart& chart, const TwoForm& omega, Point base_point = {});
DiracFrame graph_of_bivector(const Chart& chart, const Bivector& pi, Point base_point = {});

enum class GraphKind { TwoFormGraph, BivectorGraph, Both, Neither };
const char* to_string(GraphKind k);
GraphKind graph_detect(const DiracFrame& f, std::span<const Rational> p);

/// The bivector P with L_p = graph(P), i.e. P = C⁻¹V at p. Throws
/// PreconditionError when the covector block is singular at p.
RationalMatrix bivector_at(const DiracFrame& f, std::span<const Rational> p);

/// Both-way membership of the generators at p.
bool same_span_at(const DiracFrame& a, const DiracFrame& b, std::span<const Rational> p);

/// "T_123"-style label from 0-based indices.
std::string index_label(const std::string& stem, std::initializer_list<int> idx);

}  // namespace dirac
