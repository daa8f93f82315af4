#include "dirac/dirac.hpp"

#include "dirac/errors.hpp"
#include "dirac/linalg.hpp"

#include <algorithm>

namespace dirac {

namespace {

void add_denominator(std::vector<Polynomial>& dens, const Polynomial& d) {
  if (d.is_constant()) return;
  const Polynomial m = d.monic();
  if (std::find(dens.begin(), dens.end(), m) == dens.end()) dens.push_back(m);
}

Rational pair_at(const RationalVector& a, const RationalVector& b, int n) {
  Rational s = 0;
  for (int i = 0; i < n; ++i) s += a(n + i) * b(i) + b(n + i) * a(i);
  return s / 2;
}

}  // namespace

std::string index_label(const std::string& stem, std::initializer_list<int> idx) {
  bool small = true;
  for (int i : idx) small = small && i < 9;
  std::string out = stem + "_";
  bool first = true;
  for (int i : idx) {
    if (!small && !first) out += ",";
    out += std::to_string(i + 1);
    first = false;
  }
  return out;
}

DiracFrame::DiracFrame(Chart chart, std::vector<Section> sections, Point base_point,
                       std::vector<Polynomial> extra_denominators)
    : chart_(std::move(chart)), sections_(std::move(sections)), base_(std::move(base_point)) {
  const int n = chart_.dim();
  if (base_.empty()) base_.assign(n, Rational(0));
  if (static_cast<int>(base_.size()) != n)
    throw PreconditionError("base point arity " + std::to_string(base_.size()) +
                            " does not match chart dimension " + std::to_string(n));
  if (static_cast<int>(sections_.size()) != n)
    throw PreconditionError("frame has " + std::to_string(sections_.size()) +
                            " sections on a chart of dimension " + std::to_string(n));
  matrix_.resize(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const Section& s = sections_[i];
    if (s.v.dim() != n || s.w.dim() != n)
      throw PreconditionError("section " + std::to_string(i + 1) + " has the wrong arity");
    matrix_.row(i).head(n) = s.v.c.transpose();
    matrix_.row(i).tail(n) = s.w.c.transpose();
  }
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i)
    for (Eigen::Index j = 0; j < matrix_.cols(); ++j) add_denominator(dens_, matrix_(i, j).den());
  for (const auto& d : extra_denominators) add_denominator(dens_, d);
  require_domain(base_);
}

bool DiracFrame::in_domain(std::span<const Rational> p) const {
  for (const auto& d : dens_)
    if (d.eval(p) == 0) return false;
  return true;
}

void DiracFrame::require_domain(std::span<const Rational> p) const {
  if (static_cast<int>(p.size()) != dim())
    throw PreconditionError("point arity does not match chart dimension");
  if (!in_domain(p))
    throw DomainError("point " + to_string(Point(p.begin(), p.end())) +
                      " lies outside the domain of the frame");
}

RationalMatrix DiracFrame::matrix_at(std::span<const Rational> p) const {
  require_domain(p);
  return eval(matrix_, p);
}

RationalVector eval(const Section& s, std::span<const Rational> p) {
  const int n = s.dim();
  RationalVector out(2 * n);
  for (int i = 0; i < n; ++i) {
    out(i) = eval(s.v.c(i), p);
    out(n + i) = eval(s.w.c(i), p);
  }
  return out;
}

Check check_isotropy(const DiracFrame& f) {
  Check c{"isotropy", Status::Pass, "", {}};
  const auto& s = f.sections();
  for (int i = 0; i < f.size(); ++i)
    for (int j = i; j < f.size(); ++j) {
      const Expr v = pairing(s[i], s[j]);
      if (!v.is_zero())
        c.fail({"<e_" + std::to_string(i + 1) + ",e_" + std::to_string(j + 1) + ">",
                to_string(v, f.chart()), std::nullopt, {i + 1, j + 1}});
    }
  if (c.failed()) c.detail = "pairing does not vanish identically";
  return c;
}

Check check_rank(const DiracFrame& f, std::span<const Point> pts) {
  Check c{"rank", Status::Pass, "", {}};
  const int n = f.dim();
  auto probe = [&](const Point& p) {
    const int rank = exact_rank(f.matrix_at(p));
    if (rank != n) c.fail({"rank " + std::to_string(rank), "", p, {}});
  };
  probe(f.base_point());
  for (const auto& p : pts) probe(p);
  c.detail = c.failed() ? "section matrix rank below " + std::to_string(n)
                        : "rank " + std::to_string(n) + " at " + std::to_string(pts.size() + 1) +
                              " points";
  return c;
}

Check check_integrability(const DiracFrame& f) {
  if (check_isotropy(f).failed())
    throw PreconditionError("integrability requires an isotropic frame");
  if (exact_rank(f.matrix_at(f.base_point())) != f.dim())
    throw PreconditionError("integrability requires rank n at the base point");
  Check c{"integrability", Status::Pass, "", {}};
  const auto& s = f.sections();
  const int m = f.size();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Section b = courant_bracket(s[i], s[j]);
      if (b.is_zero()) continue;
      for (int k = 0; k < m; ++k) {
        const Expr t = pairing(b, s[k]);
        if (!t.is_zero())
          c.fail({index_label("T", {i, j, k}), to_string(t, f.chart()), std::nullopt,
                  {i + 1, j + 1, k + 1}});
      }
    }
  if (c.failed()) c.detail = "Courant bracket leaves the frame";
  return c;
}

Report dirac_checks(const DiracFrame& f, std::span<const Point> pts) {
  Report r;
  Check iso = check_isotropy(f);
  Check rank = check_rank(f, pts);
  const bool ok = !iso.failed() && !rank.failed();
  r.add(std::move(iso));
  r.add(std::move(rank));
  if (ok) {
    r.add(check_integrability(f));
  } else {
    r.add({"integrability", Status::Skipped, "requires isotropy and rank", {}});
  }
  return r;
}

bool membership(const Section& s, const DiracFrame& f, std::span<const Rational> p) {
  const RationalMatrix m = f.matrix_at(p);
  if (exact_rank(m) != f.dim())
    throw PreconditionError("membership requires rank n at " + to_string(Point(p.begin(), p.end())));
  const RationalVector v = eval(s, p);
  const int n = f.dim();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    if (pair_at(v, m.row(i).transpose(), n) != 0) return false;
  return true;
}

bool same_span_at(const DiracFrame& a, const DiracFrame& b, std::span<const Rational> p) {
  const int n = a.dim();
  if (b.dim() != n) return false;
  const RationalMatrix ma = a.matrix_at(p);
  const RationalMatrix mb = b.matrix_at(p);
  if (exact_rank(ma) != n || exact_rank(mb) != n) return false;
  for (Eigen::Index i = 0; i < ma.rows(); ++i)
    for (Eigen::Index j = 0; j < mb.rows(); ++j)
      if (pair_at(ma.row(i).transpose(), mb.row(j).transpose(), n) != 0) return false;
  return true;
}

Presymplectic presymplectic_at(const DiracFrame& f, std::span<const Rational> p) {
  const int n = f.dim();
  const RationalMatrix m = f.matrix_at(p);
  const auto ech = row_echelon(m.leftCols(n));
  const RationalMatrix t = ech.transform * m;
  const int d = ech.rank();
  Presymplectic out;
  out.basis = t.topLeftCorner(d, n);
  out.lifts = t.topRightCorner(d, n);
  out.omega = out.lifts * out.basis.transpose();
  out.kernel_covectors = t.bottomRightCorner(t.rows() - d, n);
  return out;
}

DiracFrame graph_of_two_form(const Chart& chart, const TwoForm& omega, Point base_point) {
  const int n = chart.dim();
  if (omega.dim() != n) throw PreconditionError("2-form dimension does not match chart");
  std::vector<Section> s;
  for (int c = 0; c < n; ++c) {
    const VectorField x = VectorField::coordinate(n, c);
    s.push_back({x, interior(x, omega)});
  }
  return DiracFrame(chart, std::move(s), std::move(base_point));
}

DiracFrame graph_of_bivector(const Chart& chart, const Bivector& pi, Point base_point) {
  const int n = chart.dim();
  if (pi.dim() != n) throw PreconditionError("bivector dimension does not match chart");
  std::vector<Section> s;
  for (int c = 0; c < n; ++c) {
    const OneForm a = OneForm::coordinate(n, c);
    s.push_back({sharp(pi, a), a});
  }
  return DiracFrame(chart, std::move(s), std::move(base_point));
}

const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::TwoFormGraph: return "TwoFormGraph";
    case GraphKind::BivectorGraph: return "BivectorGraph";
    case GraphKind::Both: return "Both";
    case GraphKind::Neither: return "Neither";
  }
  return "?";
}

GraphKind graph_detect(const DiracFrame& f, std::span<const Rational> p) {
  const int n = f.dim();
  const RationalMatrix m = f.matrix_at(p);
  const bool bivector = exact_rank(m.rightCols(n)) == n;
  const bool two_form = exact_rank(m.leftCols(n)) == n;
  if (bivector && two_form) return GraphKind::Both;
  if (bivector) return GraphKind::BivectorGraph;
  if (two_form) return GraphKind::TwoFormGraph;
  return GraphKind::Neither;
}

RationalMatrix bivector_at(const DiracFrame& f, std::span<const Rational> p) {
  const int n = f.dim();
  const RationalMatrix m = f.matrix_at(p);
  const auto ech = row_echelon(m.rightCols(n));
  if (ech.rank() != n) throw PreconditionError("covector block is singular at the point");
  return ech.transform * m.leftCols(n);
}

}  // namespace dirac
