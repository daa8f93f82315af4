#include "dirac/normal_form.hpp"

#include "dirac/errors.hpp"
#include "dirac/linalg.hpp"

namespace dirac {

namespace {

std::vector<Section> concat(const std::vector<Section>& a, const std::vector<Section>& b) {
  std::vector<Section> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Section row_section(const ExprMatrix& m, Eigen::Index row, int n) {
  return {VectorField{m.row(row).head(n).transpose()}, OneForm{m.row(row).tail(n).transpose()}};
}

ExprMatrix to_expr(const RationalMatrix& a) {
  return a.unaryExpr([](const Rational& q) { return Expr(q); });
}

ExprMatrix columns(const ExprMatrix& m, Eigen::Index offset, const std::vector<int>& cols) {
  ExprMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(k) = m.col(offset + cols[k]);
  return out;
}

void merge(std::vector<Polynomial>& into, const std::vector<Polynomial>& from) {
  into.insert(into.end(), from.begin(), from.end());
}

Inverse invert_at(const ExprMatrix& m, const Point& p, int step, const char* what) {
  try {
    return mat_inverse(m, p);
  } catch (const SingularMatrix& e) {
    throw NormalFormError(std::string(what) + " is singular: " + e.what(), step);
  } catch (const SingularAtPoint& e) {
    throw NormalFormError(std::string(what) + " is singular at the base point", step);
  } catch (const DomainError& e) {
    throw NormalFormError(std::string(what) + ": " + e.what(), step);
  }
}

// Constant row operations A with A·Vx = [I_r; 0]; partial pivoting on
// |value|, ties to the smallest row.
RationalMatrix preprocess(const RationalMatrix& vx) {
  const Eigen::Index n = vx.rows();
  const Eigen::Index r = vx.cols();
  RationalMatrix a = vx;
  RationalMatrix t = RationalMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < r; ++k) {
    Eigen::Index pivot = -1;
    Rational best = 0;
    for (Eigen::Index i = k; i < n; ++i) {
      const Rational v = abs(a(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (pivot < 0)
      throw NormalFormError("vector parts at the base point span fewer than r = " +
                                std::to_string(r) + " directions",
                            0);
    a.row(pivot).swap(a.row(k));
    t.row(pivot).swap(t.row(k));
    const Rational inv = Rational(1) / a(k, k);
    a.row(k) *= inv;
    t.row(k) *= inv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = a(i, k);
      a.row(i) -= f * a.row(k);
      t.row(i) -= f * t.row(k);
    }
  }
  return t;
}

bool vanishes_on_leaf(const Expr& e, const Chart& chart) {
  const auto& sp = chart.split();
  std::vector<std::optional<Rational>> values(chart.dim());
  std::vector<int> keep(chart.dim(), -1);
  for (int y : sp.y) values[y] = Rational(0);
  for (int x : sp.x) keep[x] = x;
  return restrict(e, values, keep).is_zero();
}

}  // namespace

NormalFrame::NormalFrame(Chart chart, std::vector<Section> h, std::vector<Section> v,
                         Point base_point, std::vector<Polynomial> denominators)
    : h_(std::move(h)),
      v_(std::move(v)),
      frame_(chart, concat(h_, v_), std::move(base_point), std::move(denominators)) {
  if (!chart.has_split()) throw PreconditionError("normal frame needs a chart with a split");
  if (r() != chart.r() || s() != chart.s())
    throw PreconditionError("normal frame section counts do not match the split");
}

NormalFrame NormalFrame::from_blocks(const Chart& chart, const ExprMatrix& X,
                                     const ExprMatrix& alpha, const ExprMatrix& Z,
                                     const ExprMatrix& beta, Point base_point) {
  const int n = chart.dim();
  const auto& sp = chart.split();
  const int r = chart.r();
  const int s = chart.s();
  if (X.rows() != r || X.cols() != s || alpha.rows() != r || alpha.cols() != r ||
      Z.rows() != s || Z.cols() != s || beta.rows() != s || beta.cols() != r)
    throw PreconditionError("normal frame blocks have the wrong sizes");
  std::vector<Section> h;
  std::vector<Section> v;
  for (int i = 0; i < r; ++i) {
    Section sec = Section::zero(n);
    sec.v.c(sp.x[i]) = Expr(1);
    for (int k = 0; k < s; ++k) sec.v.c(sp.y[k]) = X(i, k);
    for (int k = 0; k < r; ++k) sec.w.c(sp.x[k]) = alpha(i, k);
    h.push_back(std::move(sec));
  }
  for (int j = 0; j < s; ++j) {
    Section sec = Section::zero(n);
    for (int k = 0; k < s; ++k) sec.v.c(sp.y[k]) = Z(j, k);
    sec.w.c(sp.y[j]) = Expr(1);
    for (int k = 0; k < r; ++k) sec.w.c(sp.x[k]) = beta(j, k);
    v.push_back(std::move(sec));
  }
  return NormalFrame(chart, std::move(h), std::move(v), std::move(base_point));
}

const Expr& NormalFrame::X(int i, int k) const { return h_.at(i).v.c(chart().split().y.at(k)); }
const Expr& NormalFrame::alpha(int i, int k) const {
  return h_.at(i).w.c(chart().split().x.at(k));
}
const Expr& NormalFrame::Z(int j, int k) const { return v_.at(j).v.c(chart().split().y.at(k)); }
const Expr& NormalFrame::beta(int j, int k) const {
  return v_.at(j).w.c(chart().split().x.at(k));
}

ExprMatrix NormalFrame::X_matrix() const {
  ExprMatrix m(r(), s());
  for (int i = 0; i < r(); ++i)
    for (int k = 0; k < s(); ++k) m(i, k) = X(i, k);
  return m;
}

ExprMatrix NormalFrame::alpha_matrix() const {
  ExprMatrix m(r(), r());
  for (int i = 0; i < r(); ++i)
    for (int k = 0; k < r(); ++k) m(i, k) = alpha(i, k);
  return m;
}

ExprMatrix NormalFrame::Z_matrix() const {
  ExprMatrix m(s(), s());
  for (int j = 0; j < s(); ++j)
    for (int k = 0; k < s(); ++k) m(j, k) = Z(j, k);
  return m;
}

ExprMatrix NormalFrame::beta_matrix() const {
  ExprMatrix m(s(), r());
  for (int j = 0; j < s(); ++j)
    for (int k = 0; k < r(); ++k) m(j, k) = beta(j, k);
  return m;
}

Bivector poisson_branch(const DiracFrame& f) {
  const int n = f.dim();
  const Point& m0 = f.base_point();
  if (check_isotropy(f).failed()) throw PreconditionError("frame is not isotropic");
  Inverse inv;
  try {
    inv = mat_inverse(ExprMatrix(f.covector_block()), m0);
  } catch (const SingularMatrix&) {
    throw PreconditionError("covector block is singular; the leaf is not a point");
  } catch (const SingularAtPoint&) {
    throw PreconditionError("covector block is singular at the base point; the leaf is not a point");
  }
  if (!(f.matrix_at(m0).leftCols(n).array() == Rational(0)).all())
    throw PreconditionError("vector parts do not vanish at the base point; the leaf is not a point");
  if (check_integrability(f).failed()) throw PreconditionError("frame is not integrable");
  return Bivector::from_matrix(inv.value * ExprMatrix(f.vector_block()));
}

NormalFrame reduce_to_normal_form(const DiracFrame& f) {
  const Chart& chart = f.chart();
  if (!chart.has_split()) throw NormalFormError("chart has no x/y split", -1);
  const Point& m0 = f.base_point();
  for (const auto& c : m0)
    if (c != 0) throw NormalFormError("base point must have all coordinates 0", -1);
  if (check_isotropy(f).failed()) throw NormalFormError("frame is not isotropic", -1);
  if (check_rank(f).failed()) throw NormalFormError("frame does not have rank n at the base point", -1);
  if (check_integrability(f).failed()) throw NormalFormError("frame is not integrable", -1);

  const int n = chart.dim();
  const auto& sp = chart.split();
  const int r = chart.r();
  const int s = chart.s();
  std::vector<Polynomial> dens = f.denominators();

  std::vector<Section> h;
  std::vector<Section> v;
  if (r == 0) {
    Bivector pi;
    try {
      pi = poisson_branch(f);
    } catch (const PreconditionError& e) {
      throw NormalFormError(e.what(), 0);
    }
    for (int j = 0; j < s; ++j) {
      const OneForm dy = OneForm::coordinate(n, sp.y[j]);
      v.push_back({sharp(pi, dy), dy});
    }
  } else {
    // (0) constant recombination at m0
    const RationalMatrix m_at = f.matrix_at(m0);
    for (int y : sp.y)
      for (int i = 0; i < n; ++i)
        if (m_at(i, y) != 0)
          throw NormalFormError("vector parts at the base point leave the span of the x directions",
                                0);
    RationalMatrix vx(n, r);
    for (int k = 0; k < r; ++k) vx.col(k) = m_at.col(sp.x[k]);
    const ExprMatrix m = to_expr(preprocess(vx)) * f.matrix();
    ExprMatrix S = m.topRows(r);
    ExprMatrix T = m.bottomRows(s);

    // (1) normalize the x-block of the first r
    const Inverse fi = invert_at(columns(S, 0, sp.x), m0, 1, "x-block of the leading sections");
    merge(dens, fi.denominators);
    S = fi.value * S;
    // (2) clear the x-block of the last s
    T -= columns(T, 0, sp.x) * S;
    // (3) normalize the dy-block of the last s
    const Inverse gi = invert_at(columns(T, n, sp.y), m0, 3, "dy-block of the trailing sections");
    merge(dens, gi.denominators);
    T = gi.value * T;
    // (4) clear the dy-block of the first r
    S -= columns(S, n, sp.y) * T;

    for (int i = 0; i < r; ++i) h.push_back(row_section(S, i, n));
    for (int j = 0; j < s; ++j) v.push_back(row_section(T, j, n));
  }

  NormalFrame nf(chart, std::move(h), std::move(v), m0, std::move(dens));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < s; ++k)
      if (!vanishes_on_leaf(nf.X(i, k), chart))
        throw NormalFormError("{y = 0} is not the leaf: X_" + std::to_string(i + 1) +
                                  std::to_string(k + 1) + " = " + to_string(nf.X(i, k), chart) +
                                  " does not vanish on it",
                              -1);
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < s; ++k)
      if (!vanishes_on_leaf(nf.Z(j, k), chart))
        throw NormalFormError("{y = 0} is not the leaf: Z_" + std::to_string(j + 1) +
                                  std::to_string(k + 1) + " = " + to_string(nf.Z(j, k), chart) +
                                  " does not vanish on it",
                              -1);
  return nf;
}

Report verify_normal_frame(const NormalFrame& nf, const DiracFrame& original,
                           std::span<const Point> pts) {
  const Chart& chart = nf.chart();
  const auto& sp = chart.split();
  const int r = nf.r();
  const int s = nf.s();
  auto str = [&](const Expr& e) { return to_string(e, chart); };
  auto expect = [&](Check& c, const Expr& got, const Expr& want, const std::string& label,
                    std::vector<int> idx) {
    if (!(got == want)) c.fail({label, str(got - want), std::nullopt, std::move(idx)});
  };
  Report rep;

  Check shape{"shape", Status::Pass, "", {}};
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < r; ++k)
      expect(shape, nf.H(i).v.c(sp.x[k]), Expr(i == k ? 1 : 0),
             index_label("H.dx", {i, k}) + " - delta", {i + 1, k + 1});
    for (int k = 0; k < s; ++k)
      expect(shape, nf.H(i).w.c(sp.y[k]), Expr(0), index_label("H.dy", {i, k}), {i + 1, k + 1});
  }
  for (int j = 0; j < s; ++j) {
    for (int k = 0; k < r; ++k)
      expect(shape, nf.V(j).v.c(sp.x[k]), Expr(0), index_label("V.dx", {j, k}), {j + 1, k + 1});
    for (int k = 0; k < s; ++k)
      expect(shape, nf.V(j).w.c(sp.y[k]), Expr(j == k ? 1 : 0),
             index_label("V.dy", {j, k}) + " - delta", {j + 1, k + 1});
  }
  rep.add(std::move(shape));

  Check base{"base_vanishing", Status::Pass, "", {}};
  const Point& m0 = nf.base_point();
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < s; ++k)
      if (eval(nf.X(i, k), m0) != 0)
        base.fail({index_label("X", {i, k}), str(nf.X(i, k)), m0, {i + 1, k + 1}});
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < s; ++k)
      if (eval(nf.Z(j, k), m0) != 0)
        base.fail({index_label("Z", {j, k}), str(nf.Z(j, k)), m0, {j + 1, k + 1}});
  rep.add(std::move(base));

  Check xb{"x_beta_transpose", Status::Pass, "X_ij = -beta_ji", {}};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < s; ++j)
      expect(xb, nf.X(i, j), -nf.beta(j, i), index_label("X+beta^T", {i, j}), {i + 1, j + 1});
  rep.add(std::move(xb));

  Check zs{"z_skew", Status::Pass, "", {}};
  for (int i = 0; i < s; ++i)
    for (int j = i; j < s; ++j)
      expect(zs, nf.Z(i, j), -nf.Z(j, i), index_label("Z+Z^T", {i, j}), {i + 1, j + 1});
  rep.add(std::move(zs));

  Check as{"alpha_skew", Status::Pass, "", {}};
  for (int i = 0; i < r; ++i)
    for (int j = i; j < r; ++j)
      expect(as, nf.alpha(i, j), -nf.alpha(j, i), index_label("alpha+alpha^T", {i, j}),
             {i + 1, j + 1});
  rep.add(std::move(as));

  // Ω_L(X, Y) = α(Y) on the frame's own lifts.
  Check lf{"leaf_form", Status::Pass, "", {}};
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j)
      expect(lf, contract(nf.H(i).w, nf.H(j).v), nf.alpha(i, j), index_label("Omega(X,X)", {i, j}),
             {i + 1, j + 1});
    for (int j = 0; j < s; ++j) {
      expect(lf, contract(nf.H(i).w, nf.V(j).v), Expr(0), index_label("Omega(X,Z)", {i, j}),
             {i + 1, j + 1});
      expect(lf, contract(nf.V(j).w, nf.H(i).v), Expr(0), index_label("Omega(Z,X)", {j, i}),
             {j + 1, i + 1});
    }
  }
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      expect(lf, contract(nf.V(i).w, nf.V(j).v), nf.Z(j, i), index_label("Omega(Z,Z)", {i, j}),
             {i + 1, j + 1});
  rep.add(std::move(lf));

  Check dom{"domain", Status::Pass, "", {}};
  for (const auto& d : nf.denominators())
    if (d.eval(m0) == 0) dom.fail({"denominator", d.to_string(chart.names()), m0, {}});
  dom.detail = std::to_string(nf.denominators().size()) + " tracked denominators";
  rep.add(std::move(dom));

  Check span{"span", Status::Pass, "", {}};
  int used = 0;
  for (const auto& p : pts) {
    if (!nf.frame().in_domain(p) || !original.in_domain(p)) {
      rep.notes.push_back("span: skipped " + to_string(p) + " (outside the domain)");
      continue;
    }
    ++used;
    if (!same_span_at(nf.frame(), original, p)) span.fail({"span differs", "", p, {}});
  }
  if (used == 0) span.status = Status::Skipped;
  span.detail = "mutual membership at " + std::to_string(used) + " points";
  rep.add(std::move(span));
  return rep;
}

}  // namespace dirac
