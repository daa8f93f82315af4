#include "dirac/geomdata.hpp"

#include "dirac/errors.hpp"
#include "dirac/linalg.hpp"

#include <map>

namespace dirac {

namespace {

bool skew(const ExprMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (!(m(i, j) == -m(j, i))) return false;
  return true;
}

std::vector<Point> usable(std::span<const Point> pts, const DiracFrame& a, const DiracFrame* b,
                          std::vector<std::string>& notes) {
  std::vector<Point> out;
  for (const auto& p : pts) {
    if (a.in_domain(p) && (!b || b->in_domain(p))) {
      out.push_back(p);
    } else {
      notes.push_back("skipped " + to_string(p) + " (outside the domain)");
    }
  }
  return out;
}

}  // namespace

GeometricData::GeometricData(Chart chart, ExprMatrix gamma, ExprMatrix pi_v, ExprMatrix f2,
                             Point base_point)
    : chart_(std::move(chart)),
      gamma_(std::move(gamma)),
      pi_v_(std::move(pi_v)),
      f2_(std::move(f2)),
      base_(std::move(base_point)) {
  if (!chart_.has_split()) throw PreconditionError("geometric data needs a chart with a split");
  const int r = chart_.r();
  const int s = chart_.s();
  if (base_.empty()) base_.assign(chart_.dim(), Rational(0));
  if (static_cast<int>(base_.size()) != chart_.dim())
    throw PreconditionError("base point arity does not match the chart");
  if (gamma_.rows() != r || gamma_.cols() != s)
    throw PreconditionError("connection must be r x s");
  if (pi_v_.rows() != s || pi_v_.cols() != s)
    throw PreconditionError("vertical bivector must be s x s");
  if (f2_.rows() != r || f2_.cols() != r) throw PreconditionError("horizontal form must be r x r");
  if (!skew(pi_v_)) throw PreconditionError("vertical bivector is not skew-symmetric");
  if (!skew(f2_)) throw PreconditionError("horizontal form is not skew-symmetric");
}

Bivector GeometricData::vertical_bivector() const {
  const auto& y = chart_.split().y;
  Bivector pi(chart_.dim());
  for (int k = 0; k < s(); ++k)
    for (int l = k + 1; l < s(); ++l) pi.set(y[k], y[l], pi_v_(k, l));
  return pi;
}

VectorField horizontal_lift(const GeometricData& gd, int i) {
  const auto& sp = gd.chart().split();
  VectorField x = VectorField::coordinate(gd.chart().dim(), sp.x.at(i));
  for (int k = 0; k < gd.s(); ++k) x.c(sp.y[k]) = gd.gamma()(i, k);
  return x;
}

OneForm vertical_coframe(const GeometricData& gd, int k) {
  const auto& sp = gd.chart().split();
  OneForm eta = OneForm::coordinate(gd.chart().dim(), sp.y.at(k));
  for (int i = 0; i < gd.r(); ++i) eta.c(sp.x[i]) = -gd.gamma()(i, k);
  return eta;
}

VectorField curvature(const GeometricData& gd, int i, int j) {
  if (i == j) throw PreconditionError("curvature needs two distinct base directions");
  const VectorField c = lie_bracket(horizontal_lift(gd, i), horizontal_lift(gd, j));
  for (int x : gd.chart().split().x)
    if (!c.c(x).is_zero()) throw std::logic_error("curvature has a horizontal component");
  return c;
}

ExprVector partial_gamma(const GeometricData& gd, const Expr& g) {
  ExprVector out(gd.r());
  for (int i = 0; i < gd.r(); ++i) out(i) = derivative(horizontal_lift(gd, i), g);
  return out;
}

TwoForm partial_gamma(const GeometricData& gd, const ExprVector& g) {
  const int r = gd.r();
  if (g.size() != r) throw PreconditionError("base 1-form must have r components");
  TwoForm out(r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      out.set(i, j, derivative(horizontal_lift(gd, i), g(j)) - derivative(horizontal_lift(gd, j), g(i)));
  return out;
}

ThreeForm partial_gamma(const GeometricData& gd, const TwoForm& g) {
  const int r = gd.r();
  if (g.dim() != r) throw PreconditionError("base 2-form must have dimension r");
  std::vector<VectorField> X;
  for (int i = 0; i < r; ++i) X.push_back(horizontal_lift(gd, i));
  ThreeForm out(r);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = j + 1; k < r; ++k)
        out.set(i, j, k,
                derivative(X[i], g(j, k)) - derivative(X[j], g(i, k)) + derivative(X[k], g(i, j)));
  return out;
}

Report verify_conditions(const GeometricData& gd) {
  const Chart& chart = gd.chart();
  const auto& sp = chart.split();
  const int r = gd.r();
  const int s = gd.s();
  const Bivector pv = gd.vertical_bivector();
  auto str = [&](const Expr& e) { return to_string(e, chart); };
  Report rep;

  Check c1{"vertical_jacobi", Status::Pass, "Jacobiator of the vertical bivector", {}};
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b)
      for (int c = b + 1; c < s; ++c) {
        const Expr j = jacobiator(pv, sp.y[a], sp.y[b], sp.y[c]);
        if (!j.is_zero()) c1.fail({index_label("Jac", {a, b, c}), str(j), std::nullopt, {a + 1, b + 1, c + 1}});
      }
  rep.add(std::move(c1));

  Check c2{"lift_invariance", Status::Pass, "[hor d/dx_i, PiV] = 0", {}};
  for (int i = 0; i < r; ++i) {
    const Bivector l = schouten_xv(horizontal_lift(gd, i), pv);
    for (int a = 0; a < l.dim(); ++a)
      for (int b = a + 1; b < l.dim(); ++b)
        if (!l(a, b).is_zero())
          c2.fail({"[X_" + std::to_string(i + 1) + ",PiV](d" + chart.name(a) + ",d" + chart.name(b) + ")",
                   str(l(a, b)), std::nullopt, {i + 1}});
  }
  rep.add(std::move(c2));

  Check c3{"horizontal_closedness", Status::Pass, "partial_gamma F = 0", {}};
  const ThreeForm dF = partial_gamma(gd, TwoForm::from_matrix(gd.f2()));
  for (const auto& [idx, v] : dF.components())
    c3.fail({index_label("dF", {idx[0], idx[1], idx[2]}), str(v), std::nullopt,
             {idx[0] + 1, idx[1] + 1, idx[2] + 1}});
  rep.add(std::move(c3));

  Check c4{"curvature_identity", Status::Pass, "Curv(d/dx_i, d/dx_j) = PiV#(dF_ij)", {}};
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const VectorField diff =
          curvature(gd, i, j) - sharp(pv, exterior_d(gd.f2()(i, j), chart.dim()));
      for (int k = 0; k < chart.dim(); ++k)
        if (!diff.c(k).is_zero())
          c4.fail({index_label("Curv-PiV#dF", {i, j}) + "[" + chart.name(k) + "]", str(diff.c(k)),
                   std::nullopt, {i + 1, j + 1}});
    }
  rep.add(std::move(c4));
  return rep;
}

GeometricData extract(const NormalFrame& nf) {
  return GeometricData(nf.chart(), nf.X_matrix(), nf.Z_matrix(), nf.alpha_matrix(), nf.base_point());
}

DiracFrame reconstruct(const GeometricData& gd) {
  const Report cond = verify_conditions(gd);
  for (const auto& c : cond.checks)
    if (c.failed()) throw PreconditionError("geometric data fails " + c.name);
  const Chart& chart = gd.chart();
  const int n = chart.dim();
  const auto& sp = chart.split();
  const Bivector pv = gd.vertical_bivector();
  std::vector<Section> s;
  for (int i = 0; i < gd.r(); ++i) {
    OneForm a = OneForm::zero(n);
    for (int j = 0; j < gd.r(); ++j) a.c(sp.x[j]) = gd.f2()(i, j);
    s.push_back({horizontal_lift(gd, i), a});
  }
  for (int k = 0; k < gd.s(); ++k) {
    const OneForm eta = vertical_coframe(gd, k);
    s.push_back({sharp(pv, eta), eta});
  }
  return DiracFrame(chart, std::move(s), gd.base_point());
}

Report roundtrip_check(const DiracFrame& f, std::span<const Point> pts,
                       const std::function<GeometricData(const GeometricData&)>& tamper) {
  Report rep;
  const NormalFrame nf = reduce_to_normal_form(f);
  GeometricData gd = extract(nf);
  if (tamper) gd = tamper(gd);
  rep.append(verify_conditions(gd));
  if (!rep.passed()) {
    rep.add({"reconstruct", Status::Skipped, "conditions fail; reconstruction refused", {}});
    return rep;
  }
  const DiracFrame back = reconstruct(gd);
  const std::vector<Point> good = usable(pts, back, &f, rep.notes);
  Report dc = dirac_checks(back, good);
  for (auto& c : dc.checks) c.name = "reconstructed_" + c.name;
  rep.append(dc);

  Check span{"span", Status::Pass, "", {}};
  for (const auto& p : good)
    if (!same_span_at(back, f, p)) span.fail({"span differs", "", p, {}});
  if (good.empty()) span.status = Status::Skipped;
  span.detail = "mutual membership at " + std::to_string(good.size()) + " points";
  rep.add(std::move(span));
  return rep;
}

Report poisson_corollary_check(const GeometricData& gd, std::span<const Point> pts) {
  Report rep;
  const DiracFrame f = reconstruct(gd);
  const std::vector<Point> good = usable(pts, f, nullptr, rep.notes);
  Check c{"poisson_corollary", Status::Pass, "", {}};
  std::map<std::string, int> kinds;
  int degenerate = 0;
  int tested = 0;
  for (const auto& p : good) {
    if (exact_rank(eval(gd.f2(), p)) != gd.r()) {
      ++degenerate;
      continue;
    }
    ++tested;
    const GraphKind k = graph_detect(f, p);
    ++kinds[to_string(k)];
    if (k != GraphKind::BivectorGraph && k != GraphKind::Both) {
      c.fail({to_string(k), "", p, {}});
      continue;
    }
    const RationalMatrix P = bivector_at(f, p);
    if (!((P + P.transpose()).array() == Rational(0)).all()) c.fail({"bivector not skew", "", p, {}});
  }
  std::string hist;
  for (const auto& [k, n] : kinds) hist += (hist.empty() ? "" : ", ") + k + ":" + std::to_string(n);
  c.detail = std::to_string(tested) + " points tested {" + hist + "}, " + std::to_string(degenerate) +
             " skipped with det F = 0";
  if (tested == 0) c.status = Status::Skipped;
  rep.add(std::move(c));
  return rep;
}

}  // namespace dirac
