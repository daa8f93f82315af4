#include "support.hpp"

#include "dirac/geomdata.hpp"

using namespace dirac;
using namespace dirac::test;

namespace {

const Chart bundle({"x1", "x2", "y1", "y2"}, {"x1", "x2"}, {"y1", "y2"});
const Point origin(4, Rational(0));

ExprMatrix skew2(const Expr& e) {
  ExprMatrix m = ExprMatrix::Zero(2, 2);
  m(0, 1) = e;
  m(1, 0) = -e;
  return m;
}

/// Γ_1 = (c·x2·y1, 0), Γ_2 = 0, Π^V = y1 ∂y1∧∂y2, 𝔽_12 = a + c·y2 + h(x1, x2).
/// Curvature −c·y1 ∂y1 equals (Π^V)♯ d𝔽_12 for every choice of a, c, h.
GeometricData curved_family(Random& rnd) {
  const Rational a = rnd.rational();
  const Rational c = rnd.rational();
  Polynomial h = rnd.polynomial(2, 3, 2);
  ExprMatrix gamma = ExprMatrix::Zero(2, 2);
  gamma(0, 0) = Expr(c) * E("x2*y1", bundle);
  const Expr f12 = Expr(a) + Expr(c) * E("y2", bundle) + Expr(h);
  return GeometricData(bundle, gamma, skew2(E("y1", bundle)), skew2(f12), origin);
}

GeometricData flat(const ExprMatrix& pv, const ExprMatrix& f2) {
  return GeometricData(bundle, ExprMatrix::Zero(2, 2), pv, f2, origin);
}

OneForm horizontal_form(const GeometricData& gd, int v) {
  OneForm a = OneForm::zero(gd.chart().dim());
  for (int j = 0; j < gd.r(); ++j) a.c(gd.chart().split().x[j]) = gd.f2()(v, j);
  return a;
}

}  // namespace

TEST(HorizontalLift, Examples) {
  const GeometricData z = flat(ExprMatrix::Zero(2, 2), ExprMatrix::Zero(2, 2));
  EXPECT_EQ(horizontal_lift(z, 1), VectorField::coordinate(4, 1));
  ExprMatrix gamma = ExprMatrix::Zero(2, 2);
  gamma(0, 0) = E("y1", bundle);
  const GeometricData g(bundle, gamma, ExprMatrix::Zero(2, 2), ExprMatrix::Zero(2, 2), origin);
  EXPECT_EQ(horizontal_lift(g, 0), VectorField::coordinate(4, 0) + E("y1", bundle) * VectorField::coordinate(4, 2));
  Random rnd(71);
  for (int t = 0; t < 5; ++t) {
    const GeometricData gd = curved_family(rnd);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) EXPECT_TRUE(contract(vertical_coframe(gd, k), horizontal_lift(gd, i)).is_zero());
  }
}

TEST(Curvature, Examples) {
  const GeometricData z = flat(ExprMatrix::Zero(2, 2), ExprMatrix::Zero(2, 2));
  EXPECT_TRUE(curvature(z, 0, 1).is_zero());
  ExprMatrix gamma(2, 2);
  gamma << Expr(1), Expr(2), Expr(Rational(1, 2)), Expr(-3);
  EXPECT_TRUE(curvature(GeometricData(bundle, gamma, ExprMatrix::Zero(2, 2), ExprMatrix::Zero(2, 2), origin), 0, 1)
                  .is_zero());
  const GeometricData curved = load_structure(fixture("curved_geomdata.json")).geomdata.value();
  EXPECT_EQ(curvature(curved, 0, 1), -E("y1", bundle) * VectorField::coordinate(4, 2));
}

TEST(Curvature, ActsAsCommutatorAndIsVertical) {
  // [X, Y] f = X(Y f) − Y(X f) on the coordinate functions.
  Random rnd(72);
  for (int t = 0; t < 6; ++t) {
    ExprMatrix gamma(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) gamma(i, k) = Expr(rnd.polynomial(4, 2, 2));
    const GeometricData gd(bundle, gamma, ExprMatrix::Zero(2, 2), ExprMatrix::Zero(2, 2), origin);
    const VectorField curv = curvature(gd, 0, 1);
    const VectorField x = horizontal_lift(gd, 0);
    const VectorField y = horizontal_lift(gd, 1);
    for (int c = 0; c < 4; ++c) {
      const Expr f = Expr::variable(c);
      EXPECT_EQ(curv.c(c), derivative(x, derivative(y, f)) - derivative(y, derivative(x, f)));
    }
    EXPECT_TRUE(curv.c(0).is_zero());
    EXPECT_TRUE(curv.c(1).is_zero());
  }
}

TEST(PartialGamma, Examples) {
  const GeometricData fl = flat(ExprMatrix::Zero(2, 2), skew2(Expr(3)));
  EXPECT_TRUE(partial_gamma(fl, TwoForm::from_matrix(fl.f2())).is_zero());
  Random rnd(73);
  for (int t = 0; t < 5; ++t) {
    const GeometricData gd = curved_family(rnd);
    const Expr g = rnd.expr(4, true);
    const ExprVector dg = partial_gamma(gd, g);
    ASSERT_EQ(dg.size(), 2);
    for (int i = 0; i < 2; ++i) EXPECT_EQ(dg(i), derivative(horizontal_lift(gd, i), g));
    // ∂_γ∂_γ g (∂x1, ∂x2) = Curv(∂x1, ∂x2) g.
    const TwoForm ddg = partial_gamma(gd, dg);
    EXPECT_EQ(ddg(0, 1), derivative(curvature(gd, 0, 1), g));
    EXPECT_TRUE(partial_gamma(flat(ExprMatrix::Zero(2, 2), ExprMatrix::Zero(2, 2)),
                              partial_gamma(flat(ExprMatrix::Zero(2, 2), ExprMatrix::Zero(2, 2)), g))
                    .is_zero());
  }
}

TEST(PartialGamma, DegreeTwoIsCyclicSum) {
  const Chart c({"x1", "x2", "x3", "y1"}, {"x1", "x2", "x3"}, {"y1"});
  Random rnd(74);
  for (int t = 0; t < 4; ++t) {
    ExprMatrix gamma(3, 1);
    for (int i = 0; i < 3; ++i) gamma(i, 0) = Expr(rnd.polynomial(4, 2, 2));
    const TwoForm f = rnd.two_form(4);
    ExprMatrix f2(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) f2(i, j) = f(i, j);
    const GeometricData gd(c, gamma, ExprMatrix::Zero(1, 1), f2, Point(4, Rational(0)));
    const ThreeForm got = partial_gamma(gd, TwoForm::from_matrix(f2));
    auto X = [&](int i, const Expr& e) { return derivative(horizontal_lift(gd, i), e); };
    EXPECT_EQ(got(0, 1, 2), X(0, f2(1, 2)) + X(1, f2(2, 0)) + X(2, f2(0, 1)));
  }
}

TEST(VerifyConditions, Examples) {
  const GeometricData good = flat(skew2(E("y1", bundle)), skew2(Expr(1)));
  EXPECT_TRUE(verify_conditions(good).passed());
  EXPECT_EQ(verify_conditions(good).checks.size(), 4u);

  const GeometricData defect = load_structure(fixture("curvature_defect_geomdata.json")).geomdata.value();
  const Report r = verify_conditions(defect);
  EXPECT_FALSE(r.passed());
  ASSERT_NE(r.find("curvature_identity"), nullptr);
  EXPECT_TRUE(r.find("curvature_identity")->failed());
  EXPECT_FALSE(r.find("vertical_jacobi")->failed());
  EXPECT_FALSE(r.find("lift_invariance")->failed());
  EXPECT_FALSE(r.find("horizontal_closedness")->failed());

  EXPECT_FALSE(verify_conditions(flat(skew2(E("y1 + 1", bundle)), skew2(Expr(1)))).find("vertical_jacobi")->failed());

  ExprMatrix gamma = ExprMatrix::Zero(2, 2);
  gamma(0, 0) = E("y2", bundle);
  const Report lift = verify_conditions(GeometricData(bundle, gamma, skew2(E("y1", bundle)), skew2(Expr(1)), origin));
  EXPECT_TRUE(lift.find("lift_invariance")->failed());

  const Chart c3({"x1", "x2", "x3", "y1"}, {"x1", "x2", "x3"}, {"y1"});
  ExprMatrix f2 = ExprMatrix::Zero(3, 3);
  f2(0, 1) = E("x3", c3);
  f2(1, 0) = -f2(0, 1);
  const Report closed = verify_conditions(
      GeometricData(c3, ExprMatrix::Zero(3, 1), ExprMatrix::Zero(1, 1), f2, Point(4, Rational(0))));
  EXPECT_TRUE(closed.find("horizontal_closedness")->failed());
}

TEST(VerifyConditions, RandomFamilyPasses) {
  Random rnd(75);
  for (int t = 0; t < 8; ++t) EXPECT_TRUE(verify_conditions(curved_family(rnd)).passed());
}

TEST(Extract, Examples) {
  const NormalFrame nf = reduce_to_normal_form(load_frame("product.json"));
  const GeometricData gd = extract(nf);
  EXPECT_TRUE(is_zero(gd.gamma()));
  EXPECT_EQ(gd.pi_v(), skew2(E("y1", bundle)));
  EXPECT_EQ(gd.f2(), skew2(Expr(-1)));

  const GeometricData w = extract(reduce_to_normal_form(load_frame("closed_2form.json")));
  EXPECT_EQ(w.s(), 0);
  EXPECT_EQ(w.f2()(0, 1), Expr(1));

  const GeometricData sym = extract(reduce_to_normal_form(load_frame("symplectic_bivector.json")));
  EXPECT_TRUE(is_zero(sym.gamma()));
  EXPECT_TRUE(is_zero(sym.pi_v()));
}

TEST(Extract, CatalogSatisfiesConditions) {
  for (const char* name : {"closed_2form.json", "closed_2form_x1.json", "zero_bivector.json",
                           "symplectic_bivector.json", "linear_bivector.json", "so3.json", "product.json",
                           "curved_geomdata.json", "flat_geomdata.json"}) {
    const GeometricData gd = extract(reduce_to_normal_form(load_frame(name)));
    const Report r = verify_conditions(gd);
    EXPECT_TRUE(r.passed()) << name << "\n" << to_text(r);
  }
}

TEST(Reconstruct, Examples) {
  const DiracFrame z = reconstruct(flat(ExprMatrix::Zero(2, 2), ExprMatrix::Zero(2, 2)));
  for (int i = 0; i < 2; ++i) EXPECT_EQ(z.section(i), (Section{VectorField::coordinate(4, i), OneForm::zero(4)}));
  for (int k = 0; k < 2; ++k)
    EXPECT_EQ(z.section(2 + k), (Section{VectorField::zero(4), OneForm::coordinate(4, 2 + k)}));

  const GeometricData prod = load_structure(fixture("product_geomdata.json")).geomdata.value();
  const DiracFrame back = reconstruct(prod);
  const DiracFrame want = load_frame("product.json");
  for (const auto& p : sample_points(bundle, 10, 0)) EXPECT_TRUE(same_span_at(back, want, p));

  const DiracFrame sym = reconstruct(flat(ExprMatrix::Zero(2, 2), skew2(Expr(-1))));
  for (const auto& p : sample_points(bundle, 10, 1)) EXPECT_EQ(graph_detect(sym, p), GraphKind::BivectorGraph);

  try {
    reconstruct(load_structure(fixture("curvature_defect_geomdata.json")).geomdata.value());
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("curvature_identity"), std::string::npos);
  }
}

TEST(Reconstruct, IsotropicAndDirac) {
  Random rnd(76);
  for (int t = 0; t < 5; ++t) {
    const GeometricData gd = curved_family(rnd);
    const DiracFrame f = reconstruct(gd);
    for (int a = 0; a < f.size(); ++a)
      for (int b = 0; b < f.size(); ++b) EXPECT_TRUE(pairing(f.section(a), f.section(b)).is_zero());
    EXPECT_TRUE(dirac_checks(f, sample_points(bundle, 5, t)).passed());
  }
}

TEST(VerticalIdentities, LeafFormAgainstVerticalBivector) {
  // dα_v(ū, (Π^V)♯β) = −Π^V(d𝔽(u, v), β) for β = η_k.
  Random rnd(77);
  for (int t = 0; t < 6; ++t) {
    const GeometricData gd = curved_family(rnd);
    const Bivector pv = gd.vertical_bivector();
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < 2; ++v)
        for (int k = 0; k < 2; ++k) {
          const OneForm eta = vertical_coframe(gd, k);
          const Expr lhs = evaluate(exterior_d(horizontal_form(gd, v)), horizontal_lift(gd, u), sharp(pv, eta));
          const Expr rhs = -evaluate(pv, exterior_d(gd.f2()(u, v), 4), eta);
          EXPECT_EQ(lhs, rhs);
        }
  }
}

TEST(VerticalIdentities, LeibnizForAnnihilatorForms) {
  // dβ1((Π^V)♯β2, ū) = ū(Π^V(β1, β2)) − Π^V(β1, L_ū β2) for β1, β2 ∈ Hor°.
  Random rnd(78);
  for (int t = 0; t < 6; ++t) {
    const GeometricData gd = curved_family(rnd);
    const Bivector pv = gd.vertical_bivector();
    const OneForm b1 = rnd.expr(4, true) * vertical_coframe(gd, 0) + rnd.expr(4, true) * vertical_coframe(gd, 1);
    const OneForm b2 = rnd.expr(4, true) * vertical_coframe(gd, 0) + rnd.expr(4, true) * vertical_coframe(gd, 1);
    for (int u = 0; u < 2; ++u) {
      const VectorField lift = horizontal_lift(gd, u);
      const Expr lhs = evaluate(exterior_d(b1), sharp(pv, b2), lift);
      const Expr rhs = derivative(lift, evaluate(pv, b1, b2)) - evaluate(pv, b1, lie_derivative(lift, b2));
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(Roundtrip, CatalogAndCurved) {
  for (const char* name : {"product.json", "closed_2form.json", "curved_geomdata.json", "so3.json",
                           "symplectic_bivector.json"}) {
    const DiracFrame f = load_frame(name);
    const Report r = roundtrip_check(f, sample_points(f.chart(), 10, 0));
    EXPECT_TRUE(r.passed()) << name << "\n" << to_text(r);
  }
}

TEST(Roundtrip, RandomFamily) {
  Random rnd(79);
  for (int t = 0; t < 4; ++t) {
    const GeometricData gd = curved_family(rnd);
    const DiracFrame f = reconstruct(gd);
    const Report r = roundtrip_check(f, sample_points(bundle, 8, t));
    EXPECT_TRUE(r.passed()) << to_text(r);
    EXPECT_EQ(extract(reduce_to_normal_form(f)).gamma(), gd.gamma());
  }
}

TEST(Roundtrip, TamperedDataFails) {
  const DiracFrame f = load_frame("curved_geomdata.json");
  const Report r = roundtrip_check(f, sample_points(bundle, 10, 0), [](const GeometricData& gd) {
    return GeometricData(gd.chart(), gd.gamma(), gd.pi_v(), skew2(Expr(1)), gd.base_point());
  });
  EXPECT_FALSE(r.passed());
  const Check* c = r.find("curvature_identity");
  ASSERT_NE(c, nullptr);
  EXPECT_TRUE(c->failed());
  EXPECT_FALSE(c->witnesses.empty());
}

TEST(PoissonCorollary, Examples) {
  const GeometricData prod = load_structure(fixture("product_geomdata.json")).geomdata.value();
  const Report r = poisson_corollary_check(prod, sample_points(bundle, 25, 0));
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.find("poisson_corollary")->status, Status::Pass);

  const Report deg = poisson_corollary_check(flat(ExprMatrix::Zero(2, 2), ExprMatrix::Zero(2, 2)),
                                             sample_points(bundle, 10, 0));
  EXPECT_EQ(deg.find("poisson_corollary")->status, Status::Skipped);

  const GeometricData nondeg = flat(ExprMatrix::Zero(2, 2), skew2(Expr(2)));
  EXPECT_EQ(poisson_corollary_check(nondeg, sample_points(bundle, 10, 0)).find("poisson_corollary")->status,
            Status::Pass);

  const Chart leaf({"x1", "x2"}, {"x1", "x2"}, {});
  const GeometricData open(leaf, ExprMatrix(2, 0), ExprMatrix(0, 0), skew2(Expr(2)), Point(2, Rational(0)));
  const DiracFrame g = reconstruct(open);
  for (const auto& p : sample_points(leaf, 10, 0)) EXPECT_EQ(graph_detect(g, p), GraphKind::Both);
}

TEST(PoissonCorollary, InducedBivectorIsPoisson) {
  // Where 𝔽 is nondegenerate the reconstructed frame is the graph of the
  // bivector returned pointwise; on the product it is constant in x.
  const GeometricData prod = load_structure(fixture("product_geomdata.json")).geomdata.value();
  const DiracFrame f = reconstruct(prod);
  for (const auto& p : sample_points(bundle, 10, 2)) {
    const RationalMatrix pm = bivector_at(f, p);
    RationalMatrix want = RationalMatrix::Zero(4, 4);
    want(0, 1) = 1;
    want(1, 0) = -1;
    want(2, 3) = p[2];
    want(3, 2) = -p[2];
    EXPECT_EQ(pm, want);
  }
}
