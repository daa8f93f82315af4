#include "support.hpp"

using namespace dirac;
using namespace dirac::test;

namespace {

const std::vector<std::string> integrable = {"closed_2form.json",   "closed_2form_x1.json",
                                             "zero_bivector.json",  "symplectic_bivector.json",
                                             "linear_bivector.json", "so3.json",
                                             "product.json"};

Section sec(const VectorField& x, const OneForm& w) { return {x, w}; }

}  // namespace

TEST(PoissonBranch, Examples) {
  const DiracFrame lin = load_frame("linear_bivector.json");
  const Chart& c = lin.chart();
  const Bivector pi = poisson_branch(lin);
  EXPECT_EQ(pi(0, 1), E("y1", c));
  EXPECT_TRUE(poisson_branch(load_frame("zero_bivector.json")).is_zero());

  const DiracFrame so3 = load_frame("so3.json");
  const Bivector q = poisson_branch(so3);
  const Chart& cs = so3.chart();
  EXPECT_EQ(q(0, 1), E("y3", cs));
  EXPECT_EQ(q(1, 2), E("y1", cs));
  EXPECT_EQ(q(2, 0), E("y2", cs));
}

TEST(PoissonBranch, RejectsPositiveDimensionalLeaf) {
  EXPECT_THROW(poisson_branch(load_frame("symplectic_bivector.json")), PreconditionError);
  EXPECT_THROW(poisson_branch(load_frame("closed_2form.json")), PreconditionError);
}

TEST(PoissonBranch, RescaledFrameGivesSamePoisson) {
  // e'_i = Σ A_ij e_j with A invertible at the base point leaves Π unchanged.
  const DiracFrame so3 = load_frame("so3.json");
  const Chart& c = so3.chart();
  ExprMatrix a(3, 3);
  a << E("1 + y1", c), E("y2", c), Expr(0), Expr(0), Expr(2), E("y3", c), E("y1*y2", c), Expr(0), Expr(1);
  const ExprMatrix m = a * so3.matrix();
  std::vector<Section> rows;
  for (int i = 0; i < 3; ++i) {
    VectorField x = VectorField::zero(3);
    OneForm w = OneForm::zero(3);
    for (int k = 0; k < 3; ++k) {
      x.c(k) = m(i, k);
      w.c(k) = m(i, 3 + k);
    }
    rows.push_back(sec(x, w));
  }
  const DiracFrame g(c, rows, Point(3, Rational(0)));
  const Bivector pi = poisson_branch(g);
  EXPECT_EQ(pi, poisson_branch(so3));
  EXPECT_TRUE(is_poisson(pi));
}

TEST(NormalForm, SymplecticPlaneOnThreeChart) {
  const DiracFrame f = load_frame("symplectic_bivector.json");
  const NormalFrame nf = reduce_to_normal_form(f);
  ASSERT_EQ(nf.r(), 2);
  ASSERT_EQ(nf.s(), 1);
  EXPECT_EQ(nf.H(0), sec(VectorField::coordinate(3, 0), -OneForm::coordinate(3, 1)));
  EXPECT_EQ(nf.H(1), sec(VectorField::coordinate(3, 1), OneForm::coordinate(3, 0)));
  EXPECT_EQ(nf.V(0), sec(VectorField::zero(3), OneForm::coordinate(3, 2)));
  EXPECT_EQ(nf.alpha(0, 1), Expr(-1));
  EXPECT_TRUE(is_zero(nf.X_matrix()));
  EXPECT_TRUE(is_zero(nf.Z_matrix()));
  EXPECT_TRUE(is_zero(nf.beta_matrix()));
}

TEST(NormalForm, Product) {
  const DiracFrame f = load_frame("product.json");
  const NormalFrame nf = reduce_to_normal_form(f);
  const Chart& c = f.chart();
  EXPECT_TRUE(is_zero(nf.X_matrix()));
  EXPECT_EQ(nf.alpha(0, 1), Expr(-1));
  // Z_12 = y1·u with u(m0) ≠ 0.
  const Expr u = nf.Z(0, 1) / E("y1", c);
  EXPECT_TRUE(u.is_polynomial() || u.den().eval(f.base_point()) != 0);
  EXPECT_NE(eval(u, f.base_point()), 0);
  EXPECT_EQ(nf.Z(1, 0), -nf.Z(0, 1));
  const auto pts = sample_points(c, 10, 0);
  EXPECT_TRUE(verify_normal_frame(nf, f, pts).passed()) << to_text(verify_normal_frame(nf, f, pts));
}

TEST(NormalForm, CatalogInvariants) {
  for (const auto& name : integrable) {
    const DiracFrame f = load_frame(name);
    const NormalFrame nf = reduce_to_normal_form(f);
    const Point& m0 = nf.base_point();
    for (int i = 0; i < nf.r(); ++i)
      for (int k = 0; k < nf.s(); ++k) {
        EXPECT_EQ(eval(nf.X(i, k), m0), 0) << name;
        EXPECT_EQ(nf.X(i, k), -nf.beta(k, i)) << name;
      }
    EXPECT_EQ(nf.Z_matrix(), ExprMatrix(-nf.Z_matrix().transpose())) << name;
    EXPECT_EQ(nf.alpha_matrix(), ExprMatrix(-nf.alpha_matrix().transpose())) << name;
    for (int j = 0; j < nf.s(); ++j)
      for (int k = 0; k < nf.s(); ++k) EXPECT_EQ(eval(nf.Z(j, k), m0), 0) << name;
    for (const auto& d : nf.denominators()) EXPECT_NE(d.eval(m0), 0) << name;
    const auto pts = sample_points(f.chart(), 10, 4);
    const Report rep = verify_normal_frame(nf, f, pts);
    EXPECT_TRUE(rep.passed()) << name << "\n" << to_text(rep);
  }
}

TEST(NormalForm, ShapeOfSectionsMatchesAccessors) {
  for (const auto& name : integrable) {
    const DiracFrame f = load_frame(name);
    const NormalFrame nf = reduce_to_normal_form(f);
    const auto& sp = f.chart().split();
    const int n = f.dim();
    for (int i = 0; i < nf.r(); ++i) {
      VectorField x = VectorField::coordinate(n, sp.x[i]);
      OneForm w = OneForm::zero(n);
      for (int k = 0; k < nf.s(); ++k) x.c(sp.y[k]) += nf.X(i, k);
      for (int k = 0; k < nf.r(); ++k) w.c(sp.x[k]) = nf.alpha(i, k);
      EXPECT_EQ(nf.H(i), sec(x, w)) << name;
    }
    for (int j = 0; j < nf.s(); ++j) {
      VectorField x = VectorField::zero(n);
      OneForm w = OneForm::coordinate(n, sp.y[j]);
      for (int k = 0; k < nf.s(); ++k) x.c(sp.y[k]) = nf.Z(j, k);
      for (int k = 0; k < nf.r(); ++k) w.c(sp.x[k]) += nf.beta(j, k);
      EXPECT_EQ(nf.V(j), sec(x, w)) << name;
    }
  }
}

TEST(NormalForm, Idempotent) {
  for (const auto& name : integrable) {
    const NormalFrame nf = reduce_to_normal_form(load_frame(name));
    const NormalFrame again = reduce_to_normal_form(nf.frame());
    EXPECT_EQ(again.frame().matrix(), nf.frame().matrix()) << name;
  }
}

TEST(NormalForm, RandomConstantRecombinationOfProduct) {
  // Scrambling the generators by a constant invertible matrix and rescaling
  // one of them by a unit must not change the span of the result.
  const DiracFrame f = load_frame("product.json");
  const Chart& c = f.chart();
  Random rnd(41);
  for (int t = 0; t < 4; ++t) {
    ExprMatrix a(4, 4);
    RationalMatrix ar(4, 4);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ar(i, j) = rnd.rational();
    } while (exact_rank(ar) < 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = Expr(ar(i, j));
    for (int j = 0; j < 4; ++j) a(0, j) = a(0, j) * E("1 + x1 + y2", c);
    const ExprMatrix m = a * f.matrix();
    std::vector<Section> rows;
    for (int i = 0; i < 4; ++i) {
      VectorField x = VectorField::zero(4);
      OneForm w = OneForm::zero(4);
      for (int k = 0; k < 4; ++k) {
        x.c(k) = m(i, k);
        w.c(k) = m(i, 4 + k);
      }
      rows.push_back(sec(x, w));
    }
    const DiracFrame g(c, rows, f.base_point());
    const NormalFrame nf = reduce_to_normal_form(g);
    const auto pts = sample_points(c, 10, t);
    std::vector<Point> valid;
    for (const auto& p : pts)
      if (g.in_domain(p) && nf.frame().in_domain(p)) valid.push_back(p);
    const Report rep = verify_normal_frame(nf, g, valid);
    EXPECT_TRUE(rep.passed()) << to_text(rep);
    for (const auto& p : valid) EXPECT_TRUE(same_span_at(nf.frame(), f, p));
  }
}

TEST(NormalForm, ParityBridge) {
  for (const auto& name : integrable) {
    const NormalFrame nf = reduce_to_normal_form(load_frame(name));
    for (const auto& p : sample_points(nf.chart(), 30, 5)) {
      if (!nf.frame().in_domain(p)) continue;
      RationalMatrix z(nf.s(), nf.s());
      for (int j = 0; j < nf.s(); ++j)
        for (int k = 0; k < nf.s(); ++k) z(j, k) = eval(nf.Z(j, k), p);
      const int rz = exact_rank(z);
      EXPECT_EQ(rz % 2, 0) << name;
      EXPECT_EQ(leaf_dimension_at(nf.frame(), p), nf.r() + rz) << name;
    }
  }
}

TEST(NormalForm, Errors) {
  try {
    reduce_to_normal_form(load_frame("nonclosed_2form.json"));
    FAIL();
  } catch (const NormalFormError& e) {
    EXPECT_EQ(e.step, -1);
  }
  const Chart nosplit({"x1", "x2"});
  EXPECT_THROW(reduce_to_normal_form(graph_of_two_form(nosplit, TwoForm(2))), NormalFormError);

  // x2 is declared transverse but d/dx2 lies in pr1(L) at m0.
  const Chart wrong({"x1", "x2", "y1"}, {"x1"}, {"x2", "y1"});
  const DiracFrame prod = load_frame("symplectic_bivector.json");
  const DiracFrame relabelled(wrong, prod.sections(), prod.base_point());
  try {
    reduce_to_normal_form(relabelled);
    FAIL();
  } catch (const NormalFormError& e) {
    EXPECT_EQ(e.step, 0);
  }

  // pr1(L) at m0 is span(d/dx1), but X_11 = x1 does not vanish on {y1 = 0}.
  const Chart c({"x1", "y1"}, {"x1"}, {"y1"});
  const DiracFrame bad(c,
                       {sec(VectorField::coordinate(2, 0) + E("x1", c) * VectorField::coordinate(2, 1),
                            OneForm::zero(2)),
                        sec(VectorField::zero(2), OneForm::coordinate(2, 1) - E("x1", c) * OneForm::coordinate(2, 0))},
                       Point{0, 0});
  try {
    reduce_to_normal_form(bad);
    FAIL();
  } catch (const NormalFormError& e) {
    EXPECT_EQ(e.step, -1);
  }
}

TEST(VerifyNormalFrame, DetectsInjectedDefects) {
  const DiracFrame f = load_frame("product.json");
  const NormalFrame nf = reduce_to_normal_form(f);
  const Chart& c = f.chart();
  const auto pts = sample_points(c, 10, 0);

  ExprMatrix beta = nf.beta_matrix();
  beta(0, 0) = beta(0, 0) + E("y2", c);
  const NormalFrame bad = NormalFrame::from_blocks(c, nf.X_matrix(), nf.alpha_matrix(), nf.Z_matrix(), beta,
                                                   nf.base_point());
  const Report r = verify_normal_frame(bad, f, pts);
  const Check* xb = r.find("x_beta_transpose");
  ASSERT_NE(xb, nullptr);
  EXPECT_TRUE(xb->failed());
  EXPECT_FALSE(xb->witnesses.empty());

  const Chart c4({"x1", "x2", "y1", "y2"}, {"x1", "x2"}, {"y1", "y2"});
  const DiracFrame unrelated = graph_of_two_form(c4, TwoForm(4), Point(4, Rational(0)));
  const Report u = verify_normal_frame(nf, unrelated, pts);
  ASSERT_NE(u.find("span"), nullptr);
  EXPECT_TRUE(u.find("span")->failed());
  EXPECT_FALSE(u.find("span")->witnesses.front().point->empty());
}
