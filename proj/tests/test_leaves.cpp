#include "support.hpp"

using namespace dirac;
using namespace dirac::test;

namespace {

const std::vector<std::string> integrable = {"closed_2form.json",   "closed_2form_x1.json",
                                             "zero_bivector.json",  "symplectic_bivector.json",
                                             "linear_bivector.json", "so3.json",
                                             "product.json"};

}  // namespace

TEST(LeafDimension, Examples) {
  const DiracFrame w = load_frame("closed_2form_x1.json");
  for (const auto& p : sample_points(w.chart(), 10, 1)) EXPECT_EQ(leaf_dimension_at(w, p), 3);

  const DiracFrame lin = load_frame("linear_bivector.json");
  EXPECT_EQ(leaf_dimension_at(lin, P({0, 0})), 0);
  EXPECT_EQ(leaf_dimension_at(lin, P({1, 0})), 2);
  EXPECT_EQ(leaf_dimension_at(lin, P({0, 7})), 0);

  const DiracFrame so3 = load_frame("so3.json");
  EXPECT_EQ(leaf_dimension_at(so3, P({0, 0, 0})), 0);
  EXPECT_EQ(leaf_dimension_at(so3, P({0, 0, 1})), 2);
}

TEST(LeafDimension, MatchesBivectorRankOnBivectorGraphs) {
  // For a bivector graph pr1(L_p) = image of π♯, so dim = rank π(p).
  Random rnd(51);
  const Chart c = chart_of(4);
  for (int t = 0; t < 5; ++t) {
    const Bivector pi = rnd.bivector(4);
    const DiracFrame g = graph_of_bivector(c, pi);
    for (int k = 0; k < 6; ++k) {
      const Point p = rnd.point(4);
      RationalMatrix m(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = eval(pi(i, j), p);
      EXPECT_EQ(leaf_dimension_at(g, p), exact_rank(m));
    }
  }
}

TEST(LeafDimension, InvariantUnderNormalForm) {
  for (const auto& name : integrable) {
    const DiracFrame f = load_frame(name);
    const NormalFrame nf = reduce_to_normal_form(f);
    for (const auto& p : sample_points(f.chart(), 20, 2)) {
      if (!f.in_domain(p) || !nf.frame().in_domain(p)) continue;
      EXPECT_EQ(leaf_dimension_at(f, p), leaf_dimension_at(nf.frame(), p)) << name;
      EXPECT_EQ((leaf_dimension_at(nf.frame(), p) - nf.r()) % 2, 0) << name;
    }
  }
}

TEST(Parity, LinearAndSo3) {
  for (const char* name : {"linear_bivector.json", "so3.json"}) {
    const DiracFrame f = load_frame(name);
    const auto pts = sample_points(f.chart(), 100, 0);
    const ParityScan scan = parity_scan(f, pts);
    EXPECT_FALSE(scan.check.failed()) << name;
    EXPECT_EQ(scan.base_dimension, 0);
    for (const auto& [d, count] : scan.histogram) EXPECT_TRUE(d == 0 || d == 2) << name;
    int total = 0;
    for (const auto& [d, count] : scan.histogram) total += count;
    EXPECT_EQ(total, 100);
    ASSERT_EQ(scan.dims.size(), 100u);
  }
}

TEST(Parity, ClosedFormsAreOpenLeaves) {
  const DiracFrame f = load_frame("closed_2form.json");
  const ParityScan scan = parity_scan(f, sample_points(f.chart(), 25, 0));
  EXPECT_FALSE(scan.check.failed());
  EXPECT_EQ(scan.histogram, (std::map<int, int>{{2, 25}}));
}

TEST(Parity, CatalogAgreesWithBasePoint) {
  for (const auto& name : integrable) {
    const DiracFrame f = load_frame(name);
    const ParityScan scan = parity_scan(f, sample_points(f.chart(), 100, 3));
    EXPECT_FALSE(scan.check.failed()) << name;
    EXPECT_EQ(scan.base_dimension % 2, f.chart().r() % 2) << name;
  }
}

TEST(Parity, OddJumpIsReportedWithPoint) {
  // Not a Dirac structure: the vector block has rank 0 on {x1 = 0} and 1 off it.
  const Chart c({"x1", "x2"});
  const DiracFrame odd(c, {{E("x1", c) * VectorField::coordinate(2, 0), OneForm::coordinate(2, 1)},
                           {VectorField::zero(2), OneForm::coordinate(2, 0)}});
  const ParityScan scan = parity_scan(odd, std::vector<Point>{P({0, 1}), P({2, 1})});
  ASSERT_TRUE(scan.check.failed());
  EXPECT_EQ(scan.dims, (std::vector<int>{0, 1}));
  ASSERT_EQ(scan.check.witnesses.size(), 1u);
  EXPECT_EQ(*scan.check.witnesses.front().point, P({2, 1}));
}

TEST(Parity, SkipsPointsOutsideDomain) {
  const Chart c({"x1", "x2"});
  const DiracFrame f(c, {{VectorField::coordinate(2, 0), E("1/(x1 - 1)", c) * OneForm::coordinate(2, 1)},
                         {VectorField::coordinate(2, 1), E("-1/(x1 - 1)", c) * OneForm::coordinate(2, 0)}},
                     P({0, 0}));
  const ParityScan scan = parity_scan(f, std::vector<Point>{P({1, 0}), P({2, 0})});
  EXPECT_FALSE(scan.check.failed());
  EXPECT_EQ(scan.dims, (std::vector<int>{-1, 2}));
  EXPECT_NE(scan.check.detail.find("skipped"), std::string::npos);
}

TEST(LeafwiseClosedness, CatalogPasses) {
  for (const auto& name : integrable) {
    const NormalFrame nf = reduce_to_normal_form(load_frame(name));
    EXPECT_FALSE(leafwise_closedness(nf).failed()) << name;
  }
}

TEST(LeafwiseClosedness, InjectedAlphaDefect) {
  const Chart c({"x1", "x2", "x3"}, {"x1", "x2", "x3"}, {});
  const ExprMatrix none(3, 0);
  const ExprMatrix empty(0, 0);
  ExprMatrix alpha = ExprMatrix::Zero(3, 3);
  alpha(0, 1) = E("x3", c);
  alpha(1, 0) = -alpha(0, 1);
  const NormalFrame nf = NormalFrame::from_blocks(c, none, alpha, empty, ExprMatrix(0, 3), P({0, 0, 0}));
  const Check k = leafwise_closedness(nf);
  ASSERT_TRUE(k.failed());
  EXPECT_EQ(k.witnesses.front().indices, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(k.witnesses.front().expression, "1");
}

TEST(LeafwiseClosedness, MatchesClosednessOfLeafForm) {
  // With X_i = d/dx_i the cyclic sum is exactly (dα)_ijk.
  Random rnd(52);
  const Chart c({"x1", "x2", "x3", "x4"}, {"x1", "x2", "x3", "x4"}, {});
  for (int t = 0; t < 8; ++t) {
    const TwoForm w = t % 2 ? rnd.two_form(4) : exterior_d(rnd.one_form(4));
    const NormalFrame nf = NormalFrame::from_blocks(c, ExprMatrix(4, 0), w.matrix(), ExprMatrix(0, 0),
                                                    ExprMatrix(0, 4), Point(4, Rational(0)));
    EXPECT_EQ(leafwise_closedness(nf).failed(), !exterior_d(w).is_zero());
  }
}
