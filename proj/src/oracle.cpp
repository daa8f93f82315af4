#include "dirac/oracle.hpp"

#include "dirac/errors.hpp"
#include "dirac/linalg.hpp"

#include <Eigen/QR>

#include <cmath>
#include <random>
#include <sstream>

namespace dirac {

FloatRank float_rank(const DiracFrame& f, std::span<const double> p, double tol, Block block) {
  if (!(tol > 0)) throw PreconditionError("tolerance must be positive");
  const Eigen::MatrixXd m = eval_double(f.matrix(), p);
  if (!m.allFinite()) return {-1, false};
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(tol);
  if (block == Block::Full) return {static_cast<int>(qr.rank()), true};
  // The vector block is measured against the pivots of the whole frame, so a
  // uniformly tiny block counts as zero.
  const double scale = qr.maxPivot();
  const Eigen::MatrixXd v = m.leftCols(f.dim());
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> vqr(v);
  if (vqr.maxPivot() <= tol * scale) return {0, true};
  vqr.setThreshold(tol * scale / vqr.maxPivot());
  return {static_cast<int>(vqr.rank()), true};
}

Check rank_concordance(const DiracFrame& f, std::span<const Point> pts, double tol, Block block) {
  Check c{block == Block::Full ? "oracle_rank" : "oracle_leaf_dimension", Status::Pass, "", {}};
  int compared = 0;
  for (const auto& p : pts) {
    if (!f.in_domain(p)) continue;
    std::vector<double> q;
    for (const auto& v : p) q.push_back(v.convert_to<double>());
    const RationalMatrix m = f.matrix_at(p);
    const int exact = block == Block::Full ? exact_rank(m) : exact_rank(m.leftCols(f.dim()));
    const FloatRank fr = float_rank(f, q, tol, block);
    ++compared;
    if (!fr.finite)
      c.fail({"non-finite evaluation", "", p, {}});
    else if (fr.rank != exact)
      c.fail({"float rank " + std::to_string(fr.rank) + " vs exact " + std::to_string(exact), "", p,
              {}});
  }
  std::ostringstream detail;
  detail << compared << " points, tol " << tol;
  c.detail = detail.str();
  return c;
}

namespace {

constexpr std::size_t max_witnesses = 10;

Expr random_affine(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  std::uniform_int_distribution<int> var(0, n - 1);
  Expr e = Rational(num(rng), den(rng));
  const int terms = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int t = 0; t < terms; ++t) e += Rational(num(rng), den(rng)) * Expr::variable(var(rng));
  return e;
}

Section random_section(const DiracFrame& f, std::mt19937_64& rng) {
  Section s = Section::zero(f.dim());
  for (const auto& e : f.sections()) s += random_affine(rng, f.dim()) * e;
  return s;
}

}  // namespace

Check sampled_closure(const DiracFrame& f, std::span<const Point> pts, int trials,
                      std::uint64_t seed) {
  Check c{"sampled_closure", Status::Pass, "", {}};
  std::mt19937_64 rng(seed);
  const int n = f.dim();
  int evaluations = 0;
  for (int t = 0; t < trials; ++t) {
    const Section a = random_section(f, rng);
    const Section b = random_section(f, rng);
    const Section br = courant_bracket(a, b);
    for (const auto& p : pts) {
      if (!f.in_domain(p)) continue;
      const RationalVector v = eval(br, p);
      const RationalMatrix m = f.matrix_at(p);
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        Rational s = 0;
        for (int i = 0; i < n; ++i) s += v(n + i) * m(k, i) + m(k, n + i) * v(i);
        ++evaluations;
        if (s != 0 && c.witnesses.size() < max_witnesses)
          c.fail({"trial " + std::to_string(t + 1) + ": <[a,b],e_" + std::to_string(k + 1) + ">",
                  to_string(Rational(s / 2)), p, {t + 1, static_cast<int>(k) + 1}});
      }
    }
  }
  c.detail = std::to_string(trials) + " trials, " + std::to_string(evaluations) + " evaluations";
  return c;
}

}  // namespace dirac
