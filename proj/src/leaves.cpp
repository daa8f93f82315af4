#include "dirac/leaves.hpp"

#include "dirac/linalg.hpp"

namespace dirac {

int leaf_dimension_at(const DiracFrame& f, std::span<const Rational> p) {
  return exact_rank(f.matrix_at(p).leftCols(f.dim()));
}

ParityScan parity_scan(const DiracFrame& f, std::span<const Point> pts) {
  ParityScan out;
  out.check = {"parity", Status::Pass, "", {}};
  out.base_dimension = leaf_dimension_at(f, f.base_point());
  int skipped = 0;
  for (const auto& p : pts) {
    if (!f.in_domain(p)) {
      out.dims.push_back(-1);
      ++skipped;
      continue;
    }
    const int d = leaf_dimension_at(f, p);
    out.dims.push_back(d);
    ++out.histogram[d];
    if ((d - out.base_dimension) % 2 != 0)
      out.check.fail({"dimension " + std::to_string(d), "", p, {}});
  }
  std::string hist;
  for (const auto& [d, count] : out.histogram)
    hist += (hist.empty() ? "" : ", ") + std::to_string(d) + ":" + std::to_string(count);
  out.check.detail = "base dimension " + std::to_string(out.base_dimension) + "; histogram {" +
                     hist + "}";
  if (skipped) out.check.detail += "; " + std::to_string(skipped) + " points skipped";
  return out;
}

Check leafwise_closedness(const NormalFrame& nf) {
  Check c{"leafwise_closedness", Status::Pass, "", {}};
  const int r = nf.r();
  auto X = [&](int i, const Expr& g) { return derivative(nf.H(i).v, g); };
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (int k = j + 1; k < r; ++k) {
        const Expr e = X(i, nf.alpha(j, k)) + X(j, nf.alpha(k, i)) + X(k, nf.alpha(i, j));
        if (!e.is_zero())
          c.fail({index_label("cyclic", {i, j, k}), to_string(e, nf.chart()), std::nullopt,
                  {i + 1, j + 1, k + 1}});
      }
  c.detail = std::to_string(r * (r - 1) * (r - 2) / 6) + " triples";
  return c;
}

}  // namespace dirac
