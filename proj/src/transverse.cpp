#include "dirac/transverse.hpp"

#include "dirac/errors.hpp"
#include "dirac/linalg.hpp"
#include "dirac/sampling.hpp"

#include <algorithm>
#include <cctype>

namespace dirac {

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

void add_denominator(std::vector<Polynomial>& dens, const Polynomial& d) {
  if (d.is_constant()) return;
  const Polynomial m = d.monic();
  if (std::find(dens.begin(), dens.end(), m) == dens.end()) dens.push_back(m);
}

bool nonzero_on(const std::vector<Polynomial>& dens, const Point& p) {
  for (const auto& d : dens)
    if (d.eval(p) == 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Slice

Slice::Slice(const Chart& ambient, const std::vector<std::pair<int, Rational>>& fixed)
    : ambient_(ambient), new_index_(ambient.dim(), -1), values_(ambient.dim()) {
  for (const auto& [i, v] : fixed) {
    if (i < 0 || i >= ambient.dim()) throw PreconditionError("slice coordinate out of range");
    if (values_[i]) throw PreconditionError("slice fixes '" + ambient.name(i) + "' twice");
    values_[i] = v;
  }
  std::vector<std::string> kept;
  for (int i = 0; i < ambient.dim(); ++i)
    if (!values_[i]) {
      new_index_[i] = static_cast<int>(kept.size());
      kept.push_back(ambient.name(i));
    }
  if (ambient.has_split()) {
    std::vector<std::string> xs;
    std::vector<std::string> ys;
    for (int x : ambient.split().x)
      if (!values_[x]) xs.push_back(ambient.name(x));
    for (int y : ambient.split().y)
      if (!values_[y]) ys.push_back(ambient.name(y));
    chart_ = Chart(kept, xs, ys);
  } else {
    chart_ = Chart(kept);
  }
}

Slice Slice::parse(const Chart& ambient, std::string_view text) {
  std::vector<std::pair<int, Rational>> fixed;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("slice entry needs the form name=value", pos);
    const std::string name = trim(item.substr(0, eq));
    const auto idx = ambient.index_of(name);
    if (!idx) throw ParseError("unknown coordinate '" + name + "' in slice", pos);
    try {
      fixed.emplace_back(*idx, parse_rational(item.substr(eq + 1)));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), pos + eq + 1);
    }
    pos = end + 1;
  }
  return Slice(ambient, fixed);
}

bool Slice::contains(std::span<const Rational> p) const {
  for (int i = 0; i < ambient_.dim(); ++i)
    if (values_[i] && p[i] != *values_[i]) return false;
  return true;
}

Point Slice::restrict(std::span<const Rational> p) const {
  Point out;
  for (int i = 0; i < ambient_.dim(); ++i)
    if (!values_[i]) out.push_back(p[i]);
  return out;
}

Point Slice::lift(std::span<const Rational> q) const {
  Point out(ambient_.dim());
  for (int i = 0; i < ambient_.dim(); ++i) out[i] = values_[i] ? *values_[i] : q[new_index_[i]];
  return out;
}

Expr Slice::restrict(const Expr& e) const { return dirac::restrict(e, values_, new_index_); }

// ---------------------------------------------------------------------------

DiracFrame induced_on_slice(const DiracFrame& f, const Slice& slice) {
  const int n = f.dim();
  const int q = slice.chart().dim();
  if (!slice.contains(f.base_point()))
    throw PreconditionError("base point " + to_string(f.base_point()) + " is not on the slice");
  const Point qbase = slice.restrict(f.base_point());

  std::vector<Polynomial> dens;
  for (const auto& d : f.denominators()) {
    const Polynomial rd = d.restrict(slice.values(), slice.new_index());
    if (rd.is_zero()) throw DomainError("the slice lies inside the zero set of a denominator");
    add_denominator(dens, rd);
  }
  const ExprMatrix m = f.matrix().unaryExpr([&](const Expr& e) { return slice.restrict(e); });

  std::vector<int> fixed;
  std::vector<int> kept;
  for (int i = 0; i < n; ++i) (slice.new_index()[i] < 0 ? fixed : kept).push_back(i);
  ExprMatrix normal(n, static_cast<Eigen::Index>(fixed.size()));
  for (std::size_t k = 0; k < fixed.size(); ++k) normal.col(k) = m.col(fixed[k]);

  const Point lifted_base = f.base_point();
  auto jump = [&](const std::string& what, const Point& other) {
    throw ConstantDimensionError(what, lifted_base, other);
  };

  const LeftKernel ker = left_kernel_at(normal, qbase);
  if (ker.rank_at_point_drops) {
    Point other = lifted_base;
    for (const auto& p : sample_points(slice.chart(), 8, 0, 3))
      if (nonzero_on(dens, p) && exact_rank(eval(normal, p)) == ker.generic_rank) {
        other = slice.lift(p);
        break;
      }
    jump("L ∩ (TQ ⊕ T*M) is larger at the base point than at nearby points", other);
  }
  for (const auto& d : ker.denominators) add_denominator(dens, d);

  const ExprMatrix inter = ker.basis * m;
  ExprMatrix projected(inter.rows(), 2 * q);
  for (int k = 0; k < q; ++k) {
    projected.col(k) = inter.col(kept[k]);
    projected.col(q + k) = inter.col(n + kept[k]);
  }
  const RowBasis basis = row_basis_at(projected, qbase);
  if (basis.rank_at_point_drops || basis.rows.rows() != q)
    jump("the induced space does not have dimension " + std::to_string(q) + " at the base point",
         lifted_base);
  for (const auto& d : basis.denominators) add_denominator(dens, d);

  // Confirm the rank of the transverse vector block on sampled slice points.
  if (q > 0) {
    for (const auto& p : sample_points(slice.chart(), 8, 0, 3)) {
      if (!nonzero_on(dens, p)) continue;
      if (exact_rank(eval(normal, p)) != ker.generic_rank)
        jump("L ∩ (TQ ⊕ T*M) changes dimension along the slice", slice.lift(p));
    }
  }

  std::vector<Section> sections;
  for (Eigen::Index i = 0; i < basis.rows.rows(); ++i)
    sections.push_back({VectorField{basis.rows.row(i).head(q).transpose()},
                        OneForm{basis.rows.row(i).tail(q).transpose()}});
  return DiracFrame(slice.chart(), std::move(sections), qbase, std::move(dens));
}

Bivector vertical_poisson(const NormalFrame& nf) {
  const auto& y = nf.chart().split().y;
  Bivector pi(nf.chart().dim());
  for (int i = 0; i < nf.s(); ++i)
    for (int j = i + 1; j < nf.s(); ++j) pi.set(y[i], y[j], nf.Z(i, j));
  return pi;
}

Bivector restrict(const Bivector& pi, const Slice& slice) {
  const auto& idx = slice.new_index();
  Bivector out(slice.chart().dim());
  for (int a = 0; a < pi.dim(); ++a)
    for (int b = a + 1; b < pi.dim(); ++b)
      if (idx[a] >= 0 && idx[b] >= 0) out.set(idx[a], idx[b], slice.restrict(pi(a, b)));
  return out;
}

SliceBivector transverse_poisson(const NormalFrame& nf) {
  const Chart& chart = nf.chart();
  std::vector<std::pair<int, Rational>> fixed;
  for (int x : chart.split().x) fixed.emplace_back(x, nf.base_point()[x]);
  const Slice slice(chart, fixed);
  return {slice.chart(), restrict(vertical_poisson(nf), slice), slice.restrict(nf.base_point())};
}

Check check_horizontal_invariance(const NormalFrame& nf) {
  Check c{"horizontal_invariance", Status::Pass, "", {}};
  const Bivector pv = vertical_poisson(nf);
  for (int i = 0; i < nf.r(); ++i) {
    const Bivector l = schouten_xv(nf.H(i).v, pv);
    for (int a = 0; a < l.dim(); ++a)
      for (int b = a + 1; b < l.dim(); ++b)
        if (!l(a, b).is_zero())
          c.fail({"[X_" + std::to_string(i + 1) + ",PiV](d" + nf.chart().name(a) + ",d" +
                      nf.chart().name(b) + ")",
                  to_string(l(a, b), nf.chart()), std::nullopt, {i + 1}});
  }
  c.detail = std::to_string(nf.r()) + " horizontal fields";
  return c;
}

}  // namespace dirac
