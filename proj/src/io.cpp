#include "dirac/io.hpp"

#include "dirac/errors.hpp"

#include <fstream>
#include <set>

namespace dirac {

using nlohmann::json;

namespace {

std::string at(const std::string& base, const std::string& key) { return base + "/" + key; }
std::string at(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

const json& field(const json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.contains(key)) throw SchemaError(ptr, "missing required field '" + key + "'");
  return obj.at(key);
}

const json& array_of(const json& v, std::size_t size, const std::string& ptr) {
  if (!v.is_array()) throw SchemaError(ptr, "expected an array");
  if (v.size() != size)
    throw SchemaError(ptr, "expected " + std::to_string(size) + " entries, found " +
                               std::to_string(v.size()));
  return v;
}

std::vector<std::string> names(const json& v, const std::string& ptr) {
  if (!v.is_array()) throw SchemaError(ptr, "expected an array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) throw SchemaError(at(ptr, i), "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

Expr expression(const json& v, const Chart& chart, const std::string& ptr) {
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_number_integer()) {
    text = v.dump();
  } else {
    throw SchemaError(ptr, "expected an expression string or an integer");
  }
  try {
    return parse_expr(text, chart);
  } catch (const ParseError& e) {
    throw SchemaError(ptr, std::string("expression '") + text + "': " + e.what());
  }
}

Rational rational(const json& v, const std::string& ptr) {
  try {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    throw SchemaError(ptr, e.what());
  }
  throw SchemaError(ptr, "expected a rational (string or integer)");
}

ExprMatrix matrix(const json& v, int rows, int cols, const Chart& chart, const std::string& ptr) {
  array_of(v, rows, ptr);
  ExprMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const std::string row_ptr = at(ptr, i);
    array_of(v[i], cols, row_ptr);
    for (int j = 0; j < cols; ++j) m(i, j) = expression(v[i][j], chart, at(row_ptr, j));
  }
  return m;
}

void require_skew(const ExprMatrix& m, const std::string& ptr) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      if (!(m(i, j) == -m(j, i)))
        throw SchemaError(at(at(ptr, i), j), "component matrix is not skew-symmetric");
}

json expr_json(const Expr& e, const Chart& chart) { return to_string(e, chart); }

json matrix_json(const ExprMatrix& m, const Chart& chart) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(expr_json(m(i, j), chart));
    out.push_back(std::move(row));
  }
  return out;
}

json header(const Chart& chart, const Point& base, const std::string& kind) {
  json out;
  out["kind"] = kind;
  out["coordinates"] = chart.names();
  if (chart.has_split()) {
    json x = json::array();
    json y = json::array();
    for (int i : chart.split().x) x.push_back(chart.name(i));
    for (int i : chart.split().y) y.push_back(chart.name(i));
    out["split"] = {{"x", x}, {"y", y}};
  }
  out["base_point"] = to_json(base);
  return out;
}

}  // namespace

Structure parse_structure(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "structure file must be a JSON object");
  static const std::set<std::string> known{"kind", "coordinates", "split", "base_point", "sections",
                                           "components", "connection", "vertical_bivector",
                                           "horizontal_form", "name", "description"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw SchemaError("/" + key, "unknown field");

  const json& kind_v = field(doc, "kind", "");
  if (!kind_v.is_string()) throw SchemaError("/kind", "expected a string");
  Structure out;
  out.kind = kind_v.get<std::string>();
  if (out.kind != "frame" && out.kind != "two_form" && out.kind != "bivector" && out.kind != "geomdata")
    throw SchemaError("/kind", "must be one of frame, two_form, bivector, geomdata");

  const std::vector<std::string> coords = names(field(doc, "coordinates", ""), "/coordinates");
  if (coords.empty()) throw SchemaError("/coordinates", "at least one coordinate is required");
  Chart chart;
  try {
    if (doc.contains("split")) {
      const json& sp = doc.at("split");
      if (!sp.is_object()) throw SchemaError("/split", "expected an object with x and y");
      chart = Chart(coords, names(field(sp, "x", "/split"), "/split/x"),
                    names(field(sp, "y", "/split"), "/split/y"));
    } else {
      chart = Chart(coords);
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(doc.contains("split") ? "/split" : "/coordinates", e.what());
  }
  const int n = chart.dim();

  Point base(n, Rational(0));
  if (doc.contains("base_point")) {
    const json& bp = array_of(doc.at("base_point"), n, "/base_point");
    for (int i = 0; i < n; ++i) base[i] = rational(bp[i], at("/base_point", i));
  }

  try {
    if (out.kind == "frame") {
      const json& secs = array_of(field(doc, "sections", ""), n, "/sections");
      std::vector<Section> sections;
      for (int i = 0; i < n; ++i) {
        const std::string p = at("/sections", i);
        if (!secs[i].is_object()) throw SchemaError(p, "expected an object with vector and covector");
        const json& v = array_of(field(secs[i], "vector", p), n, at(p, "vector"));
        const json& w = array_of(field(secs[i], "covector", p), n, at(p, "covector"));
        Section s = Section::zero(n);
        for (int k = 0; k < n; ++k) {
          s.v.c(k) = expression(v[k], chart, at(at(p, "vector"), k));
          s.w.c(k) = expression(w[k], chart, at(at(p, "covector"), k));
        }
        sections.push_back(std::move(s));
      }
      out.frame.emplace(chart, std::move(sections), base);
    } else if (out.kind == "two_form" || out.kind == "bivector") {
      const ExprMatrix m = matrix(field(doc, "components", ""), n, n, chart, "/components");
      require_skew(m, "/components");
      if (out.kind == "two_form") {
        out.two_form = TwoForm::from_matrix(m);
        out.frame.emplace(graph_of_two_form(chart, *out.two_form, base));
      } else {
        out.bivector = Bivector::from_matrix(m);
        out.frame.emplace(graph_of_bivector(chart, *out.bivector, base));
      }
    } else {
      if (!chart.has_split()) throw SchemaError("/split", "geomdata requires a split");
      const int r = chart.r();
      const int s = chart.s();
      const ExprMatrix gamma = matrix(field(doc, "connection", ""), r, s, chart, "/connection");
      const ExprMatrix pv = matrix(field(doc, "vertical_bivector", ""), s, s, chart, "/vertical_bivector");
      const ExprMatrix f2 = matrix(field(doc, "horizontal_form", ""), r, r, chart, "/horizontal_form");
      require_skew(pv, "/vertical_bivector");
      require_skew(f2, "/horizontal_form");
      out.geomdata.emplace(chart, gamma, pv, f2, base);
    }
  } catch (const DomainError& e) {
    throw SchemaError("/base_point", e.what());
  }
  return out;
}

Structure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_structure(doc);
}

json to_json(const Point& p) {
  json out = json::array();
  for (const auto& c : p) out.push_back(to_string(c));
  return out;
}

json to_json(const DiracFrame& f) {
  json out = header(f.chart(), f.base_point(), "frame");
  json secs = json::array();
  for (const auto& s : f.sections()) {
    json v = json::array();
    json w = json::array();
    for (int k = 0; k < f.dim(); ++k) {
      v.push_back(expr_json(s.v.c(k), f.chart()));
      w.push_back(expr_json(s.w.c(k), f.chart()));
    }
    secs.push_back({{"vector", v}, {"covector", w}});
  }
  out["sections"] = secs;
  return out;
}

json to_json(const NormalFrame& nf) { return to_json(nf.frame()); }

json to_json(const GeometricData& gd) {
  json out = header(gd.chart(), gd.base_point(), "geomdata");
  out["connection"] = matrix_json(gd.gamma(), gd.chart());
  out["vertical_bivector"] = matrix_json(gd.pi_v(), gd.chart());
  out["horizontal_form"] = matrix_json(gd.f2(), gd.chart());
  return out;
}

json to_json(const Chart& chart, const Bivector& pi, const Point& base_point) {
  json out = header(chart, base_point, "bivector");
  out["components"] = matrix_json(pi.matrix(), chart);
  return out;
}

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json ws = json::array();
    for (const auto& w : c.witnesses) {
      json wj = {{"label", w.label}};
      if (!w.expression.empty()) wj["expression"] = w.expression;
      if (w.point) wj["point"] = to_json(*w.point);
      if (!w.indices.empty()) wj["indices"] = w.indices;
      ws.push_back(std::move(wj));
    }
    checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail},
                      {"witnesses", ws}});
  }
  return {{"passed", r.passed()}, {"checks", checks}, {"notes", r.notes}};
}

}  // namespace dirac
