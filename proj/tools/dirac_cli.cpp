// dirac: command-line front end for the structure checks.
//
//   dirac check <file> [--oracle] [--points N] [--seed S] [--report json|text]
//   dirac normal-form <file> [--out file]
//   dirac leaf-scan <file> --points N [--oracle]
//   dirac transverse <file> --slice "x1=0,x2=0"
//   dirac geomdata {extract|verify|reconstruct|roundtrip} <file>
//
// Exit status: 0 all checks pass, 1 some check fails, 2 input or usage error.

#include "dirac/errors.hpp"
#include "dirac/io.hpp"
#include "dirac/leaves.hpp"
#include "dirac/oracle.hpp"
#include "dirac/transverse.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace dirac;
using nlohmann::json;

namespace {

constexpr const char* schema_version = "1.0";

struct Options {
  std::string file;
  std::string report = "text";
  int points = 25;
  std::uint64_t seed = 0;
  int bound = 9;
  bool oracle = false;
  std::string out;
  std::string slice;
  std::string verb;
};

struct Outcome {
  Report report;
  json data = json::object();
};

Check failed_check(const std::string& name, const std::string& message, Witness w) {
  Check c{name, Status::Fail, message, {}};
  c.fail(std::move(w));
  return c;
}

/// The frame a file describes. Geometric data is reconstructed first; when
/// its conditions fail they are reported instead and nullopt is returned.
std::optional<DiracFrame> frame_of(const Structure& st, Report& report) {
  if (st.frame) return *st.frame;
  Report conditions = verify_conditions(*st.geomdata);
  if (!conditions.passed()) {
    report.append(conditions);
    return std::nullopt;
  }
  return reconstruct(*st.geomdata);
}

Check parity_check(const DiracFrame& f, std::span<const Point> pts, json& data) {
  ParityScan scan = parity_scan(f, pts);
  json hist = json::object();
  for (const auto& [dim, count] : scan.histogram) hist[std::to_string(dim)] = count;
  data["leaf_dimension_histogram"] = hist;
  data["base_leaf_dimension"] = scan.base_dimension;
  return scan.check;
}

Outcome run_check(const Structure& st, const Options& o) {
  Outcome out;
  const auto loaded = frame_of(st, out.report);
  if (!loaded) return out;
  const DiracFrame& f = *loaded;
  const auto pts = sample_points(f.chart(), o.points, o.seed, o.bound);
  out.report.append(dirac_checks(f, pts));
  const bool pointwise_ok = !out.report.find("isotropy")->failed() && !out.report.find("rank")->failed();
  if (pointwise_ok) {
    out.report.add(parity_check(f, pts, out.data));
  } else {
    out.report.add({"parity", Status::Skipped, "requires isotropy and rank", {}});
  }
  if (o.oracle) {
    out.report.add(rank_concordance(f, pts));
    if (!out.report.find("isotropy")->failed())
      out.report.add(sampled_closure(f, pts, 10, o.seed));
    else
      out.report.add({"sampled_closure", Status::Skipped, "requires isotropy", {}});
  }
  if (!f.base_point().empty()) out.data["graph_kind"] = to_string(graph_detect(f, f.base_point()));
  return out;
}

Outcome run_normal_form(const Structure& st, const Options& o) {
  Outcome out;
  const auto loaded = frame_of(st, out.report);
  if (!loaded) return out;
  const DiracFrame& f = *loaded;
  try {
    const NormalFrame nf = reduce_to_normal_form(f);
    const auto pts = sample_points(f.chart(), o.points, o.seed, o.bound);
    out.report = verify_normal_frame(nf, f, pts);
    const json frame = to_json(nf);
    if (o.out.empty()) {
      out.data["normal_frame"] = frame;
    } else {
      std::ofstream file(o.out);
      if (!file) throw SchemaError("", "cannot write '" + o.out + "'");
      file << frame.dump(2) << "\n";
      out.data["written_to"] = o.out;
    }
  } catch (const NormalFormError& e) {
    out.report.add(failed_check("normal_form", e.what(),
                                {"step " + std::to_string(e.step), e.what(), std::nullopt, {e.step}}));
  }
  return out;
}

Outcome run_leaf_scan(const Structure& st, const Options& o) {
  Outcome out;
  const auto loaded = frame_of(st, out.report);
  if (!loaded) return out;
  const DiracFrame& f = *loaded;
  const auto pts = sample_points(f.chart(), o.points, o.seed, o.bound);
  ParityScan scan = parity_scan(f, pts);
  json per_point = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    json entry = {{"point", to_json(pts[i])}};
    if (scan.dims[i] < 0)
      entry["dimension"] = nullptr;
    else
      entry["dimension"] = scan.dims[i];
    per_point.push_back(std::move(entry));
  }
  out.data["base_leaf_dimension"] = scan.base_dimension;
  out.data["points"] = per_point;
  json hist = json::object();
  for (const auto& [dim, count] : scan.histogram) hist[std::to_string(dim)] = count;
  out.data["leaf_dimension_histogram"] = hist;
  out.report.add(scan.check);
  if (o.oracle) out.report.add(rank_concordance(f, pts, 1e-9, Block::Vector));
  return out;
}

Outcome run_transverse(const Structure& st, const Options& o) {
  Outcome out;
  const auto loaded = frame_of(st, out.report);
  if (!loaded) return out;
  const DiracFrame& f = *loaded;
  const Slice slice = Slice::parse(f.chart(), o.slice);
  try {
    const DiracFrame induced = induced_on_slice(f, slice);
    const auto pts = sample_points(induced.chart(), o.points, o.seed, o.bound);
    out.report = dirac_checks(induced, pts);
    out.data["induced"] = to_json(induced);
    out.data["graph_kind"] = to_string(graph_detect(induced, induced.base_point()));
  } catch (const ConstantDimensionError& e) {
    Check c{"constant_dimension", Status::Fail, e.what(), {}};
    c.fail({"intersection dimension at first point", "", e.first, {}});
    c.fail({"intersection dimension at second point", "", e.second, {}});
    out.report.add(std::move(c));
    return out;
  }
  if (!f.chart().has_split()) {
    out.report.notes.push_back("no split declared; transverse Poisson structure not computed");
    return out;
  }
  try {
    const NormalFrame nf = reduce_to_normal_form(f);
    if (nf.s() == 0) {
      out.report.notes.push_back("s = 0; transverse Poisson structure is trivial");
      return out;
    }
    const SliceBivector pq = transverse_poisson(nf);
    out.data["transverse_poisson"] = to_json(pq.chart, pq.pi, pq.base_point);
    out.report.add(check_horizontal_invariance(nf));

    Check jac{"transverse_jacobi", Status::Pass, "", {}};
    const int s = pq.chart.dim();
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b)
        for (int c = b + 1; c < s; ++c) {
          const Expr j = jacobiator(pq.pi, a, b, c);
          if (!j.is_zero())
            jac.fail({index_label("J_", {a, b, c}), to_string(j, pq.chart), std::nullopt,
                      {a + 1, b + 1, c + 1}});
        }
    out.report.add(std::move(jac));

    Check vanish{"transverse_vanishing", Status::Pass, "", {}};
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b) {
        const Rational v = eval(pq.pi.matrix()(a, b), pq.base_point);
        if (v != 0)
          vanish.fail({index_label("Pi_", {a, b}), to_string(v), pq.base_point, {a + 1, b + 1}});
      }
    out.report.add(std::move(vanish));
  } catch (const NormalFormError& e) {
    out.report.add(failed_check("normal_form", e.what(),
                                {"step " + std::to_string(e.step), e.what(), std::nullopt, {e.step}}));
  }
  return out;
}

Outcome run_geomdata(const Structure& st, const Options& o) {
  Outcome out;
  if (o.verb == "extract") {
    if (!st.frame) throw SchemaError("/kind", "extract needs a frame, two_form or bivector file");
    try {
      const GeometricData gd = extract(reduce_to_normal_form(*st.frame));
      out.report = verify_conditions(gd);
      out.data["geomdata"] = to_json(gd);
    } catch (const NormalFormError& e) {
      out.report.add(failed_check("normal_form", e.what(),
                                  {"step " + std::to_string(e.step), e.what(), std::nullopt, {e.step}}));
    }
    return out;
  }
  if (o.verb == "roundtrip") {
    const auto loaded = frame_of(st, out.report);
  if (!loaded) return out;
  const DiracFrame& f = *loaded;
    const auto pts = sample_points(f.chart(), o.points, o.seed, o.bound);
    try {
      out.report = roundtrip_check(f, pts);
    } catch (const NormalFormError& e) {
      out.report.add(failed_check("normal_form", e.what(),
                                  {"step " + std::to_string(e.step), e.what(), std::nullopt, {e.step}}));
    }
    return out;
  }
  if (!st.geomdata) throw SchemaError("/kind", o.verb + " needs a geomdata file");
  const GeometricData& gd = *st.geomdata;
  out.report = verify_conditions(gd);
  if (o.verb == "reconstruct" && out.report.passed()) {
    const DiracFrame f = reconstruct(gd);
    const auto pts = sample_points(f.chart(), o.points, o.seed, o.bound);
    out.report.append(dirac_checks(f, pts));
    out.report.append(poisson_corollary_check(gd, pts));
    out.data["frame"] = to_json(f);
  }
  return out;
}

void emit(const Outcome& res, const std::string& command, const Options& o) {
  if (o.report == "json") {
    json doc = to_json(res.report);
    doc["schema_version"] = schema_version;
    doc["command"] = command;
    doc["input"] = o.file;
    doc["data"] = res.data;
    std::cout << doc.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : res.data.items()) {
    if (value.is_object() && value.contains("kind"))
      std::cout << key << ":\n" << value.dump(2) << "\n";
    else if (!value.is_array())
      std::cout << key << ": " << value.dump() << "\n";
  }
  if (res.data.contains("points"))
    for (const auto& e : res.data["points"])
      std::cout << "  " << e["point"].dump() << " -> " << e["dimension"].dump() << "\n";
  std::cout << to_text(res.report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac structure checks on coordinate charts"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("file", o.file, "structure file (JSON)")->required();
    sub->add_option("--points", o.points, "number of sampled points")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "sampling seed");
    sub->add_option("--bound", o.bound, "numerator bound for sampled points")->check(CLI::PositiveNumber);
    sub->add_option("--report", o.report, "output format")->check(CLI::IsMember({"json", "text"}));
  };

  auto* check = app.add_subcommand("check", "isotropy, rank, integrability and parity");
  common(check);
  check->add_flag("--oracle", o.oracle, "cross-check with floating point and sampled closure");

  auto* normal = app.add_subcommand("normal-form", "reduce to normal form and verify");
  common(normal);
  normal->add_option("--out", o.out, "write the normal frame here");

  auto* leaf = app.add_subcommand("leaf-scan", "leaf dimensions at sampled points");
  common(leaf);
  leaf->add_flag("--oracle", o.oracle, "compare with floating-point ranks");

  auto* trans = app.add_subcommand("transverse", "induced structure on a coordinate slice");
  common(trans);
  trans->add_option("--slice", o.slice, "fixed coordinates, e.g. \"x1=0,x2=0\"")->required();

  auto* geo = app.add_subcommand("geomdata", "geometric data: extract, verify, reconstruct, roundtrip");
  geo->add_option("verb", o.verb, "extract | verify | reconstruct | roundtrip")
      ->required()
      ->check(CLI::IsMember({"extract", "verify", "reconstruct", "roundtrip"}));
  common(geo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Structure st = load_structure(o.file);
    Outcome res;
    if (command == "check")
      res = run_check(st, o);
    else if (command == "normal-form")
      res = run_normal_form(st, o);
    else if (command == "leaf-scan")
      res = run_leaf_scan(st, o);
    else if (command == "transverse")
      res = run_transverse(st, o);
    else
      res = run_geomdata(st, o);
    emit(res, command == "geomdata" ? "geomdata " + o.verb : command, o);
    return res.report.passed() ? 0 : 1;
  } catch (const PreconditionError& e) {
    Outcome res;
    res.report.add(failed_check("precondition", e.what(), {"message", e.what(), std::nullopt, {}}));
    emit(res, command, o);
    return 1;
  } catch (const Error& e) {
    std::cerr << "dirac: " << e.what() << "\n";
    return 2;
  }
}
