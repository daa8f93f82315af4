#pragma once

#include "dirac/geomdata.hpp"
#include "dirac/sampling.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace dirac {

/// A loaded structure file. `frame` is set for kinds frame, two_form and
/// bivector; `geomdata` for kind geomdata.
struct Structure {
  std::string kind;
  std::optional<DiracFrame> frame;
  std::optional<GeometricData> geomdata;
  std::optional<TwoForm> two_form;
  std::optional<Bivector> bivector;
};

/// Throws SchemaError (with a JSON pointer) on any shape problem, including
/// expressions that fail to parse.
Structure parse_structure(const nlohmann::json& doc);
/// As parse_structure; also SchemaError("", ...) for unreadable files or
/// malformed JSON.
Structure load_structure(const std::string& path);

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const DiracFrame& f);
nlohmann::json to_json(const NormalFrame& nf);
nlohmann::json to_json(const GeometricData& gd);
nlohmann::json to_json(const Chart& chart, const Bivector& pi, const Point& base_point);
nlohmann::json to_json(const Report& r);

}  // namespace dirac
