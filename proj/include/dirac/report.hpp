#pragma once

#include "dirac/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dirac {

enum class Status { Pass, Fail, Skipped };

const char* to_string(Status s);

/// What a failed check points at: an offending expression, a point, or both.
struct Witness {
  std::string label;
  std::string expression;
  std::optional<Point> point;
  std::vector<int> indices;  // 1-based, as printed
};

struct Check {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
  std::vector<Witness> witnesses;

  bool failed() const { return status == Status::Fail; }
  /// Marks the check failed and records w.
  void fail(Witness w);
};

/// Ordered list of checks. A failed check always carries a witness.
struct Report {
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool passed() const;
  void add(Check c);
  void append(const Report& other);
  const Check* find(const std::string& name) const;
};

std::string to_text(const Report& r);

}  // namespace dirac
