#include "dirac/report.hpp"

#include <sstream>

namespace dirac {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

void Check::fail(Witness w) {
  status = Status::Fail;
  witnesses.push_back(std::move(w));
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (c.failed()) return false;
  return true;
}

void Report::add(Check c) {
  if (c.failed() && c.witnesses.empty()) c.witnesses.push_back({c.name, c.detail, std::nullopt, {}});
  checks.push_back(std::move(c));
}

void Report::append(const Report& other) {
  for (const auto& c : other.checks) add(c);
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << "[" << to_string(c.status) << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
    for (const auto& w : c.witnesses) {
      os << "    " << w.label;
      if (!w.expression.empty()) os << " = " << w.expression;
      if (w.point) os << " at " << to_string(*w.point);
      os << "\n";
    }
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  os << (r.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace dirac
