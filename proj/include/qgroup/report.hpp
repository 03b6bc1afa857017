#pragma once

// Verification reports and their JSON form. Field order is fixed and every
// floating-point number is written with 17 significant digits, so reports are
// byte-reproducible.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace qgroup {

using ordered_json = nlohmann::ordered_json;

struct Check {
  std::string name;
  std::string anchor;  // the property being verified
  bool passed = false;
  double max_error = 0;
  double tolerance = 0;
  std::string details;
  bool exact = false;  // exact checks ignore tolerance overrides
};

struct VerificationReport {
  std::string scenario;
  std::vector<Check> checks;
  long timing_ms = 0;
  ordered_json config_echo = ordered_json::object();

  bool passed() const {
    for (const Check& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }

  /// Numeric check: passes iff error <= tolerance.
  Check& measure(std::string name, std::string anchor, double error, double tolerance, std::string details = {}) {
    Check c{std::move(name), std::move(anchor), false, error, tolerance, std::move(details), false};
    c.passed = error <= tolerance;
    checks.push_back(std::move(c));
    return checks.back();
  }

  /// Exact check, recorded as error 0 or 1 against tolerance 0.
  Check& require(std::string name, std::string anchor, bool ok, std::string details = {}) {
    checks.push_back({std::move(name), std::move(anchor), ok, ok ? 0.0 : 1.0, 0.0, std::move(details), true});
    return checks.back();
  }
};

inline ordered_json to_json(const Check& c) {
  ordered_json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["passed"] = c.passed;
  j["max_error"] = c.max_error;
  j["tolerance"] = c.tolerance;
  j["details"] = c.details;
  return j;
}

inline ordered_json to_json(const VerificationReport& r, bool include_timing = true) {
  ordered_json j;
  j["scenario"] = r.scenario;
  ordered_json checks = ordered_json::array();
  for (const Check& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["timing_ms"] = include_timing ? r.timing_ms : 0;
  j["config_echo"] = r.config_echo;
  return j;
}

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep integral doubles recognisable as floating point.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

inline void dump_into(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + ordered_json(it.key()).dump() + sep;
        dump_into(it.value(), out, indent, depth + 1);
      }
      out += nl + close_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        dump_into(j[i], out, indent, depth + 1);
      }
      out += nl + close_pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// JSON text with 17-significant-digit floats and insertion-ordered keys.
inline std::string dump_json(const ordered_json& j, int indent = 2) {
  std::string out;
  detail::dump_into(j, out, indent, 0);
  return out;
}

}  // namespace qgroup
