#ifndef GNLIE_REPORT_HPP
#define GNLIE_REPORT_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "gnlie/version.hpp"

namespace gnlie {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

/// Machine-readable run report. Serialized by hand with a fixed field order
/// and 17-significant-digit numbers so that identical scene + seed + version
/// yields byte-identical output. Wall-clock timing deliberately goes to
/// stderr, never into this document.
struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::string scene_hash = "-";
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, std::string>> extras;  // command-specific payload

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  double worst_residual() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.residual);
    return w;
  }

  std::string to_json() const {
    std::string out;
    out += "{\"schema\":1,\"tool\":\"";
    out += kToolName;
    out += "\",\"version\":\"";
    out += kToolVersion;
    out += "\",\"command\":";
    out += quoted(command);
    out += ",\"seed\":" + std::to_string(seed);
    out += ",\"scene_hash\":" + quoted(scene_hash);
    out += ",\"checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
      if (i) out += ",";
      out += "{\"name\":" + quoted(checks[i].name);
      out += ",\"residual\":" + num(checks[i].residual);
      out += ",\"tolerance\":" + num(checks[i].tolerance);
      out += std::string(",\"pass\":") + (checks[i].pass ? "true" : "false") + "}";
    }
    out += "]";
    if (!extras.empty()) {
      out += ",\"extra\":{";
      for (std::size_t i = 0; i < extras.size(); ++i) {
        if (i) out += ",";
        out += quoted(extras[i].first) + ":" + quoted(extras[i].second);
      }
      out += "}";
    }
    out += std::string(",\"passed\":") + (passed() ? "true" : "false") + "}";
    out += "\n";
    return out;
  }

  std::string to_text() const {
    std::string out;
    for (const auto& c : checks) {
      out += c.pass ? "[PASS] " : "[FAIL] ";
      out += c.name + ": residual " + num(c.residual) + " (tolerance " + num(c.tolerance) + ")\n";
    }
    for (const auto& e : extras) out += e.first + ": " + e.second + "\n";
    return out;
  }

  static std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  static std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
          } else {
            out.push_back(c);
          }
      }
    }
    out += "\"";
    return out;
  }
};

}  // namespace gnlie

#endif
