#include "qlb/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qlb::harness {

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

std::string format_frequency(double successes, double trials) {
  if (trials <= 0) return "n/a";
  double p = successes / trials;
  double half = 1.959963985 * std::sqrt(std::max(p * (1.0 - p), 0.0) / trials);
  double lo = std::max(0.0, p - half), hi = std::min(1.0, p + half);
  return format_fixed(p) + "[" + format_fixed(lo) + "," + format_fixed(hi) + "]";
}

std::string emit_records(const RunReport& report) {
  std::ostringstream os;
  os << "qlbsim-report v1\n";
  os << "scenario " << report.scenario << '\n';
  os << "config " << report.config_echo << '\n';
  for (const RunRecord& run : report.runs) {
    os << "run index=" << run.index;
    for (const auto& [key, value] : run.fields) os << ' ' << key << '=' << value;
    os << '\n';
  }
  for (const auto& [key, value] : report.aggregates)
    os << "aggregate " << key << '=' << value << '\n';
  for (const std::string& note : report.notes) os << "note " << note << '\n';
  os << "end\n";
  return os.str();
}

std::string emit_human(const RunReport& report) {
  std::ostringstream os;
  os << "Scenario " << report.scenario << '\n';
  os << std::string(64, '-') << '\n';
  char line[160];
  for (const auto& [key, value] : report.aggregates) {
    std::snprintf(line, sizeof line, "  %-32s %s", key.c_str(), value.c_str());
    os << line << '\n';
  }
  os << std::string(64, '-') << '\n';
  os << "  runs: " << report.runs.size() << '\n';
  for (const std::string& note : report.notes) os << "  note: " << note << '\n';
  return os.str();
}

ParsedReport parse_records(const std::string& text) {
  ParsedReport out;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "qlbsim-report v1") {
    out.error = "not a qlbsim record report";
    return out;
  }
  bool ended = false;
  while (std::getline(in, line)) {
    if (line == "end") {
      ended = true;
      break;
    }
    auto space = line.find(' ');
    std::string tag = line.substr(0, space);
    std::string rest = space == std::string::npos ? "" : line.substr(space + 1);
    if (tag == "scenario") {
      out.report.scenario = rest;
    } else if (tag == "config") {
      out.report.config_echo = rest;
    } else if (tag == "note") {
      out.report.notes.push_back(rest);
    } else if (tag == "aggregate") {
      auto eq = rest.find('=');
      if (eq == std::string::npos) {
        out.error = "malformed aggregate line";
        return out;
      }
      out.report.aggregates.emplace_back(rest.substr(0, eq), rest.substr(eq + 1));
    } else if (tag == "run") {
      RunRecord run;
      std::istringstream fields(rest);
      std::string token;
      bool first = true;
      while (fields >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) {
          out.error = "malformed run field '" + token + "'";
          return out;
        }
        std::string key = token.substr(0, eq), value = token.substr(eq + 1);
        if (first && key == "index") {
          run.index = std::stoull(value);
        } else {
          run.fields.emplace_back(key, value);
        }
        first = false;
      }
      out.report.runs.push_back(std::move(run));
    } else {
      out.error = "unknown record tag '" + tag + "'";
      return out;
    }
  }
  if (!ended) {
    out.error = "missing end marker";
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace qlb::harness
