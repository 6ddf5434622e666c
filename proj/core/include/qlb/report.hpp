#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qlb/scenario.hpp"

namespace qlb::harness {

/// Ordered key=value pairs; keys and values must be free of spaces and
/// newlines so the record form stays line-oriented.
using FieldList = std::vector<std::pair<std::string, std::string>>;

struct RunRecord {
  uint64_t index = 0;
  FieldList fields;
};

struct RunReport {
  std::string scenario;
  std::string config_echo;  // canonical config JSON
  std::vector<RunRecord> runs;
  FieldList aggregates;
  std::vector<std::string> notes;
};

/// Fixed-precision decimal used everywhere in reports so that re-runs are
/// byte-identical.
std::string format_fixed(double value);

/// "p [lo,hi]" with a 95% normal-approximation interval on a frequency
/// observed over n trials.
std::string format_frequency(double successes, double trials);

/// Machine form: one record per line, terminated by "end".
std::string emit_records(const RunReport& report);

/// Fixed-layout human summary.
std::string emit_human(const RunReport& report);

struct ParsedReport {
  RunReport report;
  bool ok = false;
  std::string error;
};

/// Reads the record form back (used by the `report` subcommand).
ParsedReport parse_records(const std::string& text);

}  // namespace qlb::harness
