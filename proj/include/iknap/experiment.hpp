#pragma once

#include <map>
#include <string>
#include <vector>

#include "iknap/rational.hpp"

namespace iknap {

/// One CSV row. Exact values travel as fraction strings next to decimal
/// renderings; cells that do not apply hold "-". No field may contain a
/// comma, so the file splits cleanly.
struct ResultRow {
  std::string instance;
  std::string seed = "-";
  std::string eps = "-";
  std::string algorithm;
  std::string value = "-";
  std::string value_dec = "-";
  std::string oracle = "-";
  std::string oracle_dec = "-";
  std::string ratio = "-";
  std::string ratio_dec = "-";
  long pieces_enum = 0;
  long pieces_pruned = 0;
  long pieces_solved = 0;
  long wall_ms = 0;
  std::string guarantee;
};

std::string csv_header();
std::string csv_line(const ResultRow& row);

struct SuiteResult {
  std::string name;
  std::string csv;  // header, per-instance rows, summary row
  bool ok = true;
  std::vector<std::string> failures;
  /// Named pass/fail outcomes the acceptance binaries report on.
  std::map<std::string, bool> checks;
  /// Human-readable measurements (worst ratios, counts, artifact paths).
  std::map<std::string, std::string> details;
};

std::vector<std::string> suite_names();

/// Runs a named suite. Instances are dispatched to a small worker pool and
/// rows come out in instance order regardless of thread count. A nonempty
/// csv_path streams each row to disk with a flush as soon as it is ready.
/// size_override > 0 shrinks the instance count (the determinism suite
/// reruns shrunken suites and diffs their CSV without the timing column).
SuiteResult run_suite(const std::string& name, const std::string& csv_path = "",
                      int size_override = 0);

/// The CSV with the wall_ms column blanked, for byte comparisons.
std::string strip_timing(const std::string& csv);

}  // namespace iknap
