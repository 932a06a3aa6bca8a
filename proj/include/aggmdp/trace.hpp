#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aggmdp/types.hpp"

namespace aggmdp {

struct CycleInfo {
  long start = 0;   // earliest record index from which the cycle holds
  long period = 0;  // smallest period
};

/// One per-iteration record of an algorithm run. `theta` is the aggregated
/// policy table at this iteration (all recorded iterates live in Pi_phi).
/// `qhat` is the fitted aggregated Q used to improve FROM this policy; empty
/// for gradient methods and for the final record.
struct TraceRecord {
  long iter = 0;
  Eigen::MatrixXd theta;
  double j = 0.0;
  double opt_gap = 0.0;
  double stat_gap = 0.0;
  Eigen::MatrixXd qhat;
  std::vector<int> zero_mass_segments;
};

struct RunTrace {
  std::string algo;
  std::vector<TraceRecord> records;
  std::optional<CycleInfo> cycle;
  std::vector<std::string> warnings;
  double j_opt = 0.0;  // J(pi*) used for the optimality gaps
};

/// FNV-1a over the raw bytes of the table, as 16 hex digits.
std::string policy_hash(const Eigen::MatrixXd& table);

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double x);

/// CSV columns: iter, algo, J, opt_gap, stationarity_gap, cycle_period,
/// policy_hash. cycle_period is filled on the last row only. Values use
/// full-precision decimal serialization so traces diff cleanly.
void write_trace_csv(const RunTrace& trace, const std::string& path);

struct CsvTraceRow {
  long iter = 0;
  std::string algo;
  double j = 0.0;
  double opt_gap = 0.0;
  double stat_gap = 0.0;
  std::string cycle_period;
  std::string hash;
};

std::vector<CsvTraceRow> read_trace_csv(const std::string& path);

}  // namespace aggmdp
