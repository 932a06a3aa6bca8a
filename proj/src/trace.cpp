#include "aggmdp/trace.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace aggmdp {

std::string policy_hash(const Eigen::MatrixXd& table) {
  std::uint64_t h = 14695981039346656037ULL;
  const auto* bytes = reinterpret_cast<const unsigned char*>(table.data());
  const std::size_t n = sizeof(double) * static_cast<std::size_t>(table.size());
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_trace_csv(const RunTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
  out << "iter,algo,J,opt_gap,stationarity_gap,cycle_period,policy_hash\n";
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    const TraceRecord& rec = trace.records[k];
    const bool last = (k + 1 == trace.records.size());
    out << rec.iter << ',' << trace.algo << ',' << format_double(rec.j) << ','
        << format_double(rec.opt_gap) << ',' << format_double(rec.stat_gap) << ',';
    if (last && trace.cycle) out << trace.cycle->period;
    out << ',' << policy_hash(rec.theta) << '\n';
  }
  if (!out) throw std::runtime_error("write_trace_csv: write failed for " + path);
}

std::vector<CsvTraceRow> read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_trace_csv: cannot open " + path);
  std::vector<CsvTraceRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    CsvTraceRow row;
    std::getline(ss, field, ',');
    row.iter = std::stol(field);
    std::getline(ss, row.algo, ',');
    std::getline(ss, field, ',');
    row.j = std::stod(field);
    std::getline(ss, field, ',');
    row.opt_gap = std::stod(field);
    std::getline(ss, field, ',');
    row.stat_gap = std::stod(field);
    std::getline(ss, row.cycle_period, ',');
    std::getline(ss, row.hash, ',');
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace aggmdp
