#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

namespace failoc {

// One measurement emitted by an experiment run. Sorting on the fixed key
// below makes output byte-identical regardless of execution order.
struct ResultRecord {
  std::string experiment;
  std::string model;
  long instance = 0;  // -1 marks a per-model aggregate
  std::uint64_t seed = 0;
  int mu = 0;
  int k = 0;
  std::string mechanism;
  std::string metric;
  double value = 0.0;

  bool operator==(const ResultRecord&) const = default;
};

inline bool record_before(const ResultRecord& a, const ResultRecord& b) {
  return std::tie(a.experiment, a.model, a.instance, a.mu, a.k, a.mechanism, a.metric) <
         std::tie(b.experiment, b.model, b.instance, b.mu, b.k, b.mechanism, b.metric);
}

// Shortest round-trippable decimal for the value column.
inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline const char* kRecordHeader = "experiment,model,instance,seed,mu,k,mechanism,metric,value";

inline void write_records_csv(std::ostream& os, std::vector<ResultRecord> records) {
  std::sort(records.begin(), records.end(), record_before);
  os << kRecordHeader << '\n';
  for (const auto& r : records) {
    os << r.experiment << ',' << r.model << ',' << r.instance << ',' << r.seed << ',' << r.mu
       << ',' << r.k << ',' << r.mechanism << ',' << r.metric << ',' << format_value(r.value)
       << '\n';
  }
}

}  // namespace failoc
