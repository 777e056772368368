#pragma once

#include <map>
#include <string>
#include <vector>

#include "ilcount/counter.hpp"

namespace ilc {

// One bench result row. `count` holds the decimal count for ok runs and the
// status word otherwise; `config` is the canonical fingerprint of the
// configuration that produced the run.
struct BenchRecord {
  std::string instance;
  std::string count;
  std::string status;  // ok | timeout | memout | error
  double time_s = 0;
  long nodes = 0;
  long cache_hits = 0;
  long rows_removed_total = 0;
  long vars_removed_total = 0;
  std::string config;
};

// CSV with a fixed column order; fields are quoted only when needed, and
// parse_csv_line round-trips to_csv_line exactly.
std::string csv_header();
std::string to_csv_line(const BenchRecord& record);
BenchRecord parse_csv_line(const std::string& line);

struct NamedConfig {
  std::string name;
  CounterConfig config;
};

// Canonical, human-readable option fingerprint (no commas).
std::string config_fingerprint(const std::string& name,
                               const CounterConfig& cfg);

struct BenchOptions {
  double time_limit_seconds = 0;  // 0 = no limit
  std::size_t mem_limit_mb = 0;   // 0 = no limit
  int jobs = 1;
};

// Runs every instance under every config (a worker pool of `jobs` threads;
// workers share nothing). Records come back in (instance, config) order
// regardless of scheduling.
std::vector<BenchRecord> run_bench(const std::vector<std::string>& instances,
                                   const std::vector<NamedConfig>& configs,
                                   const BenchOptions& options);

struct BenchSummary {
  int total = 0;
  std::map<std::string, int> solved_by_config;
  std::map<std::string, int> fastest_wins;  // strictly fastest ok run
  std::map<std::string, double> mean_time_solved;
};

BenchSummary summarize(const std::vector<BenchRecord>& records);
std::string format_summary(const BenchSummary& summary);

}  // namespace ilc
