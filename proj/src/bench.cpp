#include "ilcount/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ilcount/instance_io.hpp"

namespace ilc {

namespace {

bool needs_quoting(const std::string& field) {
  return field.find_first_of(",\"\n") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
  if (!needs_quoting(field)) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string format_time(double seconds) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << seconds;
  return out.str();
}

}  // namespace

std::string csv_header() {
  return "instance,count,status,time_s,nodes,cache_hits,rows_removed_total,"
         "vars_removed_total,config";
}

std::string to_csv_line(const BenchRecord& r) {
  std::string out;
  append_field(out, r.instance);
  out += ',';
  append_field(out, r.count);
  out += ',';
  append_field(out, r.status);
  out += ',';
  out += format_time(r.time_s);
  out += ',';
  out += std::to_string(r.nodes);
  out += ',';
  out += std::to_string(r.cache_hits);
  out += ',';
  out += std::to_string(r.rows_removed_total);
  out += ',';
  out += std::to_string(r.vars_removed_total);
  out += ',';
  append_field(out, r.config);
  return out;
}

BenchRecord parse_csv_line(const std::string& line) {
  const auto fields = split_csv(line);
  if (fields.size() != 9) {
    throw std::invalid_argument("CSV record needs 9 fields, got " +
                                std::to_string(fields.size()));
  }
  BenchRecord r;
  r.instance = fields[0];
  r.count = fields[1];
  r.status = fields[2];
  r.time_s = std::stod(fields[3]);
  r.nodes = std::stol(fields[4]);
  r.cache_hits = std::stol(fields[5]);
  r.rows_removed_total = std::stol(fields[6]);
  r.vars_removed_total = std::stol(fields[7]);
  r.config = fields[8];
  return r;
}

std::string config_fingerprint(const std::string& name,
                               const CounterConfig& cfg) {
  std::ostringstream out;
  out << name << " cache=" << (cfg.cache_enabled ? "on" : "off");
  out << " select=";
  switch (cfg.select) {
    case SelectMode::Betweenness: out << "betweenness"; break;
    case SelectMode::Degree: out << "degree"; break;
    case SelectMode::First: out << "first"; break;
  }
  out << " lp=" << (cfg.simplify.remove_individual_rows_lp
                        ? (cfg.lp_per_node ? "per-node" : "root")
                        : "off");
  out << " probe=" << (cfg.probe_before_simplify ? "pre" : "post");
  std::string disabled;
  for (int i = 0; i < kTechniqueCount; ++i) {
    const Technique t = static_cast<Technique>(i);
    if (!cfg.simplify.technique_enabled(t)) {
      if (!disabled.empty()) disabled += '+';
      disabled += technique_name(t);
    }
  }
  out << " disable=" << (disabled.empty() ? "-" : disabled);
  return out.str();
}

namespace {

BenchRecord run_one(const std::string& path, const NamedConfig& named,
                    const BenchOptions& options) {
  BenchRecord record;
  record.instance = path;
  record.config = config_fingerprint(named.name, named.config);
  CounterConfig cfg = named.config;
  if (options.time_limit_seconds > 0) {
    cfg.time_limit_seconds = options.time_limit_seconds;
  }
  if (options.mem_limit_mb > 0) {
    cfg.memory_limit_bytes = options.mem_limit_mb * std::size_t(1) * 1024 * 1024;
    cfg.cache_capacity_bytes =
        std::min(cfg.cache_capacity_bytes, *cfg.memory_limit_bytes / 2);
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };
  try {
    const System s = load_instance(path);
    const CountResult result = count(s, cfg);
    record.count = result.count.get_str();
    record.status = "ok";
    record.time_s = elapsed();
    record.nodes = result.stats.nodes;
    record.cache_hits = result.stats.cache_hits;
    record.rows_removed_total = result.stats.simplify_totals.rows_removed_total();
    record.vars_removed_total = result.stats.simplify_totals.vars_removed_total();
  } catch (const ResourceLimitError& e) {
    record.status = e.kind() == ResourceLimitError::Kind::Timeout ? "timeout"
                                                                  : "memout";
    record.count = record.status;
    record.time_s = elapsed();
    record.nodes = e.stats().nodes;
    record.cache_hits = e.stats().cache_hits;
    record.rows_removed_total = e.stats().simplify_totals.rows_removed_total();
    record.vars_removed_total = e.stats().simplify_totals.vars_removed_total();
  } catch (const std::exception&) {
    record.status = "error";
    record.count = "error";
    record.time_s = elapsed();
  }
  return record;
}

}  // namespace

std::vector<BenchRecord> run_bench(const std::vector<std::string>& instances,
                                   const std::vector<NamedConfig>& configs,
                                   const BenchOptions& options) {
  struct Task {
    const std::string* instance;
    const NamedConfig* config;
  };
  std::vector<Task> tasks;
  tasks.reserve(instances.size() * configs.size());
  for (const auto& instance : instances) {
    for (const auto& config : configs) {
      tasks.push_back(Task{&instance, &config});
    }
  }
  std::vector<BenchRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  const int jobs = std::max(1, options.jobs);
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < tasks.size();
         i = next.fetch_add(1)) {
      records[i] = run_one(*tasks[i].instance, *tasks[i].config, options);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

BenchSummary summarize(const std::vector<BenchRecord>& records) {
  BenchSummary summary;
  std::map<std::string, std::pair<double, int>> time_acc;
  std::map<std::string, std::vector<const BenchRecord*>> by_instance;
  std::set<std::string> seen_config;
  for (const BenchRecord& r : records) {
    seen_config.insert(r.config);
    by_instance[r.instance].push_back(&r);
    if (r.status == "ok") {
      ++summary.solved_by_config[r.config];
      time_acc[r.config].first += r.time_s;
      ++time_acc[r.config].second;
    }
  }
  summary.total = static_cast<int>(by_instance.size());
  for (const std::string& config : seen_config) {
    summary.solved_by_config.try_emplace(config, 0);
    summary.fastest_wins.try_emplace(config, 0);
  }
  for (const auto& [instance, runs] : by_instance) {
    const BenchRecord* best = nullptr;
    bool unique = true;
    for (const BenchRecord* r : runs) {
      if (r->status != "ok") continue;
      if (!best || r->time_s < best->time_s) {
        best = r;
        unique = true;
      } else if (r->time_s == best->time_s) {
        unique = false;
      }
    }
    if (best && unique) ++summary.fastest_wins[best->config];
  }
  for (const auto& [config, acc] : time_acc) {
    summary.mean_time_solved[config] =
        acc.second > 0 ? acc.first / acc.second : 0;
  }
  return summary;
}

std::string format_summary(const BenchSummary& summary) {
  std::ostringstream out;
  out << "instances: " << summary.total << '\n';
  for (const auto& [config, solved] : summary.solved_by_config) {
    out << "config: " << config << '\n';
    out << "  solved: " << solved << '/' << summary.total << '\n';
    const auto wins = summary.fastest_wins.find(config);
    if (summary.solved_by_config.size() > 1 &&
        wins != summary.fastest_wins.end()) {
      out << "  fastest_wins: " << wins->second << '\n';
    }
    const auto mean = summary.mean_time_solved.find(config);
    if (mean != summary.mean_time_solved.end()) {
      out << "  mean_time_solved_s: " << format_time(mean->second) << '\n';
    } else {
      out << "  mean_time_solved_s: -\n";
    }
  }
  return out.str();
}

}  // namespace ilc
