#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ilcount/bench.hpp"
#include "ilcount/counter.hpp"
#include "ilcount/generator.hpp"
#include "ilcount/instance_io.hpp"
#include "ilcount/oracle.hpp"

namespace {

// Exit codes: 0 ok, 1 generic error, 2 parse error, 3 timeout, 4 memout,
// 5 --seed-check disagreement.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitMemout = 4;
constexpr int kExitCheckFailed = 5;

struct CountFlags {
  bool no_cache = false;
  bool no_lp = false;
  bool lp_per_node = false;
  bool probe_pre = false;
  std::string disable;
  std::string select = "betweenness";
  double time_limit = 0;
  std::size_t mem_limit_mb = 0;
  std::size_t cache_mb = 0;
  bool seed_check = false;
  bool use_oracle = false;
  std::string stats_json;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

bool apply_disable_list(ilc::CounterConfig& cfg, const std::string& list,
                        std::string& error) {
  for (const std::string& name : split(list, ',')) {
    if (name == "all") {
      cfg.simplify = ilc::SimplifyConfig::all_disabled();
      continue;
    }
    ilc::Technique t;
    if (!ilc::technique_from_name(name, t)) {
      error = "unknown technique '" + name + "'";
      return false;
    }
    cfg.simplify.technique_enabled(t) = false;
  }
  return true;
}

bool apply_select(ilc::CounterConfig& cfg, const std::string& mode,
                  std::string& error) {
  if (mode == "betweenness") {
    cfg.select = ilc::SelectMode::Betweenness;
  } else if (mode == "degree") {
    cfg.select = ilc::SelectMode::Degree;
  } else if (mode == "first") {
    cfg.select = ilc::SelectMode::First;
  } else {
    error = "unknown selection mode '" + mode + "'";
    return false;
  }
  return true;
}

bool build_config(const CountFlags& flags, ilc::CounterConfig& cfg,
                  std::string& error) {
  cfg = ilc::CounterConfig{};
  cfg.cache_enabled = !flags.no_cache;
  if (flags.no_lp) cfg.simplify.remove_individual_rows_lp = false;
  cfg.lp_per_node = flags.lp_per_node;
  cfg.probe_before_simplify = flags.probe_pre;
  if (!flags.disable.empty() && !apply_disable_list(cfg, flags.disable, error)) {
    return false;
  }
  if (!apply_select(cfg, flags.select, error)) return false;
  if (flags.time_limit > 0) cfg.time_limit_seconds = flags.time_limit;
  if (flags.mem_limit_mb > 0) {
    cfg.memory_limit_bytes = flags.mem_limit_mb * std::size_t(1024) * 1024;
    cfg.cache_capacity_bytes =
        std::min(cfg.cache_capacity_bytes, *cfg.memory_limit_bytes / 2);
  }
  if (flags.cache_mb > 0) {
    cfg.cache_capacity_bytes = flags.cache_mb * std::size_t(1024) * 1024;
  }
  return true;
}

void print_stats(std::ostream& out, const ilc::CounterStats& stats) {
  out << "nodes=" << stats.nodes << '\n';
  out << "cache_hits=" << stats.cache_hits << '\n';
  out << "cache_entries=" << stats.cache_entries << '\n';
  out << "decompositions=" << stats.decompositions << '\n';
  out << "branchings=" << stats.branchings << '\n';
  for (int i = 0; i < ilc::kTechniqueCount; ++i) {
    const auto& c = stats.simplify_totals.per_technique[i];
    const char* name = ilc::technique_name(static_cast<ilc::Technique>(i));
    out << name << ".rows_removed=" << c.rows_removed << '\n';
    out << name << ".vars_removed=" << c.vars_removed << '\n';
    out << name << ".bounds_tightened=" << c.bounds_tightened << '\n';
    out << name << ".coeffs_strengthened=" << c.coeffs_strengthened << '\n';
  }
  out << "wall_seconds=" << stats.time_format_guard << '\n';
}

void write_stats_json(const std::string& path, const std::string& count,
                      const ilc::CounterStats& stats) {
  nlohmann::json j;
  j["count"] = count;
  j["nodes"] = stats.nodes;
  j["cache_hits"] = stats.cache_hits;
  j["cache_entries"] = stats.cache_entries;
  j["decompositions"] = stats.decompositions;
  j["branchings"] = stats.branchings;
  j["wall_seconds"] = stats.wall_seconds;
  nlohmann::json techniques;
  for (int i = 0; i < ilc::kTechniqueCount; ++i) {
    const auto& c = stats.simplify_totals.per_technique[i];
    nlohmann::json entry;
    entry["rows_removed"] = c.rows_removed;
    entry["vars_removed"] = c.vars_removed;
    entry["bounds_tightened"] = c.bounds_tightened;
    entry["coeffs_strengthened"] = c.coeffs_strengthened;
    techniques[ilc::technique_name(static_cast<ilc::Technique>(i))] = entry;
  }
  j["techniques"] = techniques;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write stats file: " + path);
  out << j.dump(2) << '\n';
}

int cmd_count(const std::string& path, const CountFlags& flags) {
  ilc::CounterConfig cfg;
  std::string error;
  if (!build_config(flags, cfg, error)) {
    std::cerr << "error: " << error << '\n';
    return kExitError;
  }
  ilc::System s;
  try {
    s = ilc::load_instance(path);
  } catch (const ilc::ParseError& e) {
    std::cerr << "parse error: " << path << ": " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  if (flags.use_oracle) {
    const auto counted = ilc::oracle_count(s);
    if (!counted) {
      std::cerr << "error: oracle budget exceeded\n";
      return kExitError;
    }
    std::cout << counted->get_str() << std::endl;
    return kExitOk;
  }

  try {
    const ilc::CountResult result = ilc::count(s, cfg);
    print_stats(std::cerr, result.stats);
    if (!flags.stats_json.empty()) {
      write_stats_json(flags.stats_json, result.count.get_str(), result.stats);
    }
    if (flags.seed_check) {
      const auto oracle = ilc::oracle_count(s);
      if (oracle && *oracle != result.count) {
        std::cerr << "seed-check FAILED: counter=" << result.count.get_str()
                  << " oracle=" << oracle->get_str() << '\n';
        return kExitCheckFailed;
      }
      std::cerr << (oracle ? "seed-check ok\n"
                           : "seed-check skipped (budget exceeded)\n");
    }
    std::cout << result.count.get_str() << std::endl;
    return kExitOk;
  } catch (const ilc::ResourceLimitError& e) {
    print_stats(std::cerr, e.stats());
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ilc::ResourceLimitError::Kind::Timeout ? kExitTimeout
                                                              : kExitMemout;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_generate(const ilc::GenParams& params, const std::string& out_path,
                 int instances) {
  try {
    if (instances <= 1) {
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      out << ilc::render_generated(params);
      std::cout << out_path << '\n';
      return kExitOk;
    }
    std::filesystem::create_directories(out_path);
    for (int i = 0; i < instances; ++i) {
      ilc::GenParams p = params;
      p.seed = params.seed + static_cast<std::uint64_t>(i);
      const std::string file =
          out_path + "/inst_" + std::to_string(p.seed) + ".ilc";
      std::ofstream out(file);
      if (!out) throw std::runtime_error("cannot write " + file);
      out << ilc::render_generated(p);
      std::cout << file << '\n';
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}

// Config spec: NAME[:token,token,...], tokens are no-cache, no-lp,
// lp-per-node, probe-pre, select=<mode>, disable=<t1+t2|all>.
bool parse_config_spec(const std::string& spec, ilc::NamedConfig& out,
                       std::string& error) {
  const std::size_t colon = spec.find(':');
  out.name = spec.substr(0, colon);
  out.config = ilc::CounterConfig{};
  if (out.name.empty()) {
    error = "config spec needs a name";
    return false;
  }
  if (colon == std::string::npos) return true;
  for (const std::string& token : split(spec.substr(colon + 1), ',')) {
    if (token == "no-cache") {
      out.config.cache_enabled = false;
    } else if (token == "no-lp") {
      out.config.simplify.remove_individual_rows_lp = false;
    } else if (token == "lp-per-node") {
      out.config.lp_per_node = true;
    } else if (token == "probe-pre") {
      out.config.probe_before_simplify = true;
    } else if (token.rfind("select=", 0) == 0) {
      if (!apply_select(out.config, token.substr(7), error)) return false;
    } else if (token.rfind("disable=", 0) == 0) {
      std::string list = token.substr(8);
      for (char& c : list) {
        if (c == '+') c = ',';
      }
      if (!apply_disable_list(out.config, list, error)) return false;
    } else {
      error = "unknown config token '" + token + "'";
      return false;
    }
  }
  return true;
}

int cmd_bench(const std::string& dir, const std::vector<std::string>& specs,
              const std::string& csv_path, const ilc::BenchOptions& options) {
  std::vector<std::string> instances;
  try {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".ilc") {
        instances.push_back(entry.path().string());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  std::sort(instances.begin(), instances.end());
  if (instances.empty()) {
    std::cerr << "error: no .ilc instances under " << dir << '\n';
    return kExitError;
  }

  std::vector<ilc::NamedConfig> configs;
  if (specs.empty()) {
    configs.push_back(ilc::NamedConfig{"default", ilc::CounterConfig{}});
  }
  for (const std::string& spec : specs) {
    ilc::NamedConfig named;
    std::string error;
    if (!parse_config_spec(spec, named, error)) {
      std::cerr << "error: " << error << '\n';
      return kExitError;
    }
    configs.push_back(std::move(named));
  }

  const auto records = ilc::run_bench(instances, configs, options);
  try {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    out << ilc::csv_header() << '\n';
    for (const auto& record : records) out << ilc::to_csv_line(record) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  std::cout << ilc::format_summary(ilc::summarize(records));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ilcount: exact model counting for integer linear constraints"};
  app.require_subcommand(1);

  auto* count_cmd = app.add_subcommand("count", "count one instance file");
  std::string count_path;
  CountFlags flags;
  count_cmd->add_option("instance", count_path, "instance file (.ilc)")
      ->required();
  count_cmd->add_flag("--no-cache", flags.no_cache, "disable the cache");
  count_cmd->add_flag("--no-lp", flags.no_lp, "disable LP row removal");
  count_cmd->add_flag("--lp-per-node", flags.lp_per_node,
                      "run LP row removal in every search node");
  count_cmd->add_flag("--probe-pre", flags.probe_pre,
                      "probe the cache before simplification (ablation)");
  count_cmd->add_option("--disable", flags.disable,
                        "comma list of techniques to disable, or 'all'");
  count_cmd->add_option("--select", flags.select,
                        "branch variable selection: betweenness|degree|first");
  count_cmd->add_option("--time-limit", flags.time_limit, "seconds, 0 = none");
  count_cmd->add_option("--mem-limit", flags.mem_limit_mb, "MB, 0 = none");
  count_cmd->add_option("--cache-mb", flags.cache_mb, "cache budget in MB");
  count_cmd->add_flag("--seed-check", flags.seed_check,
                      "cross-check the count against the oracle when feasible");
  count_cmd->add_flag("--oracle", flags.use_oracle,
                      "enumerate with the brute-force oracle instead");
  count_cmd->add_option("--stats-json", flags.stats_json,
                        "write statistics as JSON to this path");

  auto* gen_cmd = app.add_subcommand("generate", "generate random instances");
  ilc::GenParams params;
  std::string gen_out = "instance.ilc";
  int gen_instances = 1;
  gen_cmd->add_option("--n", params.num_vars, "variables")->required();
  gen_cmd->add_option("--m", params.num_rows, "rows")->required();
  gen_cmd->add_option("--l", params.max_terms, "max terms per row")->required();
  gen_cmd->add_option("--seed", params.seed, "seed (default 1)");
  gen_cmd->add_option("--domain-lower", params.domain_lower, "default -8");
  gen_cmd->add_option("--domain-upper", params.domain_upper, "default 7");
  gen_cmd->add_option("--coeff-lower", params.coeff_lower, "default -10");
  gen_cmd->add_option("--coeff-upper", params.coeff_upper, "default 10");
  gen_cmd->add_option("--rhs-lower", params.rhs_lower, "default -20");
  gen_cmd->add_option("--rhs-upper", params.rhs_upper, "default 20");
  gen_cmd->add_option("-o,--out", gen_out,
                      "output file, or directory when --count > 1");
  gen_cmd->add_option("--count", gen_instances,
                      "number of instances (consecutive seeds)");

  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark directory");
  std::string bench_dir;
  std::string bench_csv = "bench.csv";
  std::vector<std::string> bench_specs;
  ilc::BenchOptions bench_options;
  bench_cmd->add_option("dir", bench_dir, "directory of .ilc instances")
      ->required();
  bench_cmd->add_option("--csv", bench_csv, "CSV output path");
  bench_cmd->add_option("--config", bench_specs,
                        "config spec NAME[:token,...]; repeatable");
  bench_cmd->add_option("--time-limit", bench_options.time_limit_seconds,
                        "per-run seconds, 0 = none");
  bench_cmd->add_option("--mem-limit", bench_options.mem_limit_mb,
                        "per-run MB, 0 = none");
  bench_cmd->add_option("--jobs", bench_options.jobs,
                        "worker threads (default 1 for timing fidelity)");

  CLI11_PARSE(app, argc, argv);

  if (count_cmd->parsed()) return cmd_count(count_path, flags);
  if (gen_cmd->parsed()) return cmd_generate(params, gen_out, gen_instances);
  if (bench_cmd->parsed()) {
    return cmd_bench(bench_dir, bench_specs, bench_csv, bench_options);
  }
  return kExitError;
}
