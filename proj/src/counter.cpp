#include "ilcount/counter.hpp"

#include <unistd.h>

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdio>

#include "ilcount/graph.hpp"
#include "ilcount/lp.hpp"

namespace ilc {

CacheKey cache_key(const System& s) {
  CacheKey key;
  std::string& out = key.bytes;
  encode_u32(out, static_cast<std::uint32_t>(s.num_vars()));
  for (const VarBounds& vb : s.bounds()) {
    encode_u32(out, static_cast<std::uint32_t>(vb.var));
    encode_int(out, vb.lower);
    encode_int(out, vb.upper);
  }
  std::vector<const Row*> rows;
  rows.reserve(s.num_rows());
  for (const auto& entry : s.rows()) rows.push_back(&entry.row);
  std::sort(rows.begin(), rows.end(), [](const Row* a, const Row* b) {
    const std::size_t n = std::min(a->terms.size(), b->terms.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (a->terms[i].var != b->terms[i].var) {
        return a->terms[i].var < b->terms[i].var;
      }
    }
    if (a->terms.size() != b->terms.size()) {
      return a->terms.size() < b->terms.size();
    }
    for (std::size_t i = 0; i < n; ++i) {
      const int c = cmp(a->terms[i].coeff, b->terms[i].coeff);
      if (c != 0) return c < 0;
    }
    return a->rhs < b->rhs;
  });
  encode_u32(out, static_cast<std::uint32_t>(rows.size()));
  for (const Row* row : rows) {
    encode_u32(out, static_cast<std::uint32_t>(row->terms.size()));
    for (const Term& t : row->terms) {
      encode_u32(out, static_cast<std::uint32_t>(t.var));
      encode_int(out, t.coeff);
    }
    encode_int(out, row->rhs);
  }
  return key;
}

Cache::Cache(std::size_t capacity_bytes) : capacity_(capacity_bytes) {}

std::optional<BigInt> Cache::probe(const CacheKey& key) {
  auto it = index_.find(key.bytes);
  if (it == index_.end()) return std::nullopt;
  lru_.splice(lru_.begin(), lru_, it->second.lru_pos);
  return it->second.count;
}

void Cache::store(const CacheKey& key, const BigInt& count) {
  auto it = index_.find(key.bytes);
  if (it != index_.end()) {
    assert(it->second.count == count && "cache overwrite with a new count");
    lru_.splice(lru_.begin(), lru_, it->second.lru_pos);
    return;
  }
  const std::size_t entry_bytes =
      key.bytes.size() + mpz_size(count.get_mpz_t()) * sizeof(mp_limb_t) + 96;
  auto [pos, inserted] = index_.emplace(key.bytes, Item{count, entry_bytes, {}});
  lru_.push_front(&pos->first);
  pos->second.lru_pos = lru_.begin();
  bytes_ += entry_bytes;
  evict_to_capacity();
}

void Cache::evict_to_capacity() {
  while (bytes_ > capacity_ && !lru_.empty()) {
    const std::string* victim = lru_.back();
    lru_.pop_back();
    auto it = index_.find(*victim);
    assert(it != index_.end());
    bytes_ -= it->second.bytes;
    index_.erase(it);
  }
}

std::optional<BigInt> cache_probe(Cache& cache, const System& s) {
  return cache.probe(cache_key(s));
}

void cache_store(Cache& cache, const System& s, const BigInt& count) {
  cache.store(cache_key(s), count);
}

namespace {

std::size_t current_rss_bytes() {
  std::FILE* f = std::fopen("/proc/self/statm", "r");
  if (!f) return 0;
  long total = 0;
  long resident = 0;
  const int got = std::fscanf(f, "%ld %ld", &total, &resident);
  std::fclose(f);
  if (got != 2) return 0;
  return static_cast<std::size_t>(resident) *
         static_cast<std::size_t>(sysconf(_SC_PAGESIZE));
}

VarId pick_branch_variable(const System& s, SelectMode mode) {
  switch (mode) {
    case SelectMode::Betweenness:
      return select_variable(s);
    case SelectMode::Degree: {
      const PrimalGraph g = build_primal_graph(s);
      VarId best = g.vertices.front();
      std::size_t best_degree = g.adjacency.at(best).size();
      for (VarId v : g.vertices) {
        if (g.adjacency.at(v).size() > best_degree) {
          best = v;
          best_degree = g.adjacency.at(v).size();
        }
      }
      return best;
    }
    case SelectMode::First:
      return s.bounds().front().var;
  }
  return s.bounds().front().var;
}

class Searcher {
 public:
  Searcher(const CounterConfig& cfg)
      : cfg_(cfg),
        cache_(cfg.cache_capacity_bytes),
        start_(std::chrono::steady_clock::now()) {
    if (cfg.time_limit_seconds) {
      deadline_ = start_ + std::chrono::duration_cast<
                               std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(
                                   *cfg.time_limit_seconds));
    }
  }

  CountResult run(const System& root) {
    BigInt n = visit(root, true);
    stats_.cache_entries = static_cast<long>(cache_.entry_count());
    stats_.wall_seconds = elapsed_seconds();
    return CountResult{std::move(n), std::move(stats_)};
  }

 private:
  double elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  void check_limits() {
    if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
      stats_.wall_seconds = elapsed_seconds();
      throw ResourceLimitError(ResourceLimitError::Kind::Timeout, stats_);
    }
    if (cfg_.memory_limit_bytes && (stats_.nodes & 0xfff) == 0 &&
        current_rss_bytes() > *cfg_.memory_limit_bytes) {
      stats_.wall_seconds = elapsed_seconds();
      throw ResourceLimitError(ResourceLimitError::Kind::Memout, stats_);
    }
  }

  BigInt visit(const System& input, bool is_root) {
    ++stats_.nodes;
    check_limits();

    std::optional<CacheKey> raw_key;
    if (cfg_.cache_enabled && cfg_.probe_before_simplify) {
      raw_key = cache_key(input);
      if (auto hit = cache_.probe(*raw_key)) {
        ++stats_.cache_hits;
        return verified_hit(input, *hit);
      }
    }

    SimplifyConfig scfg = cfg_.simplify;
    scfg.remove_individual_rows_lp =
        cfg_.simplify.remove_individual_rows_lp && (is_root || cfg_.lp_per_node);
    SimplifyResult simplified = simplify(input, scfg, lp_);
    stats_.simplify_totals.merge(simplified.log);
    System& sys = simplified.system;

    if (sys.status() == SystemStatus::Valid) return valid_count(sys);
    if (sys.inconsistent()) return 0;

    // Rows whose support emptied out survive here only when row removal is
    // disabled; decomposition needs them gone. An empty row is pure
    // contradiction (rhs < 0) or pure tautology.
    {
      std::vector<RowId> empty_rows;
      for (const auto& entry : sys.rows()) {
        if (!entry.row.terms.empty()) continue;
        if (entry.row.rhs < 0) return 0;
        empty_rows.push_back(entry.id);
      }
      for (RowId id : empty_rows) sys.remove_row(id);
      if (sys.status() == SystemStatus::Valid) return valid_count(sys);
    }

    std::optional<CacheKey> canonical_key;
    if (cfg_.cache_enabled && !cfg_.probe_before_simplify) {
      canonical_key = cache_key(sys);
      if (auto hit = cache_.probe(*canonical_key)) {
        ++stats_.cache_hits;
        return verified_hit(sys, *hit);
      }
    }

    BigInt n;
    const Partition partition = decompose(sys);
    if (partition.components.size() >= 2) {
      ++stats_.decompositions;
      n = 1;
      for (const Component& component : partition.components) {
        if (n == 0) break;
        n *= visit(restrict_to_component(sys, component), false);
      }
    } else {
      ++stats_.branchings;
      const VarId var = pick_branch_variable(sys, cfg_.select);
      const VarBounds bounds = *sys.find_var(var);
      n = 0;
      for (BigInt v = bounds.lower; v <= bounds.upper; ++v) {
        n += visit(assign(sys, var, v), false);
      }
    }

    if (cfg_.cache_enabled) {
      cache_.store(cfg_.probe_before_simplify ? *raw_key : *canonical_key, n);
    }
    return n;
  }

  // Recomputes ~1% of hits from scratch (no cache) and cross-checks.
  BigInt verified_hit(const System& s, const BigInt& hit) {
    if (cfg_.verify_cache_hits && stats_.cache_hits % 100 == 1) {
      CounterConfig vcfg = cfg_;
      vcfg.cache_enabled = false;
      vcfg.verify_cache_hits = false;
      vcfg.time_limit_seconds.reset();
      vcfg.memory_limit_bytes.reset();
      Searcher verifier(vcfg);
      const CountResult recount = verifier.run(s);
      if (recount.count != hit) {
        throw std::logic_error("cache verification failed: stored count "
                               "disagrees with recomputation");
      }
    }
    return hit;
  }

  const CounterConfig& cfg_;
  LpSolver lp_;
  Cache cache_;
  CounterStats stats_;
  std::chrono::steady_clock::time_point start_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace

CountResult count(const System& s, const CounterConfig& cfg) {
  if (cfg.cache_enabled && cfg.cache_capacity_bytes == 0) {
    throw std::invalid_argument("cache enabled with zero capacity");
  }
  Searcher searcher(cfg);
  return searcher.run(s);
}

}  // namespace ilc
