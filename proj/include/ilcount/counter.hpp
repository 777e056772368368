#pragma once

#include <list>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "ilcount/simplify.hpp"
#include "ilcount/system.hpp"

namespace ilc {

// Canonical byte string of a system: variables ascending with their bounds,
// then the rows as a multiset (sorted lexicographically by support,
// coefficients, rhs; row ids excluded) in the fixed-width-prefixed
// big-endian integer encoding. Injective, so equal keys mean equal counts.
struct CacheKey {
  std::string bytes;
  bool operator==(const CacheKey&) const = default;
};

CacheKey cache_key(const System& s);

// Component cache: key -> exact count, with byte accounting and
// least-recently-used eviction once the budget is exceeded.
class Cache {
 public:
  static constexpr std::size_t kDefaultCapacity = std::size_t(8) << 30;

  explicit Cache(std::size_t capacity_bytes = kDefaultCapacity);

  std::optional<BigInt> probe(const CacheKey& key);
  void store(const CacheKey& key, const BigInt& count);

  std::size_t entry_count() const { return index_.size(); }
  std::size_t byte_size() const { return bytes_; }
  std::size_t capacity() const { return capacity_; }

 private:
  struct Item {
    BigInt count;
    std::size_t bytes;
    std::list<const std::string*>::iterator lru_pos;
  };

  void evict_to_capacity();

  std::size_t capacity_;
  std::size_t bytes_ = 0;
  std::unordered_map<std::string, Item> index_;
  std::list<const std::string*> lru_;  // front = most recently used
};

std::optional<BigInt> cache_probe(Cache& cache, const System& s);
void cache_store(Cache& cache, const System& s, const BigInt& count);

enum class SelectMode { Betweenness, Degree, First };

struct CounterConfig {
  SimplifyConfig simplify;
  bool cache_enabled = true;
  std::size_t cache_capacity_bytes = Cache::kDefaultCapacity;
  // LP row removal runs at the root whenever its technique is enabled; the
  // flag below additionally enables it inside search nodes.
  bool lp_per_node = false;
  SelectMode select = SelectMode::Betweenness;
  // Ablation: probe/store on the raw pre-simplification key instead of the
  // canonical post-simplification key.
  bool probe_before_simplify = false;
  // Self-check: recompute roughly 1% of cache hits without the cache and
  // compare; a mismatch throws std::logic_error.
  bool verify_cache_hits = false;
  std::optional<double> time_limit_seconds;
  std::optional<std::size_t> memory_limit_bytes;
};

struct CounterStats {
  long nodes = 0;
  long cache_hits = 0;
  long cache_entries = 0;
  long decompositions = 0;
  long branchings = 0;
  SimplifyLog simplify_totals;  // counters only, actions stay empty
  double wall_seconds = 0;
};

struct CountResult {
  BigInt count;
  CounterStats stats;
};

// Cooperative time/memory limit breach, checked at node boundaries. Carries
// the statistics gathered up to the stop.
class ResourceLimitError : public std::runtime_error {
 public:
  enum class Kind { Timeout, Memout };

  ResourceLimitError(Kind kind, CounterStats stats)
      : std::runtime_error(kind == Kind::Timeout ? "time limit exceeded"
                                                 : "memory limit exceeded"),
        kind_(kind),
        stats_(std::move(stats)) {}

  Kind kind() const { return kind_; }
  const CounterStats& stats() const { return stats_; }

 private:
  Kind kind_;
  CounterStats stats_;
};

// Exact model count by exhaustive DPLL search: simplify, close VALID /
// INCONSISTENT leaves, split into connected components (product), otherwise
// branch on one variable over its whole domain (sum, ascending values).
// Deterministic for a fixed config, and the count itself is identical
// across every config.
CountResult count(const System& s, const CounterConfig& cfg = CounterConfig{});

}  // namespace ilc
