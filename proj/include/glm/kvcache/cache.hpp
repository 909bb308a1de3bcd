#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glm/config.hpp"
#include "glm/kvcache/tier.hpp"
#include "glm/kvcache/tokenizer.hpp"

namespace glm {

using BlockId = std::uint64_t;

struct CacheBlock {
  BlockId id = 0;
  std::optional<BlockId> parent;
  Tier tier = Tier::IV;
  std::uint64_t last_used = 0;
  std::string session;  // owner, for the II -> III lifecycle; empty = shared
};

struct TierRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive, token positions
  Tier tier = Tier::IV;
};
// Disjoint, ordered, covering [0, len).
using TierMap = std::vector<TierRange>;

struct PrefillReport {
  std::size_t cached_tokens = 0;    // reused along the maximal resident chain prefix
  std::size_t computed_tokens = 0;  // full blocks computed by this call
  std::size_t tail_tokens = 0;      // trailing partial block, never cached
  std::vector<BlockId> evicted;
  std::size_t total_computed() const { return computed_tokens + tail_tokens; }
};

struct CacheCounters {
  std::int64_t hits = 0;    // reused blocks
  std::int64_t misses = 0;  // computed blocks
  std::int64_t evictions_by_tier[4] = {0, 0, 0, 0};
  double hit_rate() const {
    std::int64_t total = hits + misses;
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  }
};

// Block-level prefix cache simulator. Blocks are hash-chained: a block's id
// folds its parent id and its B tokens, so identical prefixes share identical
// chains across sessions and restarts. Priority mode evicts IV, then III,
// then II, LRU within each tier, and never touches tier I; PlainLru mode is
// the tier-blind single-queue baseline.
class KvCacheState {
 public:
  KvCacheState(std::size_t capacity_blocks, std::size_t block_tokens,
               CachePolicy policy = CachePolicy::Priority);

  PrefillReport prefill(const TokenSeq& prompt, const TierMap& tiers,
                        const std::string& session);

  // Frees exactly n blocks; returns their ids in eviction order. Throws
  // CacheExhausted when fewer than n evictable blocks exist.
  std::vector<BlockId> evict(std::size_t n);

  // Retags every resident block of (session, from_tier) to to_tier.
  void set_tier(const std::string& session, Tier from_tier, Tier to_tier);

  std::size_t resident_blocks() const { return resident_.size(); }
  std::size_t capacity_blocks() const { return capacity_blocks_; }
  std::size_t block_tokens() const { return block_tokens_; }
  const CacheCounters& counters() const { return counters_; }
  CachePolicy policy() const { return policy_; }

  bool is_resident(BlockId id) const { return resident_.count(id) > 0; }
  const CacheBlock* block(BlockId id) const;
  std::vector<CacheBlock> resident_snapshot() const;  // sorted by id

  // Metrics snapshot as JSON text.
  std::string snapshot_json() const;

  // Seeds an arbitrary resident block; test and trace-replay hook.
  void force_insert(BlockId id, Tier tier, std::uint64_t last_used, const std::string& session);

  // Chain ids for a prompt's full blocks, root first.
  static std::vector<BlockId> chain_ids(const TokenSeq& prompt, std::size_t block_tokens);

 private:
  Tier strongest_tier_over(const TierMap& tiers, std::size_t begin, std::size_t end) const;

  std::size_t capacity_blocks_;
  std::size_t block_tokens_;
  CachePolicy policy_;
  std::map<BlockId, CacheBlock> resident_;
  std::uint64_t clock_ = 0;
  CacheCounters counters_;
};

}  // namespace glm
