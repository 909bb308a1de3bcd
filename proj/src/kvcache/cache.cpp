#include "glm/kvcache/cache.hpp"

#include <algorithm>

#include "glm/error.hpp"
#include "glm/util/fnv.hpp"
#include "json.hpp"

namespace glm {

namespace {

BlockId block_hash(std::optional<BlockId> parent, const TokenSeq& prompt, std::size_t begin,
                   std::size_t end) {
  std::uint64_t h = fnv1a_u64(parent.value_or(0xb10c0000c0ffeeULL), 1469598103934665603ULL);
  for (std::size_t i = begin; i < end; ++i) {
    h = fnv1a(prompt[i], h);
    h = fnv1a_u64(0x1f, h);  // token separator
  }
  return h;
}

}  // namespace

KvCacheState::KvCacheState(std::size_t capacity_blocks, std::size_t block_tokens,
                           CachePolicy policy)
    : capacity_blocks_(capacity_blocks), block_tokens_(block_tokens), policy_(policy) {
  if (block_tokens_ == 0) throw ConfigError("kv block size must be positive");
}

std::vector<BlockId> KvCacheState::chain_ids(const TokenSeq& prompt, std::size_t block_tokens) {
  std::vector<BlockId> ids;
  std::optional<BlockId> parent;
  for (std::size_t b = 0; (b + 1) * block_tokens <= prompt.size(); ++b) {
    BlockId id = block_hash(parent, prompt, b * block_tokens, (b + 1) * block_tokens);
    ids.push_back(id);
    parent = id;
  }
  return ids;
}

Tier KvCacheState::strongest_tier_over(const TierMap& tiers, std::size_t begin,
                                       std::size_t end) const {
  // A block spanning a tier boundary keeps the strongest (lowest) tier it
  // overlaps; the boundary block is needed to extend the stronger chain.
  Tier best = Tier::IV;
  for (const auto& r : tiers) {
    if (r.end <= begin || r.begin >= end) continue;
    if (static_cast<int>(r.tier) < static_cast<int>(best)) best = r.tier;
  }
  return best;
}

PrefillReport KvCacheState::prefill(const TokenSeq& prompt, const TierMap& tiers,
                                    const std::string& session) {
  // TierMap must cover [0, len) with disjoint ordered ranges.
  std::size_t expect = 0;
  for (const auto& r : tiers) {
    if (r.begin != expect || r.end < r.begin)
      throw GlmError("tier map must cover the prompt with ordered disjoint ranges");
    expect = r.end;
  }
  if (expect != prompt.size()) throw GlmError("tier map does not cover the prompt");

  PrefillReport report;
  std::vector<BlockId> ids = chain_ids(prompt, block_tokens_);
  std::size_t full_blocks = ids.size();
  report.tail_tokens = prompt.size() - full_blocks * block_tokens_;

  // Maximal resident chain prefix counts as cached.
  std::size_t hit_blocks = 0;
  while (hit_blocks < full_blocks && resident_.count(ids[hit_blocks])) ++hit_blocks;
  report.cached_tokens = hit_blocks * block_tokens_;
  counters_.hits += static_cast<std::int64_t>(hit_blocks);

  for (std::size_t b = 0; b < hit_blocks; ++b) {
    CacheBlock& blk = resident_[ids[b]];
    blk.last_used = ++clock_;
    Tier want = strongest_tier_over(tiers, b * block_tokens_, (b + 1) * block_tokens_);
    if (static_cast<int>(want) < static_cast<int>(blk.tier)) blk.tier = want;
  }

  for (std::size_t b = hit_blocks; b < full_blocks; ++b) {
    report.computed_tokens += block_tokens_;
    ++counters_.misses;
    Tier tier = strongest_tier_over(tiers, b * block_tokens_, (b + 1) * block_tokens_);
    auto it = resident_.find(ids[b]);
    if (it != resident_.end()) {
      // Orphaned descendant of an evicted block: recomputed, stamp refreshed.
      it->second.last_used = ++clock_;
      if (static_cast<int>(tier) < static_cast<int>(it->second.tier)) it->second.tier = tier;
      continue;
    }
    if (resident_.size() >= capacity_blocks_) {
      auto evicted = evict(resident_.size() - capacity_blocks_ + 1);
      report.evicted.insert(report.evicted.end(), evicted.begin(), evicted.end());
    }
    CacheBlock blk;
    blk.id = ids[b];
    blk.parent = b == 0 ? std::nullopt : std::optional<BlockId>(ids[b - 1]);
    blk.tier = tier;
    blk.last_used = ++clock_;
    blk.session = tier == Tier::I ? std::string() : session;
    resident_.emplace(blk.id, blk);
  }
  return report;
}

std::vector<BlockId> KvCacheState::evict(std::size_t n) {
  if (n == 0) return {};
  struct Candidate {
    Tier tier;
    std::uint64_t last_used;
    BlockId id;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(resident_.size());
  for (const auto& [id, blk] : resident_) {
    if (policy_ == CachePolicy::Priority && blk.tier == Tier::I) continue;
    candidates.push_back({blk.tier, blk.last_used, id});
  }
  if (candidates.size() < n)
    throw CacheExhausted("need " + std::to_string(n) + " evictable blocks, have " +
                         std::to_string(candidates.size()));

  if (policy_ == CachePolicy::Priority) {
    // Weakest tier first (IV before III before II), LRU within a tier.
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.tier != b.tier) return static_cast<int>(a.tier) > static_cast<int>(b.tier);
      if (a.last_used != b.last_used) return a.last_used < b.last_used;
      return a.id < b.id;
    });
  } else {
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.last_used != b.last_used) return a.last_used < b.last_used;
      return a.id < b.id;
    });
  }

  std::vector<BlockId> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(candidates[i].id);
    ++counters_.evictions_by_tier[static_cast<int>(candidates[i].tier)];
    resident_.erase(candidates[i].id);
  }
  return out;
}

void KvCacheState::set_tier(const std::string& session, Tier from_tier, Tier to_tier) {
  for (auto& [id, blk] : resident_)
    if (blk.session == session && blk.tier == from_tier) blk.tier = to_tier;
}

const CacheBlock* KvCacheState::block(BlockId id) const {
  auto it = resident_.find(id);
  return it == resident_.end() ? nullptr : &it->second;
}

std::vector<CacheBlock> KvCacheState::resident_snapshot() const {
  std::vector<CacheBlock> out;
  out.reserve(resident_.size());
  for (const auto& [id, blk] : resident_) out.push_back(blk);
  return out;
}

void KvCacheState::force_insert(BlockId id, Tier tier, std::uint64_t last_used,
                                const std::string& session) {
  CacheBlock blk;
  blk.id = id;
  blk.tier = tier;
  blk.last_used = last_used;
  blk.session = session;
  resident_[id] = blk;
  clock_ = std::max(clock_, last_used);
}

std::string KvCacheState::snapshot_json() const {
  nlohmann::json j;
  j["hits"] = counters_.hits;
  j["misses"] = counters_.misses;
  j["hit_rate"] = counters_.hit_rate();
  nlohmann::json ev;
  const char* names[] = {"I", "II", "III", "IV"};
  for (int t = 0; t < 4; ++t) ev[names[t]] = counters_.evictions_by_tier[t];
  j["evictions_by_tier"] = ev;
  j["resident_blocks"] = resident_.size();
  return j.dump();
}

}  // namespace glm
