#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace glm {

enum class CachePolicy { Priority, PlainLru };
enum class ChunkWeightMode { TotalDegree, ByEdgeType };
enum class ChunkingMode { Vertex, Fact };
enum class TimingMode { Simulated, WallClock };

struct Config {
  // embed-index
  int embed_dim = 64;
  std::map<std::string, std::string> index_text_field;  // node_type -> attribute

  // retriever
  int chunk_k = 8;
  ChunkWeightMode chunk_weight_mode = ChunkWeightMode::TotalDegree;
  bool chunk_directed = false;  // false: 1-hop union over both directions
  std::size_t retrieval_cache_capacity = 1024;

  // snippet-lang
  std::int64_t snippet_step_budget = 100000;
  int snippet_max_loop_depth = 3;

  // kvcache
  std::size_t kv_block_tokens = 16;
  std::size_t kv_capacity_blocks = 4096;
  CachePolicy kv_policy = CachePolicy::Priority;
  double cost_prefill = 1.0;  // cost units per computed prompt token
  double cost_decode = 4.0;   // cost units per generated token

  // pipeline
  bool pipeline_enabled = true;
  TimingMode timing_mode = TimingMode::Simulated;
  double retrieval_latency = 120.0;  // cost units per uncached RetrieveNode

  // orchestrator
  int max_steps = 10;
  int repair_budget = 2;
  int timeout_retries = 1;
  std::int64_t timeout_ms = 30000;
  int concurrency_sessions = 8;
  ChunkingMode chunking = ChunkingMode::Vertex;

  // llm-backend (remote)
  std::string llm_endpoint;
  std::string llm_model;
  std::string llm_api_key;
  std::int64_t llm_timeout_ms = 30000;

  // assets
  std::string template_dir = "custom";

  // bench
  double bench_warmup_frac = 0.05;  // excluded from throughput rate

  std::string text_field_for(const std::string& node_type) const {
    auto it = index_text_field.find(node_type);
    return it == index_text_field.end() ? std::string() : it->second;
  }
};

// Reads a JSON config file with dotted keys nested as objects,
// e.g. {"embed": {"dim": 64}, "chunk": {"k": 8}}. Missing keys keep defaults.
Config load_config(const std::string& path);

// Loads from the file named by GLM_CONFIG when set, defaults otherwise.
Config load_config_from_env();

}  // namespace glm
