#include "glm/config.hpp"

#include <cstdlib>
#include <fstream>

#include "glm/error.hpp"
#include "json.hpp"

namespace glm {

namespace {

using nlohmann::json;

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("invalid config json: " + std::string(e.what()));
  }

  Config c;
  if (j.contains("embed")) {
    read(j["embed"], "dim", c.embed_dim);
  }
  if (j.contains("index") && j["index"].contains("text_field")) {
    for (auto& [k, v] : j["index"]["text_field"].items())
      c.index_text_field[k] = v.get<std::string>();
  }
  if (j.contains("chunk")) {
    const auto& jc = j["chunk"];
    read(jc, "k", c.chunk_k);
    if (jc.contains("weight_mode")) {
      std::string m = jc["weight_mode"].get<std::string>();
      if (m == "total")
        c.chunk_weight_mode = ChunkWeightMode::TotalDegree;
      else if (m == "by_edge_type")
        c.chunk_weight_mode = ChunkWeightMode::ByEdgeType;
      else
        throw ConfigError("chunk.weight_mode must be total|by_edge_type");
    }
    read(jc, "directed", c.chunk_directed);
  }
  if (j.contains("retrieval_cache")) {
    read(j["retrieval_cache"], "capacity", c.retrieval_cache_capacity);
  }
  if (j.contains("snippet")) {
    read(j["snippet"], "step_budget", c.snippet_step_budget);
    read(j["snippet"], "max_loop_depth", c.snippet_max_loop_depth);
  }
  if (j.contains("kv")) {
    const auto& jk = j["kv"];
    read(jk, "block_tokens", c.kv_block_tokens);
    read(jk, "capacity_blocks", c.kv_capacity_blocks);
    if (jk.contains("policy")) {
      std::string p = jk["policy"].get<std::string>();
      if (p == "priority")
        c.kv_policy = CachePolicy::Priority;
      else if (p == "lru")
        c.kv_policy = CachePolicy::PlainLru;
      else
        throw ConfigError("kv.policy must be priority|lru");
    }
  }
  if (j.contains("cost")) {
    read(j["cost"], "c_prefill", c.cost_prefill);
    read(j["cost"], "c_decode", c.cost_decode);
  }
  if (j.contains("pipeline")) {
    read(j["pipeline"], "enabled", c.pipeline_enabled);
  }
  if (j.contains("timing")) {
    const auto& jt = j["timing"];
    if (jt.contains("mode")) {
      std::string m = jt["mode"].get<std::string>();
      if (m == "simulated")
        c.timing_mode = TimingMode::Simulated;
      else if (m == "wallclock")
        c.timing_mode = TimingMode::WallClock;
      else
        throw ConfigError("timing.mode must be simulated|wallclock");
    }
    read(jt, "retrieval_latency", c.retrieval_latency);
  }
  read(j, "max_steps", c.max_steps);
  read(j, "repair_budget", c.repair_budget);
  read(j, "timeout_retries", c.timeout_retries);
  read(j, "timeout_ms", c.timeout_ms);
  if (j.contains("concurrency")) {
    read(j["concurrency"], "sessions", c.concurrency_sessions);
  }
  if (j.contains("chunking")) {
    std::string m = j["chunking"].get<std::string>();
    if (m == "vertex")
      c.chunking = ChunkingMode::Vertex;
    else if (m == "fact")
      c.chunking = ChunkingMode::Fact;
    else
      throw ConfigError("chunking must be vertex|fact");
  }
  if (j.contains("llm")) {
    const auto& jl = j["llm"];
    read(jl, "endpoint", c.llm_endpoint);
    read(jl, "model", c.llm_model);
    read(jl, "api_key", c.llm_api_key);
    read(jl, "timeout_ms", c.llm_timeout_ms);
  }
  read(j, "template_dir", c.template_dir);
  if (j.contains("bench")) {
    read(j["bench"], "warmup_frac", c.bench_warmup_frac);
  }
  return c;
}

Config load_config_from_env() {
  const char* path = std::getenv("GLM_CONFIG");
  if (path == nullptr || *path == '\0') return Config{};
  return load_config(path);
}

}  // namespace glm
