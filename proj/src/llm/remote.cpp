#include "glm/llm/remote.hpp"

#include <chrono>

#include "glm/error.hpp"
#include "glm/kvcache/tokenizer.hpp"
#include "httplib.h"
#include "json.hpp"

namespace glm {

namespace {

using nlohmann::json;

// Pulls delta text out of one SSE "data: {...}" event.
std::string delta_of(const json& chunk) {
  if (!chunk.contains("choices") || chunk["choices"].empty()) return "";
  const auto& choice = chunk["choices"][0];
  if (choice.contains("delta") && choice["delta"].contains("content") &&
      choice["delta"]["content"].is_string())
    return choice["delta"]["content"].get<std::string>();
  if (choice.contains("message") && choice["message"].contains("content") &&
      choice["message"]["content"].is_string())
    return choice["message"]["content"].get<std::string>();
  return "";
}

}  // namespace

RemoteProvider::RemoteProvider(const Config& config)
    : endpoint_(config.llm_endpoint),
      model_(config.llm_model),
      api_key_(config.llm_api_key),
      timeout_ms_(config.llm_timeout_ms) {
  if (endpoint_.empty()) throw ConfigError("llm.endpoint is required for the remote provider");
}

CompletionResult RemoteProvider::complete(const CompletionRequest& req) {
  httplib::Client client(endpoint_);
  client.set_connection_timeout(std::chrono::milliseconds(timeout_ms_));
  client.set_read_timeout(std::chrono::milliseconds(timeout_ms_));
  if (!api_key_.empty()) client.set_bearer_token_auth(api_key_);

  json body;
  body["model"] = model_;
  body["messages"] = json::array({json{{"role", "user"}, {"content", req.prompt}}});
  body["stream"] = true;
  body["temperature"] = 0;

  CompletionResult result;
  result.tokens_in = count_tokens(req.prompt);

  auto started = std::chrono::steady_clock::now();
  std::string pending;  // unconsumed SSE bytes
  std::string text;
  std::int64_t reported = -1;

  auto handle_event = [&](const std::string& payload) {
    if (payload == "[DONE]") return;
    json chunk;
    try {
      chunk = json::parse(payload);
    } catch (const json::exception&) {
      throw ProviderProtocolError("malformed stream chunk: " + payload);
    }
    if (chunk.contains("usage") && chunk["usage"].contains("total_tokens"))
      reported = chunk["usage"]["total_tokens"].get<std::int64_t>();
    std::string piece = delta_of(chunk);
    if (piece.empty()) return;
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          started)
                    .count();
    if (req.on_increment) req.on_increment(piece);
    result.increments.push_back({piece, ms});
    text += piece;
  };

  auto res = client.Post(
      "/v1/chat/completions", httplib::Headers{}, body.dump(), "application/json",
      [&](const char* data, std::size_t len) {
        pending.append(data, len);
        std::size_t at;
        while ((at = pending.find('\n')) != std::string::npos) {
          std::string line = pending.substr(0, at);
          pending.erase(0, at + 1);
          if (!line.empty() && line.back() == '\r') line.pop_back();
          if (line.rfind("data: ", 0) == 0) handle_event(line.substr(6));
        }
        return true;
      });

  if (!res) {
    auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read)
      throw ProviderTimeoutError("remote provider timed out");
    throw ProviderProtocolError("remote provider transport error");
  }
  if (res->status != 200)
    throw ProviderProtocolError("remote provider returned HTTP " + std::to_string(res->status));

  // Non-streamed JSON body fallback.
  if (text.empty() && !res->body.empty() && res->body.front() == '{') {
    try {
      json full = json::parse(res->body);
      std::string piece = delta_of(full);
      if (!piece.empty()) {
        if (req.on_increment) req.on_increment(piece);
        result.increments.push_back({piece, 0.0});
        text = piece;
      }
      if (full.contains("usage") && full["usage"].contains("total_tokens"))
        reported = full["usage"]["total_tokens"].get<std::int64_t>();
    } catch (const json::exception&) {
      // body was not json; leave text as streamed
    }
  }

  result.text = text;
  result.tokens_out = count_tokens(text);
  result.remote_reported_tokens = reported;
  return result;
}

}  // namespace glm
