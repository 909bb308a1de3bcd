#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glm/attr.hpp"
#include "glm/retrieve/retriever.hpp"

namespace glm::snippet {

// The only surface a snippet can reach outside its own environment.
class SnippetGraphApi {
 public:
  virtual ~SnippetGraphApi() = default;
  virtual std::string retrieve_node(const std::string& text) = 0;
  virtual std::string node_info(const std::string& id) = 0;
  virtual std::vector<std::optional<AttrValue>> node_feature(
      const std::vector<std::string>& ids, const std::string& feature_name) = 0;
  virtual std::int64_t node_degree(const std::string& id, const std::string& edge_type) = 0;
  virtual std::vector<std::string> neighbour_check(const std::string& id,
                                                   const std::string& edge_type) = 0;
  // The chunking=fact ablation turns NodeInfo off.
  virtual bool node_info_enabled() const { return true; }
};

class RetrieverGraphApi : public SnippetGraphApi {
 public:
  explicit RetrieverGraphApi(Retriever& retriever, bool node_info_enabled = true)
      : retriever_(retriever), node_info_enabled_(node_info_enabled) {}

  std::string retrieve_node(const std::string& text) override {
    return retriever_.retrieve_node(text);
  }
  std::string node_info(const std::string& id) override {
    return retriever_.node_info_rendered(id);
  }
  std::vector<std::optional<AttrValue>> node_feature(
      const std::vector<std::string>& ids, const std::string& feature_name) override {
    return retriever_.node_feature(ids, feature_name);
  }
  std::int64_t node_degree(const std::string& id, const std::string& edge_type) override {
    return retriever_.node_degree(id, edge_type);
  }
  std::vector<std::string> neighbour_check(const std::string& id,
                                           const std::string& edge_type) override {
    return retriever_.neighbour_check(id, edge_type);
  }
  bool node_info_enabled() const override { return node_info_enabled_; }

 private:
  Retriever& retriever_;
  bool node_info_enabled_;
};

}  // namespace glm::snippet
