#include "glm/graph/graph_store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "glm/error.hpp"
#include "json.hpp"

namespace glm {

namespace {

using nlohmann::json;

Scalar parse_scalar(const json& v, std::size_t line_no) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) return v.get<double>();
  throw MalformedRecord(line_no, "attribute values must be scalars or lists of scalars");
}

json scalar_to_json(const Scalar& s) {
  struct V {
    json operator()(const std::string& v) const { return v; }
    json operator()(std::int64_t v) const { return v; }
    json operator()(double v) const { return v; }
    json operator()(bool v) const { return v; }
  };
  return std::visit(V{}, s);
}

const std::vector<std::string> kNoNeighbours;

}  // namespace

PropertyGraph PropertyGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GlmError("cannot open graph file: " + path);

  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw MalformedRecord(line_no, e.what());
    }
    if (!j.is_object() || !j.contains("kind"))
      throw MalformedRecord(line_no, "expected object with \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "node") {
      if (!j.contains("id") || !j.contains("type"))
        throw MalformedRecord(line_no, "node requires id and type");
      NodeRecord n;
      n.id = j["id"].get<std::string>();
      n.node_type = j["type"].get<std::string>();
      if (n.id.empty()) throw MalformedRecord(line_no, "node id must be non-empty");
      if (j.contains("attrs")) {
        if (!j["attrs"].is_object())
          throw MalformedRecord(line_no, "attrs must be an object");
        for (auto& [k, v] : j["attrs"].items()) {
          if (k.empty()) throw MalformedRecord(line_no, "attribute names must be non-empty");
          if (v.is_array()) {
            std::vector<Scalar> list;
            for (const auto& e : v) list.push_back(parse_scalar(e, line_no));
            n.attributes[k] = AttrValue(std::move(list));
          } else {
            n.attributes[k] = AttrValue(parse_scalar(v, line_no));
          }
        }
      }
      nodes.push_back(std::move(n));
    } else if (kind == "edge") {
      if (!j.contains("src") || !j.contains("dst") || !j.contains("etype"))
        throw MalformedRecord(line_no, "edge requires src, dst and etype");
      edges.push_back({j["src"].get<std::string>(), j["dst"].get<std::string>(),
                       j["etype"].get<std::string>()});
    } else {
      throw MalformedRecord(line_no, "kind must be node or edge");
    }
  }
  return from_records(std::move(nodes), std::move(edges));
}

PropertyGraph PropertyGraph::from_records(std::vector<NodeRecord> nodes,
                                          std::vector<EdgeRecord> edges) {
  PropertyGraph g;
  for (auto& n : nodes) {
    if (n.id.empty()) throw MalformedRecord(0, "node id must be non-empty");
    auto [it, inserted] = g.nodes_.emplace(n.id, std::move(n));
    if (!inserted) throw DuplicateNode(it->first);
  }
  for (const auto& e : edges) {
    if (!g.nodes_.count(e.src) || !g.nodes_.count(e.dst)) throw DanglingEdge(e.src, e.dst);
  }
  g.edges_ = std::move(edges);
  g.build_indexes();
  return g;
}

void PropertyGraph::build_indexes() {
  node_ids_.clear();
  node_ids_.reserve(nodes_.size());
  for (const auto& [id, n] : nodes_) node_ids_.push_back(id);

  out_adj_.clear();
  in_adj_.clear();
  total_degree_.clear();
  for (const auto& e : edges_) {
    out_adj_[{e.src, e.edge_type}].push_back(e.dst);
    in_adj_[{e.dst, e.edge_type}].push_back(e.src);
    ++total_degree_[e.src];
    ++total_degree_[e.dst];
  }
  for (auto& [k, v] : out_adj_) std::sort(v.begin(), v.end());
  for (auto& [k, v] : in_adj_) std::sort(v.begin(), v.end());
}

std::string PropertyGraph::serialize() const {
  std::ostringstream out;
  for (const auto& id : node_ids_) {
    const NodeRecord& n = nodes_.at(id);
    json j;
    j["kind"] = "node";
    j["id"] = n.id;
    j["type"] = n.node_type;
    json attrs = json::object();
    for (const auto& [k, v] : n.attributes) {
      if (const auto* s = std::get_if<Scalar>(&v)) {
        attrs[k] = scalar_to_json(*s);
      } else {
        json arr = json::array();
        for (const auto& s : std::get<std::vector<Scalar>>(v)) arr.push_back(scalar_to_json(s));
        attrs[k] = arr;
      }
    }
    j["attrs"] = attrs;
    out << j.dump() << "\n";
  }
  std::vector<EdgeRecord> sorted = edges_;
  std::sort(sorted.begin(), sorted.end(), [](const EdgeRecord& a, const EdgeRecord& b) {
    return std::tie(a.src, a.edge_type, a.dst) < std::tie(b.src, b.edge_type, b.dst);
  });
  for (const auto& e : sorted) {
    json j;
    j["kind"] = "edge";
    j["src"] = e.src;
    j["dst"] = e.dst;
    j["etype"] = e.edge_type;
    out << j.dump() << "\n";
  }
  return out.str();
}

void PropertyGraph::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw GlmError("cannot write graph file: " + path);
  out << serialize();
}

bool PropertyGraph::has_node(const std::string& id) const { return nodes_.count(id) > 0; }

const NodeRecord& PropertyGraph::node(const std::string& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownNode(id);
  return it->second;
}

const std::vector<std::string>& PropertyGraph::neighbours(const std::string& id,
                                                          const std::string& edge_type) const {
  if (!has_node(id)) throw UnknownNode(id);
  auto it = out_adj_.find({id, edge_type});
  return it == out_adj_.end() ? kNoNeighbours : it->second;
}

std::int64_t PropertyGraph::degree(const std::string& id, const std::string& edge_type) const {
  return static_cast<std::int64_t>(neighbours(id, edge_type).size());
}

const std::vector<std::string>& PropertyGraph::in_neighbours(
    const std::string& id, const std::string& edge_type) const {
  if (!has_node(id)) throw UnknownNode(id);
  auto it = in_adj_.find({id, edge_type});
  return it == in_adj_.end() ? kNoNeighbours : it->second;
}

std::vector<std::optional<AttrValue>> PropertyGraph::feature(
    const std::vector<std::string>& ids, const std::string& feature_name) const {
  std::vector<std::optional<AttrValue>> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    const NodeRecord& n = node(id);
    auto it = n.attributes.find(feature_name);
    if (it == n.attributes.end())
      out.push_back(std::nullopt);
    else
      out.push_back(it->second);
  }
  return out;
}

std::int64_t PropertyGraph::total_degree(const std::string& id) const {
  if (!has_node(id)) throw UnknownNode(id);
  auto it = total_degree_.find(id);
  return it == total_degree_.end() ? 0 : it->second;
}

std::int64_t PropertyGraph::total_degree(const std::string& id,
                                         const std::string& edge_type) const {
  if (!has_node(id)) throw UnknownNode(id);
  std::int64_t d = 0;
  if (auto it = out_adj_.find({id, edge_type}); it != out_adj_.end())
    d += static_cast<std::int64_t>(it->second.size());
  if (auto it = in_adj_.find({id, edge_type}); it != in_adj_.end())
    d += static_cast<std::int64_t>(it->second.size());
  return d;
}

std::vector<std::string> PropertyGraph::incident_edge_types(const std::string& id) const {
  if (!has_node(id)) throw UnknownNode(id);
  std::vector<std::string> types;
  auto scan = [&](const auto& adj) {
    for (auto it = adj.lower_bound({id, std::string()});
         it != adj.end() && it->first.first == id; ++it)
      types.push_back(it->first.second);
  };
  scan(out_adj_);
  scan(in_adj_);
  std::sort(types.begin(), types.end());
  types.erase(std::unique(types.begin(), types.end()), types.end());
  return types;
}

}  // namespace glm
