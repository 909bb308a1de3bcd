#include "glm/bench/workload.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "glm/embed/index.hpp"
#include "glm/error.hpp"
#include "json.hpp"

namespace glm {

namespace {

const char* kAdjectives[] = {"umber",  "cobalt", "ivory",  "sable",  "viridian", "amber",
                             "russet", "pewter", "indigo", "maroon", "ochre",    "teal",
                             "slate",  "coral",  "fawn",   "lilac"};
const char* kNouns[] = {"lattice", "widget", "gasket", "spindle", "crucible", "bobbin",
                        "ratchet", "gimbal", "flange", "tumbler", "sprocket", "mandrel",
                        "ferrule", "plinth", "luggage", "brazier"};
const char* kBrands[] = {"acme", "orion", "zephyr", "halcyon", "vertex", "quanta"};
const char* kCategories[] = {"tools", "kitchen", "garden", "office", "sport", "audio"};

std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::string pad4(int i) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%04d", i);
  return buf;
}

}  // namespace

PropertyGraph synth_graph(const SynthGraphOptions& options) {
  if (options.nodes < 12) throw GraphTooSmall("synthetic graph needs at least 12 nodes");
  std::mt19937_64 rng(options.seed);

  int n = options.nodes;
  int n_targets = std::max(2, n / 12);
  int n_sources = std::max(4, (n * 3) / 10);
  int n_leaves = n - n_targets - n_sources;

  std::vector<NodeRecord> nodes;
  std::vector<EdgeRecord> edges;
  nodes.reserve(static_cast<std::size_t>(n));

  auto make_item = [&](const std::string& id, int salt) {
    NodeRecord rec;
    rec.id = id;
    rec.node_type = "item";
    std::string title = std::string(kAdjectives[salt % 16]) + " " +
                        kNouns[(salt / 16) % 16] + " " + id;
    rec.attributes["title"] = AttrValue(Scalar(title));
    rec.attributes["price"] = AttrValue(Scalar(static_cast<std::int64_t>(1 + pick(rng, 999))));
    rec.attributes["brand"] = AttrValue(Scalar(std::string(kBrands[pick(rng, 6)])));
    rec.attributes["category"] = AttrValue(Scalar(std::string(kCategories[pick(rng, 6)])));
    return rec;
  };

  std::vector<std::string> targets, sources, leaves;
  int salt = 0;
  for (int i = 0; i < n_targets; ++i) {
    std::string id = "t" + pad4(i);
    nodes.push_back(make_item(id, salt++));
    targets.push_back(id);
  }
  for (int i = 0; i < n_sources; ++i) {
    std::string id = "s" + pad4(i);
    nodes.push_back(make_item(id, salt++));
    sources.push_back(id);
  }
  for (int i = 0; i < n_leaves; ++i) {
    std::string id = "l" + pad4(i);
    nodes.push_back(make_item(id, salt++));
    leaves.push_back(id);
  }

  // Disjoint clusters: each target takes 2-4 dedicated sources.
  const std::string& link = options.link_edge_type;
  std::size_t next_source = 0;
  std::size_t next_leaf = 0;
  for (const auto& target : targets) {
    std::size_t m = 2 + pick(rng, 3);
    for (std::size_t j = 0; j < m && next_source < sources.size(); ++j) {
      const std::string& src = sources[next_source++];
      edges.push_back({src, target, link});
      // Noise stays on private leaves so intersections remain unique.
      std::size_t extra = pick(rng, 3);
      for (std::size_t e = 0; e < extra && next_leaf < leaves.size(); ++e)
        edges.push_back({src, leaves[next_leaf++], link});
      if (pick(rng, 2) == 0 && next_leaf < leaves.size())
        edges.push_back({src, leaves[next_leaf++], "viewed"});
    }
  }
  // Remaining sources and leaves get light viewed-edges for degree texture.
  while (next_source < sources.size()) {
    const std::string& src = sources[next_source++];
    if (next_leaf < leaves.size()) edges.push_back({src, leaves[next_leaf++], "viewed"});
  }

  return PropertyGraph::from_records(std::move(nodes), std::move(edges));
}

std::string Workload::serialize_jsonl() const {
  std::ostringstream out;
  for (const auto& q : questions) {
    nlohmann::json j;
    j["id"] = q.id;
    j["text"] = q.text;
    j["kind"] = q.deterministic ? "deterministic" : "non_deterministic";
    j["required_facts"] = q.required_facts;
    j["expected_answer"] = q.expected_answer;
    out << j.dump() << "\n";
  }
  return out.str();
}

void Workload::save_jsonl(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw GlmError("cannot write workload file: " + path);
  out << serialize_jsonl();
}

Workload Workload::load_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GlmError("cannot open workload file: " + path);
  Workload w;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    Question q;
    q.id = j.at("id").get<std::string>();
    q.text = j.at("text").get<std::string>();
    q.deterministic = j.at("kind").get<std::string>() == "deterministic";
    q.required_facts = j.value("required_facts", 1);
    q.expected_answer = j.value("expected_answer", std::string());
    w.questions.push_back(std::move(q));
  }
  return w;
}

namespace {

std::string title_of(const PropertyGraph& graph, const std::string& id) {
  const auto& attrs = graph.node(id).attributes;
  auto it = attrs.find("title");
  if (it == attrs.end()) return "";
  if (const auto* s = std::get_if<Scalar>(&it->second))
    if (const auto* str = std::get_if<std::string>(s)) return *str;
  return "";
}

}  // namespace

Workload generate_workload(std::uint64_t seed, int n, double nondet_ratio,
                           const PropertyGraph& graph, const Config& config) {
  if (nondet_ratio < 0.0 || nondet_ratio > 1.0)
    throw ConfigError("nondet_ratio must be in [0, 1]");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  VectorIndex index = VectorIndex::build(graph, config);
  if (index.empty()) throw GraphTooSmall("graph has no indexable nodes");
  const std::string link = "linked";

  // Candidate pools, validated against the graph before use.
  auto unique_retrieval = [&](const std::string& title, const std::string& id) {
    auto top = index.nearest(title, 1);
    return top.front().id == id;
  };

  std::vector<std::string> det_pool;  // nodes with title + scalar attrs
  struct Cluster {
    std::string target;
    std::vector<std::string> source_ids;
  };
  std::vector<Cluster> nondet_pool;

  for (const auto& id : graph.node_ids()) {
    std::string title = title_of(graph, id);
    if (title.empty() || !unique_retrieval(title, id)) continue;
    det_pool.push_back(id);

    const auto& sources = graph.in_neighbours(id, link);
    if (sources.size() < 2 || sources.size() > 4) continue;
    // The question is answerable only when the sources' out-neighbour
    // intersection is exactly this node and every source retrieves uniquely.
    bool ok = true;
    std::set<std::string> common;
    for (std::size_t i = 0; i < sources.size() && ok; ++i) {
      std::string stitle = title_of(graph, sources[i]);
      if (stitle.empty() || !unique_retrieval(stitle, sources[i])) {
        ok = false;
        break;
      }
      const auto& outs = graph.neighbours(sources[i], link);
      std::set<std::string> s(outs.begin(), outs.end());
      if (i == 0) {
        common = std::move(s);
      } else {
        std::set<std::string> next;
        std::set_intersection(common.begin(), common.end(), s.begin(), s.end(),
                              std::inserter(next, next.end()));
        common = std::move(next);
      }
    }
    if (ok && common.size() == 1 && *common.begin() == id)
      nondet_pool.push_back({id, {sources.begin(), sources.end()}});
  }

  if (det_pool.empty()) throw GraphTooSmall("no deterministic question candidates");

  const char* det_attrs[] = {"price", "brand", "category"};
  Workload out;
  int want_nondet = static_cast<int>(nondet_ratio * n + 0.5);
  int attempts = 0;
  for (int i = 0; i < n; ++i) {
    if (++attempts > 10 * n + 100)
      throw GraphTooSmall("could not instantiate enough valid questions");
    bool make_nondet = i < want_nondet;
    if (make_nondet && nondet_pool.empty())
      throw GraphTooSmall("not enough link clusters for non-deterministic questions");
    Question q;
    q.id = "q" + pad4(i);
    if (make_nondet) {
      const Cluster& c = nondet_pool[pick(rng, nondet_pool.size())];
      std::string text = "Which item is linked from all of: ";
      for (std::size_t j = 0; j < c.source_ids.size(); ++j) {
        if (j) text += "; ";
        text += title_of(graph, c.source_ids[j]);
      }
      q.text = text + "?";
      q.deterministic = false;
      q.required_facts = static_cast<int>(c.source_ids.size());
      q.expected_answer = title_of(graph, c.target);
    } else {
      const std::string& id = det_pool[pick(rng, det_pool.size())];
      const auto& attrs = graph.node(id).attributes;
      std::vector<std::string> usable;
      for (const char* a : det_attrs)
        if (attrs.count(a)) usable.push_back(a);
      if (usable.empty()) {
        --i;  // try another node
        continue;
      }
      std::string attr = usable[pick(rng, usable.size())];
      q.text = "What is the " + attr + " of " + title_of(graph, id) + "?";
      q.deterministic = true;
      q.required_facts = 1;
      q.expected_answer = "[" + render_attr_value(attrs.at(attr)) + "]";
    }
    out.questions.push_back(std::move(q));
  }

  // Deterministic Fisher-Yates; std::shuffle sequences vary across stdlibs.
  for (std::size_t i = out.questions.size(); i > 1; --i)
    std::swap(out.questions[i - 1], out.questions[pick(rng, i)]);
  for (std::size_t i = 0; i < out.questions.size(); ++i) out.questions[i].id = "q" + pad4(static_cast<int>(i));
  return out;
}

}  // namespace glm
