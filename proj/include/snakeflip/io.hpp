#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "conjectures.hpp"
#include "flips.hpp"
#include "polytope.hpp"
#include "posets.hpp"
#include "regularity.hpp"
#include "verify.hpp"

namespace snakeflip {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json elements_json(Mask m) {
  Json a = Json::array();
  for (int x : bits_of(m)) a.push_back(x);
  return a;
}

inline Json poset_json(const Poset& p) {
  Json j;
  j["size"] = p.size;
  Json c = Json::array();
  for (auto [lo, hi] : p.covers) c.push_back({lo, hi});
  j["covers"] = c;
  j["labels"] = p.labels;
  return j;
}

inline Poset poset_from_json(const Json& j) {
  std::vector<std::pair<int, int>> covers;
  for (auto& c : j.at("covers")) covers.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  return make_poset(j.at("size").get<int>(), covers, j.at("labels").get<std::vector<std::string>>());
}

inline Json labels_json(const PointConfiguration& cfg, Mask m) {
  Json a = Json::array();
  for (int c : bits_of(m)) a.push_back(cfg.labels[static_cast<std::size_t>(c)]);
  return a;
}

inline Mask mask_from_labels(const PointConfiguration& cfg, const Json& a) {
  Mask m = 0;
  for (auto& v : a) {
    auto s = v.get<std::string>();
    auto it = std::find(cfg.labels.begin(), cfg.labels.end(), s);
    if (it == cfg.labels.end()) throw ParseError("unknown column label " + s, 0);
    m |= bit(static_cast<int>(it - cfg.labels.begin()));
  }
  return m;
}

inline Json columns_json(const PointConfiguration& cfg) {
  Json a = Json::array();
  for (int j = 0; j < cfg.size(); ++j) {
    Json c;
    c["label"] = cfg.labels[static_cast<std::size_t>(j)];
    c["filter"] = elements_json(cfg.filters[static_cast<std::size_t>(j)]);
    a.push_back(c);
  }
  return a;
}

inline Json circuit_json(const PointConfiguration& cfg, const Circuit& z) {
  Json j;
  j["plus"] = labels_json(cfg, z.plus);
  j["minus"] = labels_json(cfg, z.minus);
  return j;
}

inline Circuit circuit_from_json(const PointConfiguration& cfg, const Json& j) {
  return normalize_circuit({mask_from_labels(cfg, j.at("plus")), mask_from_labels(cfg, j.at("minus"))});
}

inline Json simplices_json(const PointConfiguration& cfg, const Triangulation& t) {
  Json a = Json::array();
  for (Simplex s : t.simplices) a.push_back(labels_json(cfg, s));
  return a;
}

inline Json triangulation_json(const PointConfiguration& cfg, const Triangulation& t) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = poset_json(cfg.poset);
  j["simplices"] = simplices_json(cfg, t);
  return j;
}

inline Triangulation triangulation_from_json(const PointConfiguration& cfg, const Json& j) {
  std::vector<Simplex> s;
  for (auto& x : j.at("simplices")) s.push_back(mask_from_labels(cfg, x));
  return make_triangulation(std::move(s));
}

inline Json flipgraph_json(const std::string& word, const PointConfiguration& cfg, const FlipGraph& g,
                           bool include_nodes) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["word"] = word;
  j["partial"] = g.partial;
  if (g.partial) j["stop_reason"] = g.stop_reason;
  j["node_count"] = g.size();
  j["edge_count"] = g.edges.size();
  Json nodes = Json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    Json n;
    n["name"] = g.name(static_cast<int>(v));
    n["depth"] = g.depth[v];
    n["flips"] = g.move_count[v];
    if (include_nodes) n["simplices"] = simplices_json(cfg, g.nodes[v]);
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  Json edges = Json::array();
  for (auto& e : g.edges) {
    Json x;
    x["a"] = g.name(e.a);
    x["b"] = g.name(e.b);
    x["circuit"] = circuit_json(cfg, e.circuit);
    edges.push_back(x);
  }
  j["edges"] = edges;
  return j;
}

inline std::string flipgraph_dot(const FlipGraph& g) {
  std::ostringstream s;
  s << "graph flips {\n";
  for (std::size_t v = 0; v < g.size(); ++v) s << "  " << g.name(static_cast<int>(v)) << ";\n";
  for (auto& e : g.edges) s << "  " << g.name(e.a) << " -- " << g.name(e.b) << ";\n";
  s << "}\n";
  return s.str();
}

// Vertices of a dual graph are simplex positions in lexicographic order.
inline std::string dual_graph_dot(const Graph& g) {
  std::ostringstream s;
  s << "graph dual {\n";
  for (int v = 0; v < g.n; ++v) s << "  s" << v << ";\n";
  for (int v = 0; v < g.n; ++v)
    for (int u : g.adj[static_cast<std::size_t>(v)])
      if (v < u) s << "  s" << v << " -- s" << u << ";\n";
  s << "}\n";
  return s.str();
}

inline Json regularity_json(const PointConfiguration& cfg, const RegularityResult& r) {
  Json j;
  j["regular"] = r.regular;
  j["method"] = r.method;
  j["forms"] = r.forms;
  if (r.regular) {
    Json h;
    for (int c = 0; c < cfg.size(); ++c) h[cfg.labels[static_cast<std::size_t>(c)]] = r.heights[static_cast<std::size_t>(c)].get_str();
    j["heights"] = h;
  } else {
    Json w = Json::array();
    for (auto& y : r.weights) w.push_back(y.get_str());
    j["weights"] = w;
  }
  return j;
}

inline Json conjecture_json(const ConjectureReport& r) {
  Json j;
  j["id"] = r.id;
  j["subject"] = r.subject;
  j["verdict"] = r.partial ? "partial" : r.holds ? "supported" : "not supported";
  Json f;
  for (auto& [k, v] : r.facts) f[k] = v;
  j["facts"] = f;
  return j;
}

inline Json verify_json(const VerifySummary& s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json a = Json::array();
  for (auto& l : s.lines) a.push_back({{"check", l.name}, {"ok", l.ok}, {"detail", l.detail}});
  j["checks"] = a;
  j["ok"] = s.ok();
  return j;
}

}  // namespace snakeflip
