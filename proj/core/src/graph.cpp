#include "tielab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <json.hpp>

#include "tielab/csv.hpp"
#include "tielab/error.hpp"
#include "tielab/io.hpp"

namespace tielab {

namespace {

std::uint64_t pair_key(NodeId src, NodeId dst) {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

int parse_closeness(const std::string& text, std::size_t line_no) {
  int value = 0;
  const auto* begin = text.data();
  const auto* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("closeness is not an integer: '" + text + "'", line_no);
  }
  return value;
}

}  // namespace

FriendshipGraph::FriendshipGraph(std::vector<std::string> node_names,
                                 std::vector<NominationArc> arcs, int threshold)
    : node_names_(std::move(node_names)), arcs_(std::move(arcs)), threshold_(threshold) {
  index_.reserve(node_names_.size());
  for (NodeId i = 0; i < node_names_.size(); ++i) {
    if (node_names_[i].empty()) throw ValidationError("empty node name");
    if (!index_.emplace(node_names_[i], i).second) {
      throw ValidationError("duplicate node name: " + node_names_[i]);
    }
  }
  arc_scores_.reserve(arcs_.size());
  for (const auto& arc : arcs_) {
    if (arc.src >= node_names_.size() || arc.dst >= node_names_.size()) {
      throw ValidationError("arc endpoint outside node set");
    }
    if (arc.src == arc.dst) {
      throw ValidationError("self-nomination not allowed: " + node_names_[arc.src]);
    }
    if (arc.closeness < kClosenessMin || arc.closeness > kClosenessMax) {
      throw ValidationError("closeness " + std::to_string(arc.closeness) + " outside [0,7] on " +
                            node_names_[arc.src] + " -> " + node_names_[arc.dst]);
    }
    if (!arc_scores_.emplace(pair_key(arc.src, arc.dst), arc.closeness).second) {
      throw ValidationError("duplicate nomination " + node_names_[arc.src] + " -> " +
                            node_names_[arc.dst]);
    }
  }
}

std::optional<NodeId> FriendshipGraph::find_node(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FriendshipGraph::closeness(NodeId src, NodeId dst) const {
  auto it = arc_scores_.find(pair_key(src, dst));
  if (it == arc_scores_.end()) return std::nullopt;
  return it->second;
}

FriendshipGraph load_graph(const std::filesystem::path& path, int threshold) {
  const auto table = csv::read_table(path, "src,dst,closeness");
  std::vector<std::string> names;
  std::unordered_map<std::string, NodeId> index;
  auto intern = [&](const std::string& name, std::size_t line_no) -> NodeId {
    if (name.empty()) throw ParseError("empty node name", line_no);
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const NodeId id = static_cast<NodeId>(names.size());
    names.push_back(name);
    index.emplace(name, id);
    return id;
  };

  std::vector<NominationArc> arcs;
  arcs.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line_no = table.line_numbers[r];
    if (row.size() != 3) {
      throw ParseError("expected 3 fields, got " + std::to_string(row.size()), line_no);
    }
    NominationArc arc;
    arc.src = intern(row[0], line_no);
    arc.dst = intern(row[1], line_no);
    arc.closeness = parse_closeness(row[2], line_no);
    arcs.push_back(arc);
  }
  return FriendshipGraph(std::move(names), std::move(arcs), threshold);
}

void save_graph_json(const FriendshipGraph& graph, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["nodes"] = graph.node_names();
  auto& arcs = doc["arcs"] = nlohmann::json::array();
  for (const auto& arc : graph.arcs()) {
    arcs.push_back({{"src", graph.name_of(arc.src)},
                    {"dst", graph.name_of(arc.dst)},
                    {"closeness", arc.closeness}});
  }
  doc["threshold"] = graph.threshold();
  atomic_write(path, doc.dump(2) + "\n");
}

FriendshipGraph load_graph_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("bad graph JSON in " + path.string() + ": " + e.what());
  }
  try {
    std::vector<std::string> names = doc.at("nodes").get<std::vector<std::string>>();
    std::unordered_map<std::string, NodeId> index;
    for (NodeId i = 0; i < names.size(); ++i) index.emplace(names[i], i);
    std::vector<NominationArc> arcs;
    for (const auto& entry : doc.at("arcs")) {
      const auto src = index.find(entry.at("src").get<std::string>());
      const auto dst = index.find(entry.at("dst").get<std::string>());
      if (src == index.end() || dst == index.end()) {
        throw ValidationError("arc endpoint missing from nodes list in " + path.string());
      }
      arcs.push_back({src->second, dst->second, entry.at("closeness").get<int>()});
    }
    return FriendshipGraph(std::move(names), std::move(arcs), doc.at("threshold").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("bad graph JSON in " + path.string() + ": " + e.what());
  }
}

EdgeClassification::EdgeClassification(std::vector<LogicalEdge> edges)
    : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), [](const LogicalEdge& a, const LogicalEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i].v) throw ValidationError("logical edge with equal endpoints");
    if (!by_pair_.emplace(std::make_pair(edges_[i].u, edges_[i].v), i).second) {
      throw ValidationError("more than one logical edge for the same pair");
    }
  }
}

std::size_t EdgeClassification::count(EdgeClass cls) const {
  std::size_t n = 0;
  for (const auto& e : edges_) n += (e.cls == cls);
  return n;
}

const LogicalEdge* EdgeClassification::edge_between(NodeId a, NodeId b) const {
  const auto key = std::minmax(a, b);
  auto it = by_pair_.find({key.first, key.second});
  if (it == by_pair_.end()) return nullptr;
  return &edges_[it->second];
}

TieClass EdgeClassification::tie_class(NodeId ego, NodeId alter) const {
  const LogicalEdge* edge = edge_between(ego, alter);
  if (edge == nullptr) return TieClass::None;
  if (edge->is_reciprocal()) return TieClass::Reciprocal;
  return *edge->nominator == ego ? TieClass::UnilateralOut : TieClass::UnilateralIn;
}

EdgeClassification classify(const FriendshipGraph& graph) {
  // Explicit score per canonical pair, split by direction.
  struct PairScores {
    std::optional<int> uv;
    std::optional<int> vu;
  };
  std::map<std::pair<NodeId, NodeId>, PairScores> pairs;
  for (const auto& arc : graph.arcs()) {
    if (!graph.is_explicit(arc)) continue;
    const bool forward = arc.src < arc.dst;
    const auto key = forward ? std::make_pair(arc.src, arc.dst) : std::make_pair(arc.dst, arc.src);
    auto& entry = pairs[key];
    (forward ? entry.uv : entry.vu) = arc.closeness;
  }

  std::vector<LogicalEdge> edges;
  edges.reserve(pairs.size());
  for (const auto& [key, scores] : pairs) {
    LogicalEdge edge;
    edge.u = key.first;
    edge.v = key.second;
    edge.closeness_uv = scores.uv;
    edge.closeness_vu = scores.vu;
    if (scores.uv && scores.vu) {
      edge.cls = EdgeClass::Reciprocal;
    } else {
      edge.cls = EdgeClass::Unilateral;
      edge.nominator = scores.uv ? edge.u : edge.v;
    }
    edges.push_back(edge);
  }
  return EdgeClassification(std::move(edges));
}

ReciprocityStats reciprocity_stats(const EdgeClassification& classification) {
  const std::size_t n = classification.edges().size();
  if (n == 0) throw EmptyInputError("no logical edges: reciprocity fraction undefined");
  const std::size_t rec = classification.count(EdgeClass::Reciprocal);
  return ReciprocityStats{n, rec, n - rec,
                          static_cast<double>(rec) / static_cast<double>(n)};
}

void save_classified_csv(const FriendshipGraph& graph, const EdgeClassification& classification,
                         const std::filesystem::path& path) {
  csv::Writer out;
  out.row({"u", "v", "class", "direction", "closeness_uv", "closeness_vu"});
  auto score = [](const std::optional<int>& s) { return s ? std::to_string(*s) : ""; };
  for (const auto& e : classification.edges()) {
    out.row({graph.name_of(e.u), graph.name_of(e.v), to_string(e.cls),
             e.nominator ? graph.name_of(*e.nominator) : "", score(e.closeness_uv),
             score(e.closeness_vu)});
  }
  atomic_write(path, out.str());
}

void save_nodes_csv(const FriendshipGraph& graph, const std::filesystem::path& path) {
  csv::Writer out;
  out.row({"node", "index"});
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    out.row({graph.name_of(i), std::to_string(i)});
  }
  atomic_write(path, out.str());
}

LoadedClassification load_classified_csv(const std::filesystem::path& edges_path,
                                         const std::filesystem::path& nodes_path) {
  const auto node_table = csv::read_table(nodes_path, "node,index");
  std::vector<std::string> names(node_table.rows.size());
  std::unordered_map<std::string, NodeId> index;
  for (std::size_t r = 0; r < node_table.rows.size(); ++r) {
    const auto& row = node_table.rows[r];
    if (row.size() != 2) throw ParseError("expected 2 fields", node_table.line_numbers[r]);
    const auto id = static_cast<NodeId>(std::stoul(row[1]));
    if (id >= names.size() || !names[id].empty()) {
      throw ParseError("node indices must be dense and unique", node_table.line_numbers[r]);
    }
    names[id] = row[0];
    index.emplace(row[0], id);
  }

  const auto table = csv::read_table(edges_path, "u,v,class,direction,closeness_uv,closeness_vu");
  std::vector<LogicalEdge> edges;
  edges.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line_no = table.line_numbers[r];
    if (row.size() != 6) {
      throw ParseError("expected 6 fields, got " + std::to_string(row.size()), line_no);
    }
    auto lookup = [&](const std::string& name) -> NodeId {
      auto it = index.find(name);
      if (it == index.end()) throw ParseError("unknown node '" + name + "'", line_no);
      return it->second;
    };
    LogicalEdge edge;
    edge.u = lookup(row[0]);
    edge.v = lookup(row[1]);
    if (edge.u > edge.v) std::swap(edge.u, edge.v);
    if (row[2] == to_string(EdgeClass::Reciprocal)) {
      edge.cls = EdgeClass::Reciprocal;
    } else if (row[2] == to_string(EdgeClass::Unilateral)) {
      edge.cls = EdgeClass::Unilateral;
      edge.nominator = lookup(row[3]);
      if (*edge.nominator != edge.u && *edge.nominator != edge.v) {
        throw ParseError("direction must name one of the endpoints", line_no);
      }
    } else {
      throw ParseError("unknown edge class '" + row[2] + "'", line_no);
    }
    if (!row[4].empty()) edge.closeness_uv = parse_closeness(row[4], line_no);
    if (!row[5].empty()) edge.closeness_vu = parse_closeness(row[5], line_no);
    edges.push_back(edge);
  }
  return LoadedClassification{std::move(names), EdgeClassification(std::move(edges))};
}

const char* to_string(EdgeClass cls) {
  return cls == EdgeClass::Reciprocal ? "reciprocal" : "unilateral";
}

const char* to_string(TieClass cls) {
  switch (cls) {
    case TieClass::Reciprocal: return "reciprocal";
    case TieClass::UnilateralOut: return "unilateral_out";
    case TieClass::UnilateralIn: return "unilateral_in";
    case TieClass::None: return "none";
  }
  return "none";
}

}  // namespace tielab
