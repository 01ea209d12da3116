#ifndef TIELAB_GRAPH_HPP
#define TIELAB_GRAPH_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tielab {

using NodeId = std::uint32_t;

// One survey row: src reported closeness for dst on the 0-7 scale.
struct NominationArc {
  NodeId src;
  NodeId dst;
  int closeness;
};

constexpr int kClosenessMin = 0;
constexpr int kClosenessMax = 7;
constexpr int kDefaultThreshold = 2;

// Directed weighted nomination graph. Node names from input files are mapped
// to dense indices; the mapping is part of the graph and written next to any
// derived output. Immutable once built, so it can be shared across workers.
class FriendshipGraph {
 public:
  // Validates every arc: scores in [0,7], no self-nominations, at most one
  // arc per ordered pair. Arc and node order are preserved as given.
  FriendshipGraph(std::vector<std::string> node_names, std::vector<NominationArc> arcs,
                  int threshold = kDefaultThreshold);

  std::size_t node_count() const { return node_names_.size(); }
  const std::vector<std::string>& node_names() const { return node_names_; }
  const std::string& name_of(NodeId id) const { return node_names_.at(id); }
  std::optional<NodeId> find_node(const std::string& name) const;

  const std::vector<NominationArc>& arcs() const { return arcs_; }
  int threshold() const { return threshold_; }

  // An arc is an explicit friendship tie iff closeness > threshold (strict).
  bool is_explicit(const NominationArc& arc) const { return arc.closeness > threshold_; }

  // Closeness of the arc src->dst if one was reported.
  std::optional<int> closeness(NodeId src, NodeId dst) const;

 private:
  std::vector<std::string> node_names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<NominationArc> arcs_;
  std::unordered_map<std::uint64_t, int> arc_scores_;  // (src,dst) -> closeness
  int threshold_;
};

// Survey CSV with header `src,dst,closeness`; node set is the union of the
// endpoints, numbered in order of first appearance.
FriendshipGraph load_graph(const std::filesystem::path& path, int threshold = kDefaultThreshold);

// JSON export with `nodes`, `arcs`, `threshold`; load_graph_json(save_graph_json(g)) == g.
void save_graph_json(const FriendshipGraph& graph, const std::filesystem::path& path);
FriendshipGraph load_graph_json(const std::filesystem::path& path);

enum class EdgeClass : std::uint8_t { Reciprocal, Unilateral };

// Classification of an ordered (ego, alter) pair.
enum class TieClass : std::uint8_t {
  Reciprocal,     // both nominate each other above threshold
  UnilateralOut,  // ego nominates alter only
  UnilateralIn,   // alter nominates ego only
  None,
};

// One friendship per unordered pair: a reciprocal edge owns both explicit
// arcs, a unilateral edge owns exactly one. u < v always.
struct LogicalEdge {
  NodeId u;
  NodeId v;
  EdgeClass cls;
  std::optional<NodeId> nominator;     // set iff unilateral; equals u or v
  std::optional<int> closeness_uv;     // score of explicit arc u->v
  std::optional<int> closeness_vu;     // score of explicit arc v->u

  bool is_reciprocal() const { return cls == EdgeClass::Reciprocal; }
  int owned_arc_count() const { return is_reciprocal() ? 2 : 1; }
};

// The classified view of a graph: logical edges in canonical (u, v) order
// plus an ordered-pair lookup.
class EdgeClassification {
 public:
  explicit EdgeClassification(std::vector<LogicalEdge> edges);

  const std::vector<LogicalEdge>& edges() const { return edges_; }
  std::size_t count(EdgeClass cls) const;

  TieClass tie_class(NodeId ego, NodeId alter) const;
  const LogicalEdge* edge_between(NodeId a, NodeId b) const;

 private:
  std::vector<LogicalEdge> edges_;
  std::map<std::pair<NodeId, NodeId>, std::size_t> by_pair_;
};

// Groups explicit arcs into logical edges. Arcs at or below the threshold
// own nothing. Output is independent of arc order in the input.
EdgeClassification classify(const FriendshipGraph& graph);

struct ReciprocityStats {
  std::size_t n_edges;
  std::size_t n_reciprocal;
  std::size_t n_unilateral;
  double fraction_reciprocal;
};

// Counts reciprocal vs unilateral logical edges. Throws EmptyInputError when
// there are no edges (the fraction is undefined).
ReciprocityStats reciprocity_stats(const EdgeClassification& classification);

// Classified-edge export/import: CSV `u,v,class,direction,closeness_uv,closeness_vu`
// with node names. The companion nodes CSV (`node,index`) pins the node
// universe so downstream consumers can validate membership.
void save_classified_csv(const FriendshipGraph& graph, const EdgeClassification& classification,
                         const std::filesystem::path& path);
void save_nodes_csv(const FriendshipGraph& graph, const std::filesystem::path& path);

struct LoadedClassification {
  std::vector<std::string> node_names;
  EdgeClassification classification;
};
LoadedClassification load_classified_csv(const std::filesystem::path& edges_path,
                                         const std::filesystem::path& nodes_path);

const char* to_string(EdgeClass cls);
const char* to_string(TieClass cls);

}  // namespace tielab

#endif  // TIELAB_GRAPH_HPP
