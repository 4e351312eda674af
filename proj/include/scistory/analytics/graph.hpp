#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "scistory/entities/recognize.hpp"

namespace scistory::analytics {

enum class Level { sentence, paragraph };

std::string_view to_string(Level level) noexcept;
Level level_from_string(std::string_view name);

// Entity mentions of one analyzed document plus what the collection views
// need to know about it.
struct DocEntities {
  std::string doc_id;
  std::string pub_date;
  std::vector<entities::EntityMention> mentions;
  std::unordered_map<std::string, std::string> canonical;  // entity id -> name
};

DocEntities doc_entities(std::string doc_id, std::string pub_date, const entities::EntityTable& table);

struct GraphNode {
  std::string id;
  double weight = 0.0;  // mention frequency

  bool operator==(const GraphNode&) const = default;
};

struct GraphEdge {
  std::size_t a = 0;  // node indices, a < b
  std::size_t b = 0;
  double weight = 0.0;

  bool operator==(const GraphEdge&) const = default;
};

/// Undirected weighted graph without self-loops. Nodes are kept sorted by id
/// and edges by (a, b).
class CoocGraph {
 public:
  CoocGraph() = default;
  // Edges name their endpoints by id; Error{validation} for self-loops,
  // non-positive weights or unknown endpoints. Parallel edges are summed.
  CoocGraph(std::vector<GraphNode> nodes, const std::vector<std::tuple<std::string, std::string, double>>& edges,
            Level level = Level::sentence);

  Level level() const noexcept { return level_; }
  const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  std::optional<std::size_t> index_of(std::string_view id) const;
  // 0 when the pair is not connected.
  double weight(std::string_view a, std::string_view b) const;
  double total_weight() const;

  bool operator==(const CoocGraph&) const = default;

 private:
  Level level_ = Level::sentence;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
};

/// Edge weight = number of scenes (sentences or paragraphs) in which both
/// entities are mentioned; repeated mentions inside one scene count once.
/// Node weight = total mentions.
CoocGraph cooccurrence(const std::vector<DocEntities>& docs, Level level);
CoocGraph cooccurrence(const std::vector<entities::EntityMention>& mentions, Level level);

// Entity id -> community id, ids dense from 0.
using Partition = std::map<std::string, std::size_t>;

/// Weighted Newman modularity at resolution 1. Throws
/// Error{undefined_modularity} when the graph has no edge weight and
/// Error{validation} when the partition does not cover every node.
double modularity(const CoocGraph& g, const Partition& p);

/// Two-phase Louvain with nodes visited in id order. Among equally good
/// moves the current community is kept if it is one of them, otherwise the
/// lowest community id wins. Communities are numbered by first appearance in
/// id order. Throws Error{validation} for a graph with no nodes.
Partition louvain(const CoocGraph& g);

struct FrequencyRow {
  std::string id;
  std::string canonical;
  std::size_t count = 0;
  std::size_t first_sentence_index = 0;

  bool operator==(const FrequencyRow&) const = default;
};

std::vector<FrequencyRow> frequency_ranking(const entities::EntityTable& table,
                                            std::optional<std::size_t> top_k = std::nullopt);

struct EvolutionNode {
  std::string id;
  std::string canonical;
  std::string origin_doc_id;
  std::string origin_date;
  std::size_t x_rank = 0;

  bool operator==(const EvolutionNode&) const = default;
};

struct EvolutionArc {
  std::string a;
  std::string b;
  double weight = 0.0;

  bool operator==(const EvolutionArc&) const = default;
};

struct EvolutionData {
  std::vector<EvolutionNode> nodes;
  std::vector<EvolutionArc> arcs;

  bool operator==(const EvolutionData&) const = default;
};

/// Each entity's origin is the earliest-dated document mentioning it (ties
/// by document id). Nodes are ordered by origin date, then document id, then
/// canonical name; arcs carry sentence-level co-occurrence summed over the
/// collection. Throws Error{metadata} for a missing or invalid pub_date.
EvolutionData evolution(const std::vector<DocEntities>& docs);

// {nodes:[{id,label,weight,community}], edges:[{a,b,weight}], level}
nlohmann::json graph_to_json(const CoocGraph& g, const Partition& p,
                             const std::unordered_map<std::string, std::string>& labels = {});
nlohmann::json to_json(const EvolutionData& e);
nlohmann::json to_json(const std::vector<FrequencyRow>& rows);

}  // namespace scistory::analytics
