#include "scistory/analytics/graph.hpp"

#include <algorithm>
#include <set>

#include "scistory/error.hpp"
#include "scistory/text/parse.hpp"

namespace scistory::analytics {

std::string_view to_string(Level level) noexcept { return level == Level::sentence ? "sentence" : "paragraph"; }

Level level_from_string(std::string_view name) {
  if (name == "sentence") return Level::sentence;
  if (name == "paragraph") return Level::paragraph;
  throw Error(ErrorCode::validation, "level must be 'sentence' or 'paragraph', got '" + std::string(name) + "'");
}

DocEntities doc_entities(std::string doc_id, std::string pub_date, const entities::EntityTable& table) {
  DocEntities d{std::move(doc_id), std::move(pub_date), {}, {}};
  for (const auto& e : table.entities) {
    d.canonical[e.id] = e.canonical;
    d.mentions.insert(d.mentions.end(), e.mentions.begin(), e.mentions.end());
  }
  std::sort(d.mentions.begin(), d.mentions.end(), [](const auto& a, const auto& b) {
    return std::tie(a.sentence_index, a.char_start) < std::tie(b.sentence_index, b.char_start);
  });
  return d;
}

CoocGraph::CoocGraph(std::vector<GraphNode> nodes,
                     const std::vector<std::tuple<std::string, std::string, double>>& edges, Level level)
    : level_(level), nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(), [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (nodes_[i].id == nodes_[i - 1].id) throw Error(ErrorCode::validation, "duplicate node '" + nodes_[i].id + "'");
  std::map<std::pair<std::size_t, std::size_t>, double> merged;
  for (const auto& [a, b, w] : edges) {
    const auto ia = index_of(a);
    const auto ib = index_of(b);
    if (!ia || !ib) throw Error(ErrorCode::validation, "edge (" + a + ", " + b + ") has an unknown endpoint");
    if (*ia == *ib) throw Error(ErrorCode::validation, "self-loop on '" + a + "'");
    if (!(w > 0.0)) throw Error(ErrorCode::validation, "edge (" + a + ", " + b + ") has non-positive weight");
    merged[std::minmax(*ia, *ib)] += w;
  }
  for (const auto& [key, w] : merged) edges_.push_back({key.first, key.second, w});
}

std::optional<std::size_t> CoocGraph::index_of(std::string_view id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const GraphNode& n, std::string_view key) { return n.id < key; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

double CoocGraph::weight(std::string_view a, std::string_view b) const {
  const auto ia = index_of(a);
  const auto ib = index_of(b);
  if (!ia || !ib || *ia == *ib) return 0.0;
  const auto [lo, hi] = std::minmax(*ia, *ib);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(lo, hi),
                             [](const GraphEdge& e, const std::pair<std::size_t, std::size_t>& k) {
                               return std::tie(e.a, e.b) < std::tie(k.first, k.second);
                             });
  return it != edges_.end() && it->a == lo && it->b == hi ? it->weight : 0.0;
}

double CoocGraph::total_weight() const {
  double m = 0.0;
  for (const auto& e : edges_) m += e.weight;
  return m;
}

CoocGraph cooccurrence(const std::vector<DocEntities>& docs, Level level) {
  std::map<std::string, double> node_weight;
  std::map<std::pair<std::string, std::string>, double> pair_weight;
  for (const auto& doc : docs) {
    std::map<std::size_t, std::set<std::string>> scenes;
    for (const auto& m : doc.mentions) {
      node_weight[m.entity_id] += 1.0;
      scenes[level == Level::sentence ? m.sentence_index : m.paragraph_index].insert(m.entity_id);
    }
    for (const auto& [scene, ids] : scenes)
      for (auto a = ids.begin(); a != ids.end(); ++a)
        for (auto b = std::next(a); b != ids.end(); ++b) pair_weight[{*a, *b}] += 1.0;
  }
  std::vector<GraphNode> nodes;
  for (const auto& [id, w] : node_weight) nodes.push_back({id, w});
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (const auto& [key, w] : pair_weight) edges.emplace_back(key.first, key.second, w);
  return CoocGraph(std::move(nodes), edges, level);
}

CoocGraph cooccurrence(const std::vector<entities::EntityMention>& mentions, Level level) {
  return cooccurrence(std::vector<DocEntities>{{"", "", mentions, {}}}, level);
}

double modularity(const CoocGraph& g, const Partition& p) {
  const double m = g.total_weight();
  if (!(m > 0.0)) throw Error(ErrorCode::undefined_modularity, "modularity is undefined for a graph without edges");
  std::vector<std::size_t> comm(g.nodes().size());
  std::size_t max_comm = 0;
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    auto it = p.find(g.nodes()[i].id);
    if (it == p.end()) throw Error(ErrorCode::validation, "partition does not cover node '" + g.nodes()[i].id + "'");
    comm[i] = it->second;
    max_comm = std::max(max_comm, it->second);
  }
  std::vector<double> internal(max_comm + 1, 0.0), total(max_comm + 1, 0.0);
  for (const auto& e : g.edges()) {
    total[comm[e.a]] += e.weight;
    total[comm[e.b]] += e.weight;
    if (comm[e.a] == comm[e.b]) internal[comm[e.a]] += e.weight;
  }
  double q = 0.0;
  for (std::size_t c = 0; c <= max_comm; ++c) {
    const double frac = total[c] / (2.0 * m);
    q += internal[c] / m - frac * frac;
  }
  return q;
}

namespace {

// Weighted graph used across Louvain levels; self-loops carry the weight
// folded in by aggregation.
struct WorkGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;
  std::vector<double> self_loop;

  std::size_t size() const { return adj.size(); }
  double degree(std::size_t i) const {
    double k = 2.0 * self_loop[i];
    for (const auto& [j, w] : adj[i]) k += w;
    return k;
  }
};

WorkGraph work_graph(const CoocGraph& g) {
  WorkGraph work;
  work.adj.resize(g.nodes().size());
  work.self_loop.assign(g.nodes().size(), 0.0);
  for (const auto& e : g.edges()) {
    work.adj[e.a].emplace_back(e.b, e.weight);
    work.adj[e.b].emplace_back(e.a, e.weight);
  }
  return work;
}

// Moves single nodes, in index order, to the neighbouring community with the
// best modularity gain until no move helps. `comm` holds the starting
// assignment. Returns whether any node moved.
bool local_moves(const WorkGraph& g, std::vector<std::size_t>& comm) {
  const std::size_t n = g.size();
  std::vector<double> k(n), tot(n, 0.0);
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = g.degree(i);
    m2 += k[i];
    tot[comm[i]] += k[i];
  }
  if (!(m2 > 0.0)) return false;

  bool any = false;
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t current = comm[i];
      std::map<std::size_t, double> links;  // community -> weight from i
      links[current] += 0.0;
      for (const auto& [j, w] : g.adj[i]) links[comm[j]] += w;
      tot[current] -= k[i];

      const auto gain = [&](std::size_t c) { return links[c] - tot[c] * k[i] / m2; };
      double best = gain(current);
      for (const auto& [c, w] : links) best = std::max(best, gain(c));
      const double eps = 1e-12 * (1.0 + std::abs(best) + k[i]);
      std::size_t chosen = current;
      if (gain(current) < best - eps) {
        for (const auto& [c, w] : links) {
          if (gain(c) >= best - eps) {
            chosen = c;  // links is ordered, so this is the lowest id
            break;
          }
        }
      }
      tot[chosen] += k[i];
      if (chosen != current) {
        comm[i] = chosen;
        moved = true;
        any = true;
      }
    }
  }
  return any;
}

// Dense renumbering by first appearance; returns the community count.
std::size_t renumber(std::vector<std::size_t>& comm) {
  std::map<std::size_t, std::size_t> dense;
  for (auto& c : comm) c = dense.emplace(c, dense.size()).first->second;
  return dense.size();
}

WorkGraph aggregate(const WorkGraph& work, const std::vector<std::size_t>& comm, std::size_t count) {
  WorkGraph agg;
  agg.adj.resize(count);
  agg.self_loop.assign(count, 0.0);
  std::vector<std::map<std::size_t, double>> between(count);
  for (std::size_t i = 0; i < work.size(); ++i) {
    agg.self_loop[comm[i]] += work.self_loop[i];
    for (const auto& [j, w] : work.adj[i]) {
      if (j < i) continue;  // each undirected edge once
      if (comm[i] == comm[j]) {
        agg.self_loop[comm[i]] += w;
      } else {
        between[comm[i]][comm[j]] += w;
        between[comm[j]][comm[i]] += w;
      }
    }
  }
  for (std::size_t c = 0; c < count; ++c)
    for (const auto& [d, w] : between[c]) agg.adj[c].emplace_back(d, w);
  return agg;
}

// Louvain levels starting from `membership` (original node -> community).
void run_levels(const WorkGraph& base, std::vector<std::size_t>& membership) {
  const std::size_t count = renumber(membership);
  WorkGraph work = aggregate(base, membership, count);
  while (true) {
    std::vector<std::size_t> comm(work.size());
    for (std::size_t i = 0; i < comm.size(); ++i) comm[i] = i;
    if (!local_moves(work, comm)) break;
    const std::size_t next = renumber(comm);
    for (auto& v : membership) v = comm[v];
    work = aggregate(work, comm, next);
  }
}

}  // namespace

Partition louvain(const CoocGraph& g) {
  const std::size_t n = g.nodes().size();
  if (n == 0) throw Error(ErrorCode::validation, "community detection needs at least one node");

  const WorkGraph base = work_graph(g);
  std::vector<std::size_t> membership(n);
  for (std::size_t i = 0; i < n; ++i) membership[i] = i;
  run_levels(base, membership);
  renumber(membership);

  Partition out;
  for (std::size_t i = 0; i < n; ++i) out[g.nodes()[i].id] = membership[i];
  return out;
}


std::vector<FrequencyRow> frequency_ranking(const entities::EntityTable& table, std::optional<std::size_t> top_k) {
  std::vector<FrequencyRow> rows;
  for (const auto& e : table.entities) rows.push_back({e.id, e.canonical, e.mention_count, e.first_sentence_index});
  std::stable_sort(rows.begin(), rows.end(), [](const FrequencyRow& a, const FrequencyRow& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.first_sentence_index != b.first_sentence_index) return a.first_sentence_index < b.first_sentence_index;
    return a.id < b.id;
  });
  if (top_k && rows.size() > *top_k) rows.resize(*top_k);
  return rows;
}

EvolutionData evolution(const std::vector<DocEntities>& docs) {
  struct Origin {
    std::string date, doc_id, canonical;
  };
  std::map<std::string, Origin> origin;
  for (const auto& d : docs) {
    if (d.pub_date.empty() || !text::is_valid_date(d.pub_date))
      throw Error(ErrorCode::metadata, "document '" + d.doc_id + "' has no valid pub_date");
    for (const auto& m : d.mentions) {
      auto cit = d.canonical.find(m.entity_id);
      const std::string canonical = cit == d.canonical.end() ? m.entity_id : cit->second;
      auto [it, inserted] = origin.emplace(m.entity_id, Origin{d.pub_date, d.doc_id, canonical});
      if (!inserted && std::tie(d.pub_date, d.doc_id) < std::tie(it->second.date, it->second.doc_id))
        it->second = Origin{d.pub_date, d.doc_id, canonical};
    }
  }
  EvolutionData out;
  for (const auto& [id, o] : origin) out.nodes.push_back({id, o.canonical, o.doc_id, o.date, 0});
  std::sort(out.nodes.begin(), out.nodes.end(), [](const EvolutionNode& a, const EvolutionNode& b) {
    return std::tie(a.origin_date, a.origin_doc_id, a.canonical, a.id) <
           std::tie(b.origin_date, b.origin_doc_id, b.canonical, b.id);
  });
  for (std::size_t i = 0; i < out.nodes.size(); ++i) out.nodes[i].x_rank = i;

  const auto g = cooccurrence(docs, Level::sentence);
  for (const auto& e : g.edges()) out.arcs.push_back({g.nodes()[e.a].id, g.nodes()[e.b].id, e.weight});
  return out;
}

nlohmann::json graph_to_json(const CoocGraph& g, const Partition& p,
                             const std::unordered_map<std::string, std::string>& labels) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : g.nodes()) {
    auto it = p.find(n.id);
    if (it == p.end()) throw Error(ErrorCode::validation, "partition does not cover node '" + n.id + "'");
    auto lit = labels.find(n.id);
    nodes.push_back({{"id", n.id},
                     {"label", lit == labels.end() ? n.id : lit->second},
                     {"weight", n.weight},
                     {"community", it->second}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"a", g.nodes()[e.a].id}, {"b", g.nodes()[e.b].id}, {"weight", e.weight}});
  return {{"nodes", nodes}, {"edges", edges}, {"level", to_string(g.level())}};
}

nlohmann::json to_json(const EvolutionData& e) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : e.nodes)
    nodes.push_back({{"id", n.id},
                     {"label", n.canonical},
                     {"origin_doc", n.origin_doc_id},
                     {"origin_date", n.origin_date},
                     {"x_rank", n.x_rank}});
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& a : e.arcs) arcs.push_back({{"a", a.a}, {"b", a.b}, {"weight", a.weight}});
  return {{"nodes", nodes}, {"arcs", arcs}};
}

nlohmann::json to_json(const std::vector<FrequencyRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"id", r.id}, {"label", r.canonical}, {"count", r.count}, {"first_sentence", r.first_sentence_index}});
  return arr;
}

}  // namespace scistory::analytics
