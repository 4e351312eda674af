#pragma once

// Reference modularity computed straight from the double-sum definition over
// the adjacency matrix, and exhaustive search over set partitions.

#include <functional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "scistory/analytics/graph.hpp"

namespace scistory::testing {

inline double modularity_by_definition(const analytics::CoocGraph& g, const std::vector<std::size_t>& comm) {
  const std::size_t n = g.nodes().size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) {
    a[e.a][e.b] += e.weight;
    a[e.b][e.a] += e.weight;
  }
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += a[i][j];
      two_m += a[i][j];
    }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (comm[i] == comm[j]) q += a[i][j] - k[i] * k[j] / two_m;
  return q / two_m;
}

// Calls fn for every set partition of n elements (restricted growth strings).
inline void for_each_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max_used) {
    if (i == n) {
      fn(rgs);
      return;
    }
    for (std::size_t c = 0; c <= max_used + 1; ++c) {
      rgs[i] = c;
      rec(i + 1, std::max(max_used, c));
    }
  };
  if (n == 0) return;
  rgs[0] = 0;
  rec(1, 0);
}

inline double brute_force_max_modularity(const analytics::CoocGraph& g) {
  double best = -1.0;
  for_each_partition(g.nodes().size(), [&](const std::vector<std::size_t>& p) {
    best = std::max(best, modularity_by_definition(g, p));
  });
  return best;
}

inline std::vector<std::size_t> as_vector(const analytics::CoocGraph& g, const analytics::Partition& p) {
  std::vector<std::size_t> out;
  for (const auto& node : g.nodes()) out.push_back(p.at(node.id));
  return out;
}

inline analytics::CoocGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes = 8, bool integer_weights = true) {
  const std::size_t n = 2 + rng() % (max_nodes - 1);
  std::vector<analytics::GraphNode> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({"n" + std::to_string(i), 1.0});
  std::vector<std::tuple<std::string, std::string, double>> edges;
  const double density = 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (static_cast<double>(rng() % 1000) / 1000.0 < density) {
        const double w = integer_weights ? static_cast<double>(1 + rng() % 4) : 0.5 + static_cast<double>(rng() % 100) / 40.0;
        edges.emplace_back(nodes[i].id, nodes[j].id, w);
      }
  if (edges.empty()) edges.emplace_back(nodes[0].id, nodes[1].id, 1.0);
  return analytics::CoocGraph(nodes, edges);
}

}  // namespace scistory::testing
