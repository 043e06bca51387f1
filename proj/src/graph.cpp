#include "nacsc/graph.hpp"

#include <algorithm>
#include <string>

#include "nacsc/errors.hpp"

namespace nacsc {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
  if (n < 0) throw DomainError("node count must be non-negative");
  adjacency_.resize(n);
  std::vector<std::pair<int, int>> canonical;
  canonical.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw DomainError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                        ") out of range for n=" + std::to_string(n));
    if (a == b) {
      ++self_loops_dropped_;
      continue;
    }
    canonical.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(canonical.begin(), canonical.end());
  canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());
  edge_count_ = canonical.size();
  for (const auto& [a, b] : canonical) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return false;
  const auto& nbrs = adjacency_[i].size() <= adjacency_[j].size() ? adjacency_[i] : adjacency_[j];
  int target = (&nbrs == &adjacency_[i]) ? j : i;
  return std::binary_search(nbrs.begin(), nbrs.end(), target);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int i = 0; i < n_; ++i)
    for (int j : adjacency_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) d[i] = g.degree(i);
  return d;
}

double average_degree(const Graph& g) {
  if (g.node_count() == 0) throw DomainError("average degree of an empty graph is undefined");
  return 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
}

}  // namespace nacsc
