#ifndef NACSC_GRAPH_HPP
#define NACSC_GRAPH_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace nacsc {

// Undirected simple graph: symmetric sparse adjacency, no self-loops.
// Immutable after construction; neighbor lists are sorted ascending.
class Graph {
 public:
  Graph() = default;

  // Builds from an edge list. Duplicate edges collapse to one; self-loops
  // are dropped and counted. Indices must lie in [0, n).
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<int>& neighbors(int i) const { return adjacency_[i]; }
  bool has_edge(int i, int j) const;
  int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }

  // Undirected edge set as (i, j) with i < j, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const;

  int self_loops_dropped() const { return self_loops_dropped_; }

 private:
  int n_ = 0;
  std::size_t edge_count_ = 0;
  int self_loops_dropped_ = 0;
  std::vector<std::vector<int>> adjacency_;
};

std::vector<int> degrees(const Graph& g);

// (sum of degrees) / n = 2|E|/n. Throws DomainError on an empty node set.
double average_degree(const Graph& g);

}  // namespace nacsc

#endif
