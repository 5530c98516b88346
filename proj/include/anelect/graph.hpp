#pragma once
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "trie.hpp"

namespace anelect {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExecMode { serial, parallel };

struct HalfEdge {
  int node = -1;
  int rev_port = -1;
};

// Simple connected graph where every node numbers its incident edges with
// local ports 0..deg-1. Immutable once built; run validate() before handing
// a graph to any algorithm.
class PortGraph {
 public:
  struct Edge {
    int u, pu, v, pv;
  };

  PortGraph() = default;
  // Reciprocal by construction; throws GraphError if a port is reused.
  static PortGraph from_edges(int n, const std::vector<Edge>& edges);
  // Raw adjacency, for tests that need to build broken graphs.
  static PortGraph from_adjacency(std::vector<std::vector<HalfEdge>> adj);

  int node_count() const { return (int)adj_.size(); }
  int degree(int v) const { return (int)adj_[v].size(); }
  const HalfEdge& step(int v, int port) const;
  const std::vector<HalfEdge>& neighbors(int v) const { return adj_[v]; }
  // Canonical edge list: u < v, sorted by (u, pu).
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<HalfEdge>> adj_;
};

// Checks n >= 3, no self loops or duplicate edges, ports exactly 0..deg-1,
// reciprocal port references and connectivity. Throws GraphError.
void validate(const PortGraph& g);

PortGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const PortGraph& g);

// Image graph under a node permutation: node v becomes perm[v].
PortGraph relabel(const PortGraph& g, const std::vector<int>& perm);

std::vector<int> bfs_distances(const PortGraph& g, int src);
int diameter(const PortGraph& g, ExecMode mode = ExecMode::parallel);
int eccentricity(const PortGraph& g, int v);

// BFS tree where the parent of a node at level i+1 is the level-i neighbor
// behind that node's smallest port leading to level i.
struct BfsTree {
  int root = 0;
  std::vector<int> parent;       // -1 at the root
  std::vector<int> parent_port;  // port at the parent toward this node
  std::vector<int> child_port;   // port at this node toward the parent
  std::vector<int> depth;
  std::vector<long long> label;
};

BfsTree canonical_bfs_tree(const PortGraph& g, int root,
                           const std::vector<long long>& labels);
LabeledTree to_labeled_tree(const BfsTree& t);

struct WalkResult {
  int node = -1;
  bool simple = true;
};

// Walks (p1,q1,...,pk,qk) from start: leave through port p_i, check the
// arrival port is q_i. Throws PathError on a bad port or arrival mismatch.
WalkResult follow_path(const PortGraph& g, int start, const std::vector<int>& ports);

}  // namespace anelect
