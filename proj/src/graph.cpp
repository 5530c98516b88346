#include "anelect/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace anelect {

PortGraph PortGraph::from_edges(int n, const std::vector<Edge>& edges) {
  PortGraph g;
  g.adj_.resize(n);
  auto put = [&](int a, int pa, int b, int pb) {
    if (a < 0 || a >= n) throw GraphError("edge endpoint out of range");
    if (pa < 0) throw GraphError("negative port");
    auto& row = g.adj_[a];
    if ((int)row.size() <= pa) row.resize(pa + 1);
    if (row[pa].node != -1) throw GraphError("port reused at node " + std::to_string(a));
    row[pa] = {b, pb};
  };
  for (const Edge& e : edges) {
    put(e.u, e.pu, e.v, e.pv);
    put(e.v, e.pv, e.u, e.pu);
  }
  return g;
}

PortGraph PortGraph::from_adjacency(std::vector<std::vector<HalfEdge>> adj) {
  PortGraph g;
  g.adj_ = std::move(adj);
  return g;
}

const HalfEdge& PortGraph::step(int v, int port) const {
  if (port < 0 || port >= (int)adj_[v].size() || adj_[v][port].node < 0)
    throw PathError("no port " + std::to_string(port) + " at node " + std::to_string(v));
  return adj_[v][port];
}

std::vector<PortGraph::Edge> PortGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < node_count(); ++u)
    for (int p = 0; p < (int)adj_[u].size(); ++p) {
      const HalfEdge& h = adj_[u][p];
      if (h.node > u || (h.node == u && h.rev_port > p)) out.push_back({u, p, h.node, h.rev_port});
    }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.pu < b.pu;
  });
  return out;
}

void validate(const PortGraph& g) {
  int n = g.node_count();
  if (n < 3) throw GraphError("graph must have at least 3 nodes");
  for (int v = 0; v < n; ++v) {
    const auto& row = g.neighbors(v);
    if (row.empty()) throw GraphError("isolated node " + std::to_string(v));
    std::set<int> seen;
    for (int p = 0; p < (int)row.size(); ++p) {
      const HalfEdge& h = row[p];
      if (h.node < 0 || h.node >= n)
        throw GraphError("port range violation at node " + std::to_string(v) +
                         ": port " + std::to_string(p) + " is unassigned or out of range");
      if (h.node == v) throw GraphError("self loop at node " + std::to_string(v));
      if (!seen.insert(h.node).second)
        throw GraphError("duplicate edge between " + std::to_string(v) + " and " +
                         std::to_string(h.node));
      if (h.rev_port < 0 || h.rev_port >= g.degree(h.node) ||
          g.neighbors(h.node)[h.rev_port].node != v ||
          g.neighbors(h.node)[h.rev_port].rev_port != p)
        throw GraphError("non-reciprocal ports on edge " + std::to_string(v) + "-" +
                         std::to_string(h.node));
    }
  }
  std::vector<int> dist = bfs_distances(g, 0);
  for (int v = 0; v < n; ++v)
    if (dist[v] < 0) throw GraphError("graph is disconnected");
}

PortGraph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<PortGraph::Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "n") {
      if (n != -1) throw ParseError("line " + std::to_string(lineno) + ": repeated n line");
      if (!(ls >> n) || n < 0)
        throw ParseError("line " + std::to_string(lineno) + ": bad node count");
    } else if (tag == "e") {
      if (n == -1)
        throw ParseError("line " + std::to_string(lineno) + ": edge before node count");
      PortGraph::Edge e;
      if (!(ls >> e.u >> e.pu >> e.v >> e.pv))
        throw ParseError("line " + std::to_string(lineno) + ": bad edge record");
      edges.push_back(e);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown record '" + tag + "'");
    }
    std::string rest;
    if (ls >> rest)
      throw ParseError("line " + std::to_string(lineno) + ": trailing tokens");
  }
  if (n == -1) throw ParseError("missing n line");
  try {
    return PortGraph::from_edges(n, edges);
  } catch (const GraphError& e) {
    throw ParseError(std::string("bad edge list: ") + e.what());
  }
}

void write_graph(std::ostream& out, const PortGraph& g) {
  out << "n " << g.node_count() << "\n";
  for (const auto& e : g.edges())
    out << "e " << e.u << " " << e.pu << " " << e.v << " " << e.pv << "\n";
}

PortGraph relabel(const PortGraph& g, const std::vector<int>& perm) {
  int n = g.node_count();
  if ((int)perm.size() != n) throw GraphError("permutation size mismatch");
  std::vector<std::vector<HalfEdge>> adj(n);
  for (int v = 0; v < n; ++v) {
    adj[perm[v]].resize(g.degree(v));
    for (int p = 0; p < g.degree(v); ++p) {
      const HalfEdge& h = g.neighbors(v)[p];
      adj[perm[v]][p] = {perm[h.node], h.rev_port};
    }
  }
  return PortGraph::from_adjacency(std::move(adj));
}

std::vector<int> bfs_distances(const PortGraph& g, int src) {
  std::vector<int> dist(g.node_count(), -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const HalfEdge& h : g.neighbors(v))
      if (h.node >= 0 && dist[h.node] < 0) {
        dist[h.node] = dist[v] + 1;
        q.push(h.node);
      }
  }
  return dist;
}

int eccentricity(const PortGraph& g, int v) {
  std::vector<int> dist = bfs_distances(g, v);
  int ecc = 0;
  for (int d : dist) {
    if (d < 0) throw GraphError("graph is disconnected");
    ecc = std::max(ecc, d);
  }
  return ecc;
}

int diameter(const PortGraph& g, ExecMode mode) {
  int n = g.node_count();
  int best = 0;
  if (mode == ExecMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(max : best)
    for (int v = 0; v < n; ++v) best = std::max(best, eccentricity(g, v));
    return best;
#endif
  }
  for (int v = 0; v < n; ++v) best = std::max(best, eccentricity(g, v));
  return best;
}

BfsTree canonical_bfs_tree(const PortGraph& g, int root,
                           const std::vector<long long>& labels) {
  int n = g.node_count();
  if ((int)labels.size() != n) throw GraphError("label vector size mismatch");
  {
    std::set<long long> uniq(labels.begin(), labels.end());
    if ((int)uniq.size() != n) throw GraphError("labels must be injective");
  }
  BfsTree t;
  t.root = root;
  t.depth = bfs_distances(g, root);
  t.parent.assign(n, -1);
  t.parent_port.assign(n, -1);
  t.child_port.assign(n, -1);
  t.label = labels;
  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    if (t.depth[v] < 0) throw GraphError("graph is disconnected");
    for (int p = 0; p < g.degree(v); ++p) {
      const HalfEdge& h = g.neighbors(v)[p];
      if (t.depth[h.node] == t.depth[v] - 1) {
        t.parent[v] = h.node;
        t.child_port[v] = p;
        t.parent_port[v] = h.rev_port;
        break;
      }
    }
  }
  return t;
}

LabeledTree to_labeled_tree(const BfsTree& t) {
  LabeledTree out;
  int n = (int)t.parent.size();
  out.root = t.root;
  out.nodes.resize(n);
  for (int v = 0; v < n; ++v) out.nodes[v].label = t.label[v];
  for (int v = 0; v < n; ++v)
    if (t.parent[v] >= 0)
      out.nodes[t.parent[v]].children.push_back({t.parent_port[v], t.child_port[v], v});
  for (auto& node : out.nodes)
    std::sort(node.children.begin(), node.children.end(),
              [](const LabeledTree::Child& a, const LabeledTree::Child& b) {
                return a.down_port < b.down_port;
              });
  return out;
}

WalkResult follow_path(const PortGraph& g, int start, const std::vector<int>& ports) {
  if (ports.size() % 2 != 0) throw PathError("port sequence must pair exit and entry ports");
  std::set<int> visited{start};
  WalkResult r{start, true};
  for (size_t i = 0; i < ports.size(); i += 2) {
    const HalfEdge& h = g.step(r.node, ports[i]);
    if (h.rev_port != ports[i + 1])
      throw PathError("arrival port mismatch at node " + std::to_string(h.node));
    r.node = h.node;
    if (!visited.insert(r.node).second) r.simple = false;
  }
  return r;
}

}  // namespace anelect
