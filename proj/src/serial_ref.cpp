#include "anelect/serial_ref.hpp"

#include <deque>
#include <map>

namespace anelect::serial {

namespace {

// Class ids via an ordered map, so ids follow the key order directly.
template <typename K>
int assign_ids(const std::vector<K>& keys, std::vector<int>& rank) {
  std::map<K, int> ids;
  for (const K& k : keys) ids.emplace(k, 0);
  int next = 0;
  for (auto& [key, id] : ids) id = next++;
  rank.resize(keys.size());
  for (size_t i = 0; i < keys.size(); ++i) rank[i] = ids.at(keys[i]);
  return (int)ids.size();
}

}  // namespace

Refinement refine(const PortGraph& g) {
  int n = g.node_count();
  Refinement out;
  std::vector<int> exact, layered;
  {
    std::vector<int> degs(n);
    for (int v = 0; v < n; ++v) degs[v] = g.degree(v);
    int classes = assign_ids(degs, exact);
    layered = exact;
    out.by_depth.push_back({0, classes, layered});
  }
  for (int t = 1;; ++t) {
    std::vector<std::vector<int>> keys(n);
    for (int v = 0; v < n; ++v) {
      keys[v].push_back(g.degree(v));
      for (const HalfEdge& h : g.neighbors(v)) {
        keys[v].push_back(h.rev_port);
        keys[v].push_back(exact[h.node]);
      }
    }
    std::vector<int> exact_next;
    int classes = assign_ids(keys, exact_next);
    std::vector<std::pair<int, int>> lkeys(n);
    for (int v = 0; v < n; ++v) lkeys[v] = {layered[v], exact_next[v]};
    std::vector<int> layered_next;
    assign_ids(lkeys, layered_next);
    out.by_depth.push_back({t, classes, layered_next});
    if (classes == out.by_depth[t - 1].classes) break;
    exact = std::move(exact_next);
    layered = std::move(layered_next);
  }
  return out;
}

int diameter(const PortGraph& g) {
  int n = g.node_count();
  int best = 0;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::deque<int> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (const HalfEdge& h : g.neighbors(v)) {
        if (dist[h.node] < 0) {
          dist[h.node] = dist[v] + 1;
          q.push_back(h.node);
        }
      }
    }
    for (int d : dist) {
      if (d < 0) throw GraphError("diameter of a disconnected graph");
      best = std::max(best, d);
    }
  }
  return best;
}

}  // namespace anelect::serial
