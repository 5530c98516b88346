#include "anelect/views.hpp"

#include <algorithm>
#include <numeric>

namespace anelect {

size_t ViewBuilder::KeyHash::operator()(const Key& k) const {
  size_t h = std::hash<int>()(k.degree);
  for (const auto& [port, child] : k.children) {
    h = h * 1000003u + (size_t)port;
    h = h * 1000003u + std::hash<const void*>()(child);
  }
  return h;
}

ViewPtr ViewBuilder::frontier(int degree) {
  if (degree < 0) throw ViewError("negative degree");
  auto it = frontiers_.find(degree);
  if (it != frontiers_.end()) return it->second;
  auto node = std::make_shared<ViewNode>();
  node->degree = degree;
  frontiers_.emplace(degree, node);
  all_.push_back(node);
  return node;
}

ViewPtr ViewBuilder::internal(int degree, std::vector<std::pair<int, ViewPtr>> children) {
  if ((int)children.size() != degree || degree <= 0)
    throw ViewError("internal view node needs one child per port");
  int child_depth = children[0].second->depth;
  Key key{degree, {}};
  key.children.reserve(children.size());
  for (const auto& [port, child] : children) {
    if (!child || child->depth != child_depth)
      throw ViewError("children of a view node must share one depth");
    key.children.emplace_back(port, child.get());
  }
  auto it = interned_.find(key);
  if (it != interned_.end()) return it->second;
  auto node = std::make_shared<ViewNode>();
  node->degree = degree;
  node->depth = child_depth + 1;
  node->children = std::move(children);
  interned_.emplace(std::move(key), node);
  all_.push_back(node);
  return node;
}

ViewPtr ViewBuilder::truncate(const ViewPtr& v, int depth) {
  if (!v) throw ViewError("truncate of null view");
  if (depth < 0) throw ViewError("negative view depth");
  if (depth > v->depth) throw ViewError("cannot extend a view by truncation");
  auto memo_key = std::make_pair(v.get(), depth);
  auto it = trunc_memo_.find(memo_key);
  if (it != trunc_memo_.end()) return it->second;
  ViewPtr out;
  if (depth == 0) {
    out = frontier(v->degree);
  } else {
    std::vector<std::pair<int, ViewPtr>> kids;
    kids.reserve(v->children.size());
    for (const auto& [port, child] : v->children)
      kids.emplace_back(port, truncate(child, depth - 1));
    out = internal(v->degree, std::move(kids));
  }
  trunc_memo_.emplace(memo_key, out);
  return out;
}

ViewPtr ViewFactory::view(int v, int depth) {
  if (v < 0 || v >= g_.node_count()) throw ViewError("view of unknown node");
  if (depth < 0) throw ViewError("negative view depth");
  int n = g_.node_count();
  while ((int)levels_.size() <= depth) {
    int t = (int)levels_.size();
    std::vector<ViewPtr> cur(n);
    for (int u = 0; u < n; ++u) {
      if (t == 0) {
        cur[u] = b_.frontier(g_.degree(u));
      } else {
        std::vector<std::pair<int, ViewPtr>> kids;
        kids.reserve(g_.degree(u));
        for (const HalfEdge& h : g_.neighbors(u))
          kids.emplace_back(h.rev_port, levels_[t - 1][h.node]);
        cur[u] = b_.internal(g_.degree(u), std::move(kids));
      }
    }
    levels_.push_back(std::move(cur));
  }
  return levels_[depth][v];
}

ViewPtr aug_view(const PortGraph& g, int v, int depth, ViewBuilder& b) {
  int n = g.node_count();
  std::vector<ViewPtr> prev(n), cur(n);
  for (int u = 0; u < n; ++u) prev[u] = b.frontier(g.degree(u));
  for (int t = 1; t <= depth; ++t) {
    for (int u = 0; u < n; ++u) {
      std::vector<std::pair<int, ViewPtr>> kids;
      kids.reserve(g.degree(u));
      for (const HalfEdge& h : g.neighbors(u))
        kids.emplace_back(h.rev_port, prev[h.node]);
      cur[u] = b.internal(g.degree(u), std::move(kids));
    }
    std::swap(prev, cur);
  }
  return prev[v];
}

std::strong_ordering ViewComparator::exact(const ViewNode* a, const ViewNode* b, int depth) {
  if (a == b) return std::strong_ordering::equal;
  if (depth == 0) return a->degree <=> b->degree;
  if (a->depth < depth || b->depth < depth)
    throw ViewError("compare beyond view depth");
  if (auto c = a->degree <=> b->degree; c != 0) return c;
  auto key = std::make_tuple(a, b, depth);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  auto result = std::strong_ordering::equal;
  for (int p = 0; p < a->degree && result == 0; ++p) {
    const auto& [qa, ca] = a->children[p];
    const auto& [qb, cb] = b->children[p];
    if (auto c = qa <=> qb; c != 0) {
      result = c;
      break;
    }
    result = exact(ca.get(), cb.get(), depth - 1);
  }
  memo_.emplace(key, result);
  return result;
}

std::strong_ordering ViewComparator::compare(const ViewPtr& a, const ViewPtr& b) {
  if (!a || !b) throw ViewError("compare of null view");
  if (a->depth != b->depth) throw ViewError("compare of views with different depths");
  for (int t = 0; t <= a->depth; ++t)
    if (auto c = exact(a.get(), b.get(), t); c != 0) return c;
  return std::strong_ordering::equal;
}

std::strong_ordering compare_views(const ViewPtr& a, const ViewPtr& b) {
  ViewComparator cmp;
  return cmp.compare(a, b);
}

bool views_equal(const ViewPtr& a, const ViewPtr& b) {
  if (!a || !b) throw ViewError("equality of null view");
  if (a->depth != b->depth) return false;
  ViewComparator cmp;
  return cmp.exact(a.get(), b.get(), a->depth) == 0;
}

ViewPtr extract_subview(ViewBuilder& b, const ViewPtr& v, const std::vector<int>& path, int x) {
  if (!v) throw ViewError("subview of null view");
  if (x < 0) throw ViewError("negative view depth");
  if ((int)path.size() + x > v->depth)
    throw ViewError("subview path plus depth exceeds view depth");
  ViewPtr cur = v;
  for (int p : path) {
    if (p < 0 || p >= (int)cur->children.size())
      throw ViewError("subview path leaves port range");
    cur = cur->children[p].second;
  }
  return b.truncate(cur, x);
}

BitString bin_depth1(const ViewPtr& v) {
  if (!v || v->depth != 1) throw ViewError("bin_depth1 needs a depth 1 view");
  std::vector<BitString> parts;
  parts.reserve(v->degree);
  for (int p = 0; p < v->degree; ++p) {
    const auto& [q, child] = v->children[p];
    parts.push_back(concat({bin_int((uint64_t)p), bin_int((uint64_t)q),
                            bin_int((uint64_t)child->degree)}));
  }
  return concat(parts);
}

namespace {

// Expands the DAG into an explicit tree, so only sensible for small depths.
int dump_view(const ViewNode* v, RawTree& t) {
  int idx = (int)t.nodes.size();
  t.nodes.push_back({bin_int((uint64_t)v->degree), {}});
  for (const auto& [q, child] : v->children) {
    int at = dump_view(child.get(), t);
    int p = (int)t.nodes[idx].children.size();
    t.nodes[idx].children.push_back({p, q, at});
  }
  return idx;
}

}  // namespace

BitString encode_view(const ViewPtr& v) {
  if (!v) throw ViewError("encode of null view");
  RawTree t;
  dump_view(v.get(), t);
  return encode_raw_tree(t);
}

int Refinement::first_depth_with(int classes) const {
  for (const ViewPartition& p : by_depth)
    if (p.classes == classes) return p.depth;
  return -1;
}

namespace {

// Ranks each node by its key; equal keys share a rank and ranks follow the
// sort order of the keys. Returns the number of distinct keys.
template <typename K>
int rank_keys(const std::vector<K>& keys, std::vector<int>& rank) {
  int n = (int)keys.size();
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return keys[a] < keys[b]; });
  rank.assign(n, 0);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && keys[idx[i]] != keys[idx[i - 1]]) ++r;
    rank[idx[i]] = r;
  }
  return n == 0 ? 0 : r + 1;
}

}  // namespace

Refinement refine(const PortGraph& g, ExecMode mode) {
  int n = g.node_count();
  if (n == 0) throw ViewError("refine of empty graph");
  bool par = mode == ExecMode::parallel;
  (void)par;
  Refinement out;

  // Depth 0 ranks by degree; the exact and layered orders coincide there.
  std::vector<int> erank, lrank;
  {
    std::vector<int> keys(n);
    for (int v = 0; v < n; ++v) keys[v] = g.degree(v);
    int classes = rank_keys(keys, erank);
    lrank = erank;
    out.by_depth.push_back({0, classes, lrank});
  }

  for (int t = 1;; ++t) {
    // Key of v at depth t: degree, then per port the arrival port and the
    // depth t-1 exact rank of the neighbor. Equal keys are equal views.
    std::vector<std::vector<int>> keys(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (par)
#endif
    for (int v = 0; v < n; ++v) {
      std::vector<int>& key = keys[v];
      key.reserve(1 + 2 * (size_t)g.degree(v));
      key.push_back(g.degree(v));
      for (const HalfEdge& h : g.neighbors(v)) {
        key.push_back(h.rev_port);
        key.push_back(erank[h.node]);
      }
    }
    std::vector<int> erank_new;
    int classes = rank_keys(keys, erank_new);

    // Layered rank: refine the previous layered order by the new exact one.
    std::vector<std::pair<int, int>> lkeys(n);
    for (int v = 0; v < n; ++v) lkeys[v] = {lrank[v], erank_new[v]};
    std::vector<int> lrank_new;
    int lclasses = rank_keys(lkeys, lrank_new);
    if (lclasses != classes) throw ViewError("rank chains disagree");

    out.by_depth.push_back({t, classes, lrank_new});
    if (classes == out.by_depth[t - 1].classes) break;
    if (t > n + 1) throw ViewError("refinement failed to stabilize");
    erank = std::move(erank_new);
    lrank = std::move(lrank_new);
  }
  return out;
}

std::optional<int> election_index(const PortGraph& g) {
  Refinement r = refine(g);
  int d = r.first_depth_with(g.node_count());
  if (d < 0) return std::nullopt;
  return d;
}

bool is_feasible(const PortGraph& g) { return election_index(g).has_value(); }

bool view_multisets_differ(const PortGraph& a, const PortGraph& b) {
  int na = a.node_count(), nb = b.node_count();
  std::vector<std::vector<HalfEdge>> rows(na + nb);
  for (int v = 0; v < na; ++v) rows[v] = a.neighbors(v);
  for (int v = 0; v < nb; ++v) {
    rows[na + v] = b.neighbors(v);
    for (HalfEdge& h : rows[na + v]) h.node += na;
  }
  PortGraph u = PortGraph::from_adjacency(std::move(rows));
  Refinement r = refine(u, ExecMode::serial);
  const std::vector<int>& cls = r.by_depth.back().class_of;
  std::vector<int> ma(cls.begin(), cls.begin() + na);
  std::vector<int> mb(cls.begin() + na, cls.end());
  std::sort(ma.begin(), ma.end());
  std::sort(mb.begin(), mb.end());
  return ma != mb;
}

}  // namespace anelect
