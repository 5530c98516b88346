#include "anelect/families.hpp"

#include <algorithm>
#include <set>

#include "anelect/views.hpp"

namespace anelect {

namespace {

uint64_t ipow(uint64_t b, int e) {
  uint64_t out = 1;
  for (int i = 0; i < e; ++i) out *= b;
  return out;
}

// Edges of member t on local ids 0..x, node 0 distinguished. The base
// assignment hands out smallest free ports in node order, then the ports
// of node j+1 are rotated by the j-th digit of the member index.
std::vector<PortGraph::Edge> clique_member_edges(int x, uint64_t t) {
  if (x < 2) throw FamilyError("clique family needs x >= 2");
  if (t < 1 || t > clique_family_size(x))
    throw FamilyError("clique member index out of range");
  int m = x + 1;
  std::vector<int> next_free(m, 0);
  std::vector<PortGraph::Edge> edges;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      edges.push_back({i, next_free[i], j, next_free[j]});
      ++next_free[i];
      ++next_free[j];
    }
  std::vector<int> shift(x);
  uint64_t rem = t - 1;
  for (int j = x - 1; j >= 0; --j) {
    shift[j] = 1 + (int)(rem % (uint64_t)(x - 1));
    rem /= (uint64_t)(x - 1);
  }
  for (auto& e : edges) {
    if (e.u > 0) e.pu = (e.pu + shift[e.u - 1]) % x;
    if (e.v > 0) e.pv = (e.pv + shift[e.v - 1]) % x;
  }
  return edges;
}

}  // namespace

uint64_t clique_family_size(int x) {
  if (x < 2) throw FamilyError("clique family needs x >= 2");
  return ipow((uint64_t)(x - 1), x);
}

LabeledClique gen_clique_member(int x, uint64_t t) {
  LabeledClique c;
  c.g = PortGraph::from_edges(x + 1, clique_member_edges(x, t));
  c.r = 0;
  return c;
}

std::vector<LabeledClique> gen_clique_family(int x) {
  uint64_t y = clique_family_size(x);
  if (y > 100000) throw FamilyError("clique family too large to materialize");
  std::vector<LabeledClique> out;
  out.reserve(y);
  for (uint64_t t = 1; t <= y; ++t) out.push_back(gen_clique_member(x, t));
  return out;
}

RingCliquesResult gen_ring_cliques(int k, int x, const std::vector<int>& perm) {
  if (k < 3) throw FamilyError("ring needs at least 3 joints");
  if ((uint64_t)k > clique_family_size(x))
    throw FamilyError("not enough distinct clique members for k joints");
  if ((int)perm.size() != k - 1) throw FamilyError("perm must place members 2..k");
  std::set<int> seen(perm.begin(), perm.end());
  if ((int)seen.size() != k - 1 || *seen.begin() != 2 || *seen.rbegin() != k)
    throw FamilyError("perm must be a permutation of 2..k");
  int unit = x + 1;
  std::vector<PortGraph::Edge> edges;
  RingCliquesResult res;
  for (int i = 0; i < k; ++i) {
    int joint = i * unit;
    res.joints.push_back(joint);
    uint64_t t = i == 0 ? 1 : (uint64_t)perm[i - 1];
    for (auto e : clique_member_edges(x, t)) {
      e.u = e.u == 0 ? joint : joint + e.u;
      e.v = e.v == 0 ? joint : joint + e.v;
      edges.push_back(e);
    }
  }
  for (int i = 0; i < k; ++i)
    edges.push_back({i * unit, x, ((i + 1) % k) * unit, x + 1});
  res.g = PortGraph::from_edges(k * unit, edges);
  return res;
}

NecklaceResult gen_necklace(const NecklaceSpec& spec) {
  int k = spec.k, x = spec.x, phi = spec.phi;
  if (k < 4 || k % 2 != 0) throw FamilyError("necklace needs an even k >= 4");
  if (x < 2) throw FamilyError("necklace needs x >= 2");
  if ((uint64_t)k > clique_family_size(x))
    throw FamilyError("not enough distinct clique members for k joints");
  if (phi < 2) throw FamilyError("necklace needs phi >= 2");
  if ((int)spec.code.size() != k) throw FamilyError("code must have k entries");
  if (spec.code.front() != 0 || spec.code.back() != 0)
    throw FamilyError("code must start and end with 0");
  for (int c : spec.code)
    if (c < 0 || c > x) throw FamilyError("code entries must lie in 0..x");

  int nchain = phi - 1;
  int base = 2 * nchain;
  int unit = x + 1;
  int dbase = base + k * unit;
  int n = dbase + (k - 1) * x;
  auto aid = [&](int j) { return j; };
  auto bid = [&](int j) { return nchain + j; };
  auto wid = [&](int i) { return base + (i - 1) * unit; };
  auto vid = [&](int i, int j) { return wid(i) + 1 + j; };
  auto did = [&](int i, int j) { return dbase + (i - 1) * x + j; };
  std::vector<PortGraph::Edge> edges;

  // pendant chains: leaf at index 0, port 0 always points toward the joint
  auto chain = [&](auto id_of, int joint) {
    for (int j = 0; j + 1 < nchain; ++j) edges.push_back({id_of(j), 0, id_of(j + 1), 1});
    edges.push_back({id_of(nchain - 1), 0, joint, 2 * x});
  };
  chain(aid, wid(1));
  chain(bid, wid(k));

  for (int i = 1; i <= k; ++i)
    for (auto e : clique_member_edges(x, (uint64_t)i)) {
      e.u = e.u == 0 ? wid(i) : vid(i, e.u - 1);
      e.v = e.v == 0 ? wid(i) : vid(i, e.v - 1);
      edges.push_back(e);
    }

  // one internal port assignment shared by all diamonds
  std::vector<PortGraph::Edge> internal;
  {
    std::vector<int> nf(x, 0);
    for (int a = 0; a < x; ++a)
      for (int b = a + 1; b < x; ++b) {
        internal.push_back({a, nf[a], b, nf[b]});
        ++nf[a];
        ++nf[b];
      }
  }
  auto dport = [&](int i, int p) { return (p + spec.code[i - 1]) % (x + 1); };
  for (int i = 1; i <= k - 1; ++i) {
    for (const auto& e : internal)
      edges.push_back({did(i, e.u), dport(i, e.pu), did(i, e.v), dport(i, e.pv)});
    // ray ranges alternate with the diamond index so that the two ranges
    // meeting at an inner joint never collide
    int at_wi = (i % 2 == 1) ? x : 2 * x;
    int at_wn = ((i + 1) % 2 == 0) ? x : 2 * x;
    for (int j = 0; j < x; ++j) {
      edges.push_back({did(i, j), dport(i, x - 1), wid(i), at_wi + j});
      edges.push_back({did(i, j), dport(i, x), wid(i + 1), at_wn + j});
    }
  }

  NecklaceResult res;
  res.g = PortGraph::from_edges(n, edges);
  res.left_leaf = aid(0);
  res.right_leaf = bid(0);
  for (int i = 1; i <= k; ++i) res.joints.push_back(wid(i));
  return res;
}

HairyRingResult gen_hairy_ring(const HairyRingSpec& spec) {
  int n = spec.ring;
  if (n < 3) throw FamilyError("ring needs at least 3 nodes");
  if ((int)spec.stars.size() != n) throw FamilyError("one star count per ring node");
  int mx = -1, mx_count = 0;
  for (int s : spec.stars) {
    if (s < 0) throw FamilyError("negative star count");
    if (s > mx) {
      mx = s;
      mx_count = 1;
    } else if (s == mx) {
      ++mx_count;
    }
  }
  if (mx < 1 || mx_count != 1) throw FamilyError("star counts need a unique maximum");
  std::vector<PortGraph::Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, 0, (i + 1) % n, 1});
  int next = n;
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < spec.stars[i]; ++s) {
      edges.push_back({i, 2 + s, next, 0});
      ++next;
    }
  HairyRingResult res;
  res.g = PortGraph::from_edges(next, edges);
  for (int i = 0; i < n; ++i) res.ring_nodes.push_back(i);
  return res;
}

Fragment cut(const HairyRingResult& h) {
  Fragment f;
  int n = h.g.node_count();
  f.rows.resize(n);
  for (int v = 0; v < n; ++v) f.rows[v] = h.g.neighbors(v);
  int w1 = h.ring_nodes.front();
  int wn = h.ring_nodes.back();
  if (f.rows[wn][0].node != w1 || f.rows[w1][1].node != wn)
    throw FamilyError("ring edge not where expected");
  f.rows[wn][0] = {-1, -1};
  f.rows[w1][1] = {-1, -1};
  f.first = w1;
  f.last = wn;
  return f;
}

StretchResult gamma_stretch(const Fragment& f, int gamma) {
  if (gamma < 2) throw FamilyError("stretch needs gamma >= 2");
  int m = (int)f.rows.size();
  if (f.rows[f.first].size() < 2 || f.rows[f.first][1].node != -1 ||
      f.rows[f.last].empty() || f.rows[f.last][0].node != -1)
    throw FamilyError("fragment holes not where expected");
  // the outermost copy boundaries lose their hole: ports above it slide down
  auto port_of = [&](int copy, int node, int p) {
    if (copy == 0 && node == f.first && p > 1) return p - 1;
    if (copy == gamma - 1 && node == f.last) return p - 1;
    return p;
  };
  std::vector<PortGraph::Edge> edges;
  for (int c = 0; c < gamma; ++c)
    for (int v = 0; v < m; ++v)
      for (int p = 0; p < (int)f.rows[v].size(); ++p) {
        const HalfEdge& h = f.rows[v][p];
        if (h.node < 0) continue;
        if (h.node < v || (h.node == v && h.rev_port < p)) continue;
        edges.push_back({c * m + v, port_of(c, v, p), c * m + h.node,
                         port_of(c, h.node, h.rev_port)});
      }
  for (int c = 1; c < gamma; ++c)
    edges.push_back({c * m + f.first, 1, (c - 1) * m + f.last, 0});
  StretchResult res;
  res.g = PortGraph::from_edges(gamma * m, edges);
  for (int c = 0; c < gamma; ++c) res.anchors.push_back(c * m + f.first);
  res.first = f.first;
  res.last = (gamma - 1) * m + f.last;
  return res;
}

bool certify_ring_cliques(const RingCliquesResult& r) {
  validate(r.g);
  auto idx = election_index(r.g);
  return idx.has_value() && *idx == 1;
}

bool certify_necklace(const NecklaceResult& r, const NecklaceSpec& spec) {
  validate(r.g);
  auto idx = election_index(r.g);
  if (!idx.has_value() || *idx != spec.phi) return false;
  ViewBuilder b;
  ViewPtr left = aug_view(r.g, r.left_leaf, spec.phi - 1, b);
  ViewPtr right = aug_view(r.g, r.right_leaf, spec.phi - 1, b);
  return views_equal(left, right);
}

bool certify_hairy_ring(const HairyRingResult& r) {
  validate(r.g);
  return is_feasible(r.g);
}

}  // namespace anelect
