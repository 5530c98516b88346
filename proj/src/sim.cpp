#include "anelect/sim.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace anelect {

namespace {

constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
constexpr uint64_t kRoundCap = 4096;  // literal simulation budget

}  // namespace

uint64_t sat_add(uint64_t a, uint64_t b) { return a > kMax - b ? kMax : a + b; }

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kMax / b ? kMax : a * b;
}

uint64_t sat_pow(uint64_t base, uint64_t exp) {
  uint64_t out = 1;
  while (exp > 0) {
    if (exp & 1) out = sat_mul(out, base);
    exp >>= 1;
    if (exp) base = sat_mul(base, base);
  }
  return out;
}

uint64_t tower2(uint64_t k) {
  uint64_t out = 1;
  for (uint64_t i = 0; i < k; ++i) {
    if (out >= 64) return kMax;
    out = (uint64_t)1 << out;
  }
  return out;
}

uint64_t log2_floor(uint64_t x) {
  if (x == 0) throw SimError("log of zero");
  uint64_t out = 0;
  while (x >>= 1) ++out;
  return out;
}

uint64_t log_star2(uint64_t x) {
  if (x == 0) throw SimError("log* of zero");
  uint64_t k = 0;
  while (tower2(k) < x) ++k;
  return k;
}

BitString variant_advice_bits(int variant, uint64_t phi) {
  if (phi < 1) throw AdviceError("phi must be positive");
  switch (variant) {
    case 1:
      return bin_int(phi);
    case 2:
      return bin_int(log2_floor(phi));
    case 3:
      if (phi < 2) throw AdviceError("variant 3 is undefined for phi = 1");
      return bin_int(log2_floor(log2_floor(phi)));
    case 4:
      return bin_int(log_star2(phi));
  }
  throw SimError("unknown variant");
}

namespace {

// 2^e - 1 style bounds: once the power clamps, the decrement is already
// swallowed by the saturation error, so keep kMax instead of kMax - 1
uint64_t pred_sat(uint64_t x) { return x == kMax ? kMax : x - 1; }

}  // namespace

uint64_t variant_p(int variant, uint64_t decoded) {
  switch (variant) {
    case 1:
      return decoded;
    case 2:
      return pred_sat(sat_pow(2, sat_add(decoded, 1)));
    case 3:
      return pred_sat(sat_pow(2, sat_pow(2, sat_add(decoded, 1))));
    case 4:
      return pred_sat(tower2(sat_add(decoded, 1)));
  }
  throw SimError("unknown variant");
}

uint64_t variant_t(int variant, int c, uint64_t diam, uint64_t phi) {
  if (c < 2) throw SimError("constant must be at least 2");
  switch (variant) {
    case 1:
      return sat_add(diam, sat_add(phi, (uint64_t)c));
    case 2:
      return sat_add(diam, sat_mul((uint64_t)c, phi));
    case 3:
      return sat_add(diam, sat_pow(phi, (uint64_t)c));
    case 4:
      return sat_add(diam, sat_pow((uint64_t)c, phi));
  }
  throw SimError("unknown variant");
}

BitString dphi_advice_bits(uint64_t diam, uint64_t phi) {
  return concat({bin_int(diam), bin_int(phi)});
}

namespace {

// Lexicographically smallest (p,q) pair sequence among the shortest walks
// from u to any node of targets. Shortest walks are geodesics, so every
// step must reduce the distance to the target set by one.
std::vector<int> lex_min_path(const PortGraph& g, int u, const std::vector<int>& targets) {
  int n = g.node_count();
  std::vector<int> dist(n, -1);
  std::vector<int> queue;
  for (int t : targets)
    if (dist[t] != 0) {
      dist[t] = 0;
      queue.push_back(t);
    }
  for (size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (const HalfEdge& h : g.neighbors(v))
      if (dist[h.node] < 0) {
        dist[h.node] = dist[v] + 1;
        queue.push_back(h.node);
      }
  }
  if (dist[u] < 0) throw SimError("no target is reachable");
  std::vector<int> out;
  std::vector<char> in_state(n, 0);
  std::vector<int> states{u};
  in_state[u] = 1;
  for (int remaining = dist[u]; remaining > 0; --remaining) {
    int bp = -1, bq = -1;
    for (int v : states)
      for (int p = 0; p < g.degree(v); ++p) {
        const HalfEdge& h = g.neighbors(v)[p];
        if (dist[h.node] != remaining - 1) continue;
        if (bp < 0 || p < bp || (p == bp && h.rev_port < bq)) {
          bp = p;
          bq = h.rev_port;
        }
      }
    std::vector<int> next;
    for (int v : states) {
      in_state[v] = 0;
      if (bp >= g.degree(v)) continue;
      const HalfEdge& h = g.neighbors(v)[bp];
      if (h.rev_port == bq && dist[h.node] == remaining - 1 && !in_state[h.node]) {
        in_state[h.node] = 1;
        next.push_back(h.node);
      }
    }
    out.push_back(bp);
    out.push_back(bq);
    states = std::move(next);
  }
  return out;
}

// (q, p) port pairs along the tree path between the nodes labeled from
// and to, climbing to their lowest common ancestor and descending.
std::vector<int> tree_path(const LabeledTree& t, long long from, long long to) {
  int n = (int)t.nodes.size();
  std::vector<int> parent(n, -1), up(n, -1), down(n, -1), depth(n, 0);
  std::vector<int> order{t.root};
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (const auto& c : t.nodes[v].children) {
      parent[c.node] = v;
      down[c.node] = c.down_port;
      up[c.node] = c.up_port;
      depth[c.node] = depth[v] + 1;
      order.push_back(c.node);
    }
  }
  if ((int)order.size() != n) throw AdviceError("advice tree is not connected");
  int a = -1, b = -1;
  for (int v = 0; v < n; ++v) {
    if (t.nodes[v].label == from && a < 0) a = v;
    if (t.nodes[v].label == to && b < 0) b = v;
  }
  if (a < 0) throw AdviceError("advice tree lacks label " + std::to_string(from));
  if (b < 0) throw AdviceError("advice tree lacks label " + std::to_string(to));
  std::vector<int> climb, descend;
  while (depth[a] > depth[b]) {
    climb.push_back(up[a]);
    climb.push_back(down[a]);
    a = parent[a];
  }
  while (depth[b] > depth[a]) {
    descend.push_back(up[b]);
    descend.push_back(down[b]);
    b = parent[b];
  }
  while (a != b) {
    climb.push_back(up[a]);
    climb.push_back(down[a]);
    a = parent[a];
    descend.push_back(up[b]);
    descend.push_back(down[b]);
    b = parent[b];
  }
  // descend edges were collected upward; flip them into walking order
  for (size_t i = descend.size(); i >= 2; i -= 2) {
    climb.push_back(descend[i - 1]);
    climb.push_back(descend[i - 2]);
  }
  return climb;
}

ElectionOutcome abort_all(int n, uint64_t rounds, const std::string& note) {
  ElectionOutcome out;
  out.nodes.assign(n, NodeResult{{}, rounds, note});
  out.rounds = rounds;
  return out;
}

}  // namespace

ElectionOutcome run_elect(const PortGraph& g, const BitString& advice) {
  int n = g.node_count();
  AdvicePayload p;
  try {
    p = decode_advice(advice);
  } catch (const DecodeError& e) {
    return abort_all(n, 0, std::string("advice decode failed: ") + e.what());
  }
  if (p.phi < 1) return abort_all(n, 0, "advice depth is not positive");
  if ((uint64_t)p.phi > kRoundCap)
    return abort_all(n, 0, "advice depth too large to simulate");
  ElectionOutcome out;
  out.nodes.resize(n);
  out.rounds = (uint64_t)p.phi;
  ViewFactory f(g);
  LabelContext ctx(p.e1, p.e2, f.builder());
  for (int v = 0; v < n; ++v) {
    out.nodes[v].rounds = (uint64_t)p.phi;
    try {
      long long label = ctx.retrieve_label(f.view(v, p.phi));
      out.nodes[v].output = tree_path(p.tree, label, 1);
    } catch (const std::runtime_error& e) {
      out.nodes[v].output.clear();
      out.nodes[v].note = e.what();
    }
  }
  return out;
}

ElectionOutcome run_generic(const PortGraph& g, uint64_t x) {
  if (x < 1) throw SimError("waiting depth must be positive");
  int n = g.node_count();
  uint64_t diam = (uint64_t)diameter(g);
  ElectionOutcome out;
  out.nodes.resize(n);

  if (sat_add(x, diam + 1) > kRoundCap) {
    // too long to run literally; for x >= phi the run is forced: node u
    // stops after x + ecc(u) + 1 rounds and the smallest view seen is the
    // depth-x view of the node whose depth-phi view is order-minimal
    Refinement ref = refine(g);
    int phi = ref.first_depth_with(n);
    if (phi < 0 || (uint64_t)phi > x)
      throw SimError("waiting depth too large to simulate");
    const ViewPartition& part = ref.by_depth[phi];
    int s = -1;
    for (int v = 0; v < n; ++v)
      if (part.class_of[v] == 0) s = v;
    for (int u = 0; u < n; ++u) {
      out.nodes[u].rounds = sat_add(x, (uint64_t)eccentricity(g, u) + 1);
      out.nodes[u].output = lex_min_path(g, u, {s});
    }
    out.rounds = sat_add(x, diam + 1);
    return out;
  }

  int xi = (int)x;
  ViewFactory f(g);
  ViewComparator cmp;
  struct State {
    std::vector<char> walk;                // nodes reachable by a length-(r-x) walk
    std::set<const ViewNode*> seen;        // interned views collected so far
    std::vector<ViewPtr> seen_list;
    bool done = false;
  };
  std::vector<State> st(n);
  for (int u = 0; u < n; ++u) {
    st[u].walk.assign(n, 0);
    st[u].walk[u] = 1;
    ViewPtr own = f.view(u, xi);
    st[u].seen.insert(own.get());
    st[u].seen_list.push_back(own);
  }
  int active = n;
  for (int r = xi; active > 0; ++r) {
    if (r > xi + n + 1) throw SimError("waiting protocol failed to stop");
    for (int u = 0; u < n; ++u) {
      if (st[u].done) continue;
      std::vector<char> next(n, 0);
      for (int v = 0; v < n; ++v)
        if (st[u].walk[v])
          for (const HalfEdge& h : g.neighbors(v)) next[h.node] = 1;
      bool grew = false;
      for (int v = 0; v < n; ++v) {
        if (!next[v]) continue;
        ViewPtr b = f.view(v, xi);
        if (st[u].seen.insert(b.get()).second) {
          st[u].seen_list.push_back(b);
          grew = true;
        }
      }
      if (!grew) {
        st[u].done = true;
        --active;
        out.nodes[u].rounds = (uint64_t)r + 1;
        const ViewPtr* best = &st[u].seen_list[0];
        for (const ViewPtr& b : st[u].seen_list)
          if (cmp.compare(b, *best) < 0) best = &b;
        std::vector<int> targets;
        for (int v = 0; v < n; ++v)
          if (f.view(v, xi).get() == best->get()) targets.push_back(v);
        out.nodes[u].output = lex_min_path(g, u, targets);
      } else {
        st[u].walk = std::move(next);
      }
    }
  }
  for (int u = 0; u < n; ++u) out.rounds = std::max(out.rounds, out.nodes[u].rounds);
  return out;
}

ElectionOutcome run_election_variant(const PortGraph& g, int variant, int c,
                                     const BitString& advice) {
  if (variant < 1 || variant > 4) throw SimError("variant must be 1..4");
  if (c < 2) throw SimError("constant must be at least 2");
  uint64_t decoded = int_from_bin(advice);
  uint64_t p = variant_p(variant, decoded);
  return run_generic(g, p);
}

ElectionOutcome run_election_dphi(const PortGraph& g, const BitString& advice) {
  int n = g.node_count();
  uint64_t dp = 0, php = 0;
  try {
    std::vector<BitString> parts = decode(advice);
    if (parts.size() != 2) return abort_all(n, 0, "advice must hold two integers");
    dp = int_from_bin(parts[0]);
    php = int_from_bin(parts[1]);
  } catch (const DecodeError& e) {
    return abort_all(n, 0, std::string("advice decode failed: ") + e.what());
  }
  if (php < 1) return abort_all(n, 0, "advice depth is not positive");
  uint64_t total = sat_add(dp, php);
  if (total > kRoundCap) return abort_all(n, 0, "advice rounds too large to simulate");
  ElectionOutcome out;
  out.nodes.resize(n);
  out.rounds = total;
  ViewFactory f(g);
  ViewComparator cmp;
  int phd = (int)php;
  for (int u = 0; u < n; ++u) {
    out.nodes[u].rounds = total;
    std::vector<int> dist = bfs_distances(g, u);
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if ((uint64_t)dist[v] > dp) continue;
      if (best < 0 || cmp.compare(f.view(v, phd), f.view(best, phd)) < 0) best = v;
    }
    std::vector<int> targets;
    for (int v = 0; v < n; ++v)
      if ((uint64_t)dist[v] <= dp && f.view(v, phd).get() == f.view(best, phd).get())
        targets.push_back(v);
    out.nodes[u].output = lex_min_path(g, u, targets);
  }
  return out;
}

VerifyReport verify_outcome(const PortGraph& g, const ElectionOutcome& o) {
  VerifyReport rep;
  int n = g.node_count();
  if ((int)o.nodes.size() != n) {
    rep.error = "outcome covers " + std::to_string(o.nodes.size()) + " of " +
                std::to_string(n) + " nodes";
    return rep;
  }
  std::vector<int> endpoint(n);
  for (int v = 0; v < n; ++v) {
    try {
      WalkResult w = follow_path(g, v, o.nodes[v].output);
      if (!w.simple) {
        rep.offender = v;
        rep.error = "output of node " + std::to_string(v) + " is not a simple path";
        return rep;
      }
      endpoint[v] = w.node;
    } catch (const PathError& e) {
      rep.offender = v;
      rep.error = e.what();
      return rep;
    }
  }
  for (int v = 1; v < n; ++v)
    if (endpoint[v] != endpoint[0]) {
      rep.offender = v;
      rep.error = "outputs disagree on the elected node";
      return rep;
    }
  rep.ok = true;
  rep.leader = endpoint[0];
  return rep;
}

void write_outcome(std::ostream& out, const ElectionOutcome& o) {
  for (size_t v = 0; v < o.nodes.size(); ++v) {
    out << v << ' ' << o.nodes[v].output.size() / 2;
    for (int p : o.nodes[v].output) out << ' ' << p;
    out << '\n';
  }
}

ElectionOutcome read_outcome(std::istream& in) {
  ElectionOutcome o;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    long long v, k;
    if (!(ls >> v)) continue;
    if (!(ls >> k) || k < 0)
      throw ParseError("line " + std::to_string(lineno) + ": bad pair count");
    if (v != (long long)o.nodes.size())
      throw ParseError("line " + std::to_string(lineno) + ": nodes out of order");
    NodeResult r;
    for (long long i = 0; i < 2 * k; ++i) {
      int p;
      if (!(ls >> p)) throw ParseError("line " + std::to_string(lineno) + ": truncated ports");
      r.output.push_back(p);
    }
    int extra;
    if (ls >> extra) throw ParseError("line " + std::to_string(lineno) + ": trailing ports");
    o.nodes.push_back(std::move(r));
  }
  return o;
}

}  // namespace anelect
