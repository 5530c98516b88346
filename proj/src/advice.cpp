#include "anelect/advice.hpp"

#include <algorithm>
#include <string>

namespace anelect {

long long local_label(const ViewPtr& b, const std::vector<long long>& x, const Trie& t) {
  if (t.empty()) throw AdviceError("label query on an empty trie");
  BitString bin;
  if (x.empty()) bin = bin_depth1(b);
  int idx = t.root;
  long long acc = 0;
  while (!t.nodes[idx].leaf) {
    const auto& nd = t.nodes[idx];
    bool left;
    if (x.empty()) {
      if (nd.qa == 0) {
        left = (long long)bin.size() < nd.qb;
      } else if (nd.qa == 1) {
        if (nd.qb < 1 || (size_t)nd.qb > bin.size())
          throw AdviceError("bit query outside the view code");
        left = bin.bit(nd.qb) == 0;
      } else {
        throw AdviceError("unknown query kind in depth-1 trie");
      }
    } else {
      if (nd.qa < 0 || (size_t)nd.qa >= x.size())
        throw AdviceError("port query outside the child label list");
      left = x[nd.qa] != nd.qb;
    }
    if (left) {
      idx = nd.left;
    } else {
      acc += t.leaves_of(nd.left);
      idx = nd.right;
    }
  }
  return acc + 1;
}

std::pair<int, ViewPtr> discriminatory_choice(const std::vector<ViewPtr>& s) {
  if (s.size() < 2) throw AdviceError("discriminatory choice needs two views");
  int depth = s[0]->depth;
  if (depth < 2) throw AdviceError("discriminatory choice below depth 2");
  ViewComparator cmp;
  // the two smallest views under the view order
  size_t i0 = 0;
  for (size_t i = 1; i < s.size(); ++i)
    if (cmp.compare(s[i], s[i0]) < 0) i0 = i;
  size_t i1 = s.size();
  for (size_t i = 0; i < s.size(); ++i) {
    if (i == i0) continue;
    if (i1 == s.size() || cmp.compare(s[i], s[i1]) < 0) i1 = i;
  }
  const ViewPtr& a = s[i0];
  const ViewPtr& b = s[i1];
  if (a->degree != b->degree)
    throw AdviceError("discriminatory views have mismatched degrees");
  for (size_t p = 0; p < a->children.size(); ++p) {
    const ViewPtr& ca = a->children[p].second;
    const ViewPtr& cb = b->children[p].second;
    if (a->children[p].first != b->children[p].first)
      throw AdviceError("discriminatory views disagree one level up");
    if (cmp.exact(ca.get(), cb.get(), depth - 1) == 0) continue;
    bool a_smaller;
    if (depth == 2) {
      a_smaller = bin_depth1(ca) < bin_depth1(cb);
    } else {
      a_smaller = cmp.compare(ca, cb) < 0;
    }
    return {(int)p, a_smaller ? ca : cb};
  }
  throw AdviceError("no discriminatory port: views are equal");
}

long long LabelContext::retrieve_label(const ViewPtr& view) {
  // intern into our builder so the memo key stays alive with the builder
  ViewPtr b = builder_.import(view);
  auto hit = memo_.find(b.get());
  if (hit != memo_.end()) return hit->second;
  int d = b->depth;
  if (d < 1) throw AdviceError("label of a depth-0 view");
  long long out;
  if (d == 1) {
    out = local_label(b, {}, e1_);
  } else {
    std::vector<long long> x;
    x.reserve(b->children.size());
    for (const auto& [q, child] : b->children) x.push_back(retrieve_label(child));
    long long up = retrieve_label(builder_.truncate(b, d - 1));
    const NestedList::Entry* entry = e2_.entry_for_depth(d);
    if (!entry) throw AdviceError("advice has no trie list for depth " + std::to_string(d));
    long long sum = 0;
    for (long long i = 1; i <= up; ++i) {
      const Trie* t = nullptr;
      for (const auto& c : entry->couples)
        if (c.index == i) {
          t = &c.trie;
          break;
        }
      if (!t) {
        sum += 1;
      } else if (i < up) {
        sum += t->leaves();
      } else {
        sum += local_label(b, x, *t);
      }
    }
    out = sum;
  }
  memo_.emplace(b.get(), out);
  return out;
}

namespace {

int build_trie_rec(Trie& out, const std::vector<ViewPtr>& s, const Trie& e1,
                   LabelContext* ctx, TrieBuildLog* log) {
  size_t before = out.size();
  int idx;
  if (s.size() == 1) {
    idx = trie_add_leaf(out);
  } else {
    int qa, qb;
    std::vector<ViewPtr> sl, sr;
    if (e1.empty()) {
      std::vector<BitString> bins;
      bins.reserve(s.size());
      size_t max_len = 0;
      for (const auto& v : s) {
        bins.push_back(bin_depth1(v));
        max_len = std::max(max_len, bins.back().size());
      }
      bool same_len = true;
      for (const auto& bs : bins)
        if (bs.size() != max_len) same_len = false;
      if (!same_len) {
        qa = 0;
        qb = (int)max_len;
        for (size_t i = 0; i < s.size(); ++i)
          (bins[i].size() < max_len ? sl : sr).push_back(s[i]);
      } else {
        qa = 1;
        qb = 0;
        for (size_t j = 1; j <= max_len && qb == 0; ++j) {
          int first = bins[0].bit(j);
          for (size_t i = 1; i < s.size(); ++i)
            if (bins[i].bit(j) != first) {
              qb = (int)j;
              break;
            }
        }
        if (qb == 0) throw AdviceError("depth-1 views share one code");
        for (size_t i = 0; i < s.size(); ++i)
          (bins[i].bit(qb) == 0 ? sl : sr).push_back(s[i]);
      }
    } else {
      if (!ctx) throw AdviceError("deep trie build needs a label context");
      auto [port, disc] = discriminatory_choice(s);
      long long label = ctx->retrieve_label(disc);
      qa = port;
      qb = (int)label;
      ViewComparator cmp;
      int child_depth = s[0]->depth - 1;
      for (const auto& v : s) {
        const ViewPtr& child = v->children[port].second;
        (cmp.exact(child.get(), disc.get(), child_depth) != 0 ? sl : sr).push_back(v);
      }
    }
    if (sl.empty() || sr.empty()) throw AdviceError("trie split is not proper");
    int left = build_trie_rec(out, sl, e1, ctx, log);
    int right = build_trie_rec(out, sr, e1, ctx, log);
    idx = trie_add_internal(out, qa, qb, left, right);
  }
  if (log) {
    log->builds += 1;
    if (out.size() - before != 2 * s.size() - 1) log->law_violations += 1;
  }
  return idx;
}

}  // namespace

Trie build_trie(const std::vector<ViewPtr>& s, const Trie& e1, LabelContext* ctx,
                TrieBuildLog* log) {
  if (s.empty()) throw AdviceError("trie over an empty view set");
  Trie out;
  out.root = build_trie_rec(out, s, e1, ctx, log);
  return out;
}

Advice compute_advice(const PortGraph& g, OracleStats* stats) {
  int n = g.node_count();
  Refinement ref = refine(g);
  int phi = ref.first_depth_with(n);
  if (phi < 0) throw AdviceError("infeasible graph");

  ViewFactory factory(g);
  TrieBuildLog log;

  // E1 over the distinct depth-1 views, ascending view order
  const ViewPartition& p1 = ref.by_depth[1];
  std::vector<ViewPtr> s1(p1.classes);
  for (int v = 0; v < n; ++v)
    if (!s1[p1.class_of[v]]) s1[p1.class_of[v]] = factory.view(v, 1);
  Trie e1 = build_trie(s1, Trie{}, nullptr, &log);

  NestedList e2;
  LabelContext ctx(e1, e2, factory.builder());
  for (int i = 2; i <= phi; ++i) {
    const ViewPartition& prev = ref.by_depth[i - 1];
    const ViewPartition& cur = ref.by_depth[i];
    std::vector<std::vector<int>> members(prev.classes);
    for (int v = 0; v < n; ++v) members[prev.class_of[v]].push_back(v);
    NestedList::Entry entry;
    entry.depth = i;
    for (int cls = 0; cls < prev.classes; ++cls) {
      // distinct depth-i views inside the class, ascending view order
      std::vector<int> reps;  // one node per depth-i class
      std::vector<char> seen(cur.classes, 0);
      for (int v : members[cls])
        if (!seen[cur.class_of[v]]) {
          seen[cur.class_of[v]] = 1;
          reps.push_back(v);
        }
      if (reps.size() < 2) continue;
      std::sort(reps.begin(), reps.end(),
                [&](int a, int b) { return cur.class_of[a] < cur.class_of[b]; });
      long long j = ctx.retrieve_label(factory.view(members[cls][0], i - 1));
      std::vector<ViewPtr> x;
      x.reserve(reps.size());
      for (int v : reps) x.push_back(factory.view(v, i));
      NestedList::Couple couple;
      couple.index = (int)j;
      couple.trie = build_trie(x, e1, &ctx, &log);
      entry.couples.push_back(std::move(couple));
    }
    e2.entries.push_back(std::move(entry));
  }

  Advice adv;
  adv.labels.resize(n);
  for (int v = 0; v < n; ++v) adv.labels[v] = ctx.retrieve_label(factory.view(v, phi));
  int leader = -1;
  for (int v = 0; v < n; ++v)
    if (adv.labels[v] == 1) leader = v;
  if (leader < 0) throw AdviceError("no node received label 1");
  adv.leader = leader;

  BfsTree bt = canonical_bfs_tree(g, leader, adv.labels);
  adv.payload.phi = phi;
  adv.payload.e1 = std::move(e1);
  adv.payload.e2 = std::move(e2);
  adv.payload.tree = to_labeled_tree(bt);
  adv.bits = encode_advice(adv.payload);

  if (stats) {
    stats->phi = phi;
    stats->advice_bits = adv.bits.size();
    stats->trie_builds = log.builds;
    stats->trie_law_violations = log.law_violations;
    stats->e2_trie_size_sum = 0;
    for (const auto& entry : adv.payload.e2.entries)
      for (const auto& c : entry.couples) stats->e2_trie_size_sum += c.trie.size();
    stats->labels_injective = true;
    stats->labels_in_range = true;
    LabelContext check(adv.payload.e1, adv.payload.e2, factory.builder());
    for (int d = 1; d <= phi; ++d) {
      const ViewPartition& pd = ref.by_depth[d];
      std::vector<char> seen(pd.classes, 0);
      std::vector<long long> got;
      for (int v = 0; v < n; ++v) {
        if (seen[pd.class_of[v]]) continue;
        seen[pd.class_of[v]] = 1;
        got.push_back(check.retrieve_label(factory.view(v, d)));
      }
      std::sort(got.begin(), got.end());
      if (std::adjacent_find(got.begin(), got.end()) != got.end())
        stats->labels_injective = false;
      if (got.front() < 1 || got.back() > (long long)pd.classes)
        stats->labels_in_range = false;
    }
  }
  return adv;
}

}  // namespace anelect
