#pragma once
#include <vector>

namespace anelect {

// Binary decision trie used by the advice scheme. Internal nodes carry a
// query pair (qa, qb); every leaf carries the fixed marker label (0).
// The left child is the "no" branch of the query.
struct Trie {
  struct Node {
    bool leaf = true;
    int qa = 0, qb = 0;        // query, internal nodes only
    int left = -1, right = -1; // child indices, internal nodes only
    int leaf_count = 1;        // leaves of the subtree rooted here
  };
  std::vector<Node> nodes;
  int root = -1;

  int size() const { return (int)nodes.size(); }
  bool empty() const { return nodes.empty(); }
  int leaves() const { return root < 0 ? 0 : nodes[root].leaf_count; }
  int leaves_of(int idx) const { return nodes[idx].leaf_count; }
};

inline int trie_add_leaf(Trie& t) {
  t.nodes.push_back(Trie::Node{});
  return (int)t.nodes.size() - 1;
}

inline int trie_add_internal(Trie& t, int qa, int qb, int left, int right) {
  Trie::Node n;
  n.leaf = false;
  n.qa = qa;
  n.qb = qb;
  n.left = left;
  n.right = right;
  n.leaf_count = t.nodes[left].leaf_count + t.nodes[right].leaf_count;
  t.nodes.push_back(n);
  return (int)t.nodes.size() - 1;
}

// The per-depth advice lists: for each view depth i >= 2 an entry
// (i, L(i)), where L(i) is a list of couples (j, T_j).
struct NestedList {
  struct Couple {
    int index = 0;
    Trie trie;
  };
  struct Entry {
    int depth = 0;
    std::vector<Couple> couples;
  };
  std::vector<Entry> entries;

  const Entry* entry_for_depth(int d) const {
    for (const auto& e : entries)
      if (e.depth == d) return &e;
    return nullptr;
  }
};

// Rooted tree whose edges carry a port number at each endpoint and whose
// nodes carry integer labels. Children are kept sorted by down_port.
struct LabeledTree {
  struct Child {
    int down_port = 0; // port at the parent
    int up_port = 0;   // port at the child
    int node = -1;
  };
  struct Node {
    long long label = 0;
    std::vector<Child> children;
  };
  std::vector<Node> nodes;
  int root = 0;
};

struct AdvicePayload {
  int phi = 0;
  Trie e1;
  NestedList e2;
  LabeledTree tree;
};

}  // namespace anelect
