#pragma once
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "encoding.hpp"
#include "graph.hpp"

namespace anelect {

struct ViewError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ViewNode;
using ViewPtr = std::shared_ptr<const ViewNode>;

// One node of an augmented truncated view. depth counts the levels below;
// frontier nodes have depth 0, no children, and keep their graph degree.
// Internal nodes have one child per port: children[p] = (arrival port at
// the neighbor, subview of the neighbor).
struct ViewNode {
  int degree = 0;
  int depth = 0;
  std::vector<std::pair<int, ViewPtr>> children;
};

// Hash-consing builder. Views built through one builder share structurally
// equal nodes, so pointer equality is structural equality within a builder.
class ViewBuilder {
 public:
  ViewPtr frontier(int degree);
  ViewPtr internal(int degree, std::vector<std::pair<int, ViewPtr>> children);
  // Rebuilds v in this builder truncated to the given depth.
  ViewPtr truncate(const ViewPtr& v, int depth);
  ViewPtr import(const ViewPtr& v) { return truncate(v, v->depth); }
  size_t size() const { return all_.size(); }

 private:
  struct Key {
    int degree;
    std::vector<std::pair<int, const ViewNode*>> children;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const;
  };
  std::unordered_map<int, ViewPtr> frontiers_;
  std::unordered_map<Key, ViewPtr, KeyHash> interned_;
  std::map<std::pair<const ViewNode*, int>, ViewPtr> trunc_memo_;
  std::vector<ViewPtr> all_;
};

// Materialized view of g at v. The tree is exponential in depth but is
// stored as a DAG, so building stays polynomial; per-graph memoization
// lives in ViewFactory.
class ViewFactory {
 public:
  explicit ViewFactory(const PortGraph& g) : g_(g) {}
  ViewPtr view(int v, int depth);
  ViewBuilder& builder() { return b_; }
  const PortGraph& graph() const { return g_; }

 private:
  const PortGraph& g_;
  ViewBuilder b_;
  std::vector<std::vector<ViewPtr>> levels_;  // levels_[t][v]
};

ViewPtr aug_view(const PortGraph& g, int v, int depth, ViewBuilder& b);

// Structural equality, valid across builders.
bool views_equal(const ViewPtr& a, const ViewPtr& b);

// Total deterministic order on same-depth views. Truncations are compared
// level by level, each level by root degree and then per port by (arrival
// port, subview). Comparing level by level keeps the order of two views
// stable when both are extended to a greater depth.
class ViewComparator {
 public:
  std::strong_ordering compare(const ViewPtr& a, const ViewPtr& b);
  std::strong_ordering exact(const ViewNode* a, const ViewNode* b, int depth);

 private:
  std::map<std::tuple<const ViewNode*, const ViewNode*, int>, std::strong_ordering> memo_;
};

std::strong_ordering compare_views(const ViewPtr& a, const ViewPtr& b);

// Subview rooted at the tree node reached from the root of v by the given
// down ports, truncated to depth x. Requires |path| + x <= depth of v.
ViewPtr extract_subview(ViewBuilder& b, const ViewPtr& v, const std::vector<int>& path, int x);

// Encoding of a depth-1 view: concat over ports p of
// concat(bin(p), bin(arrival port), bin(neighbor degree)).
BitString bin_depth1(const ViewPtr& v);

// Debug dump: the generic tree code with node degrees as labels.
BitString encode_view(const ViewPtr& v);

struct ViewPartition {
  int depth = 0;
  int classes = 0;
  // Class ids are 0-based ranks of the class views under the view order.
  std::vector<int> class_of;
};

// View-equality partitions at depths 0,1,... until the class count repeats.
struct Refinement {
  std::vector<ViewPartition> by_depth;
  int stable_depth() const { return (int)by_depth.size() - 1; }
  int stable_classes() const { return by_depth.back().classes; }
  // First depth whose partition has the given class count, or -1.
  int first_depth_with(int classes) const;
};

Refinement refine(const PortGraph& g, ExecMode mode = ExecMode::parallel);

// Smallest depth at which all views are pairwise distinct; nullopt when the
// refinement stabilizes with fewer than n classes.
std::optional<int> election_index(const PortGraph& g);
bool is_feasible(const PortGraph& g);

// True when the multisets of stabilized view classes differ between the two
// graphs; a difference proves the graphs are not isomorphic.
bool view_multisets_differ(const PortGraph& a, const PortGraph& b);

}  // namespace anelect
