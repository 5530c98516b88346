#pragma once
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "encoding.hpp"
#include "graph.hpp"
#include "trie.hpp"
#include "views.hpp"

namespace anelect {

struct AdviceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleStats {
  int phi = 0;
  uint64_t advice_bits = 0;
  size_t trie_builds = 0;
  size_t trie_law_violations = 0;  // builds whose size is not 2|S|-1
  size_t e2_trie_size_sum = 0;     // total size of tries stored in E2
  bool labels_injective = true;    // per depth <= phi over distinct views
  bool labels_in_range = true;     // within 1..#classes at each depth
};

struct Advice {
  AdvicePayload payload;
  BitString bits;
  // Harness bookkeeping; nodes only ever receive the bit string.
  int leader = -1;
  std::vector<long long> labels;  // depth-phi label per node
};

// Walks the trie with a view. x holds previously assigned labels of the
// view's children; when x is empty the queries read bin_depth1(b), so b
// must have depth 1. Returns the 1-based rank of the reached leaf.
long long local_label(const ViewPtr& b, const std::vector<long long>& x, const Trie& t);

// For >= 2 distinct same-depth views (depth >= 2) that agree one level up:
// the smallest port behind which the two order-smallest views of s differ,
// and the smaller of the two differing child views. Children of depth-2
// views compare by their bin_depth1 strings, deeper ones by the view order.
std::pair<int, ViewPtr> discriminatory_choice(const std::vector<ViewPtr>& s);

struct TrieBuildLog {
  size_t builds = 0;
  size_t law_violations = 0;
};

// Label assignment shared by the oracle and the node side: a label is a
// pure function of (view, e1, e2), memoized per interned view. The builder
// and both advice parts must outlive the context.
class LabelContext {
 public:
  LabelContext(const Trie& e1, const NestedList& e2, ViewBuilder& builder)
      : e1_(e1), e2_(e2), builder_(builder) {}
  long long retrieve_label(const ViewPtr& b);

 private:
  const Trie& e1_;
  const NestedList& e2_;
  ViewBuilder& builder_;
  std::map<const ViewNode*, long long> memo_;
};

// Builds the trie discriminating the views of s. With an empty e1 the
// queries test lengths and bits of the bin_depth1 strings (s must then
// hold depth-1 views); otherwise they test discriminatory child labels,
// which requires ctx.
Trie build_trie(const std::vector<ViewPtr>& s, const Trie& e1, LabelContext* ctx,
                TrieBuildLog* log = nullptr);

// The full oracle: election index, tries E1/E2, the labeled canonical BFS
// tree rooted at the label-1 node, and the encoded envelope. Throws
// AdviceError("infeasible graph") when no election index exists.
Advice compute_advice(const PortGraph& g, OracleStats* stats = nullptr);

}  // namespace anelect
