#pragma once
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "graph.hpp"

namespace anelect {

struct FamilyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Port-numbered (x+1)-cliques built from one base assignment by rotating
// the ports of the non-distinguished nodes. Seen from r, the members carry
// pairwise distinct arrival-port signatures; they are indexed 1..(x-1)^x.
struct LabeledClique {
  PortGraph g;
  int r = 0;  // the distinguished node, ports 0..x-1 in node order
};

uint64_t clique_family_size(int x);  // (x-1)^x, x >= 2
LabeledClique gen_clique_member(int x, uint64_t t);
std::vector<LabeledClique> gen_clique_family(int x);  // all members, small x only

// Ring of k joints, each carrying a distinct clique member; the member at
// joint 1 is fixed, perm places members 2..k on the remaining joints.
// Election index 1: every depth-1 view is already unique.
struct RingCliquesResult {
  PortGraph g;
  std::vector<int> joints;  // w_1..w_k
};
RingCliquesResult gen_ring_cliques(int k, int x, const std::vector<int>& perm);

// Chain of joints w_1..w_k alternating clique members and shared diamonds,
// with a pendant path of phi-1 nodes at each end. The code rotates the
// ports inside each diamond; any valid code yields election index phi and
// the two chain leaves keep equal views up to depth phi-1.
struct NecklaceSpec {
  int k = 0;    // even, >= 4, k <= (x-1)^x
  int x = 0;    // >= 2
  int phi = 0;  // >= 2
  std::vector<int> code;  // size k, entries 0..x, code.front() == code.back() == 0
};
struct NecklaceResult {
  PortGraph g;
  int left_leaf = -1;
  int right_leaf = -1;
  std::vector<int> joints;
};
NecklaceResult gen_necklace(const NecklaceSpec& spec);

// Ring whose node i carries stars[i] pendant leaves; the star counts must
// have a unique maximum.
struct HairyRingSpec {
  int ring = 0;            // >= 3
  std::vector<int> stars;  // size ring
};
struct HairyRingResult {
  PortGraph g;
  std::vector<int> ring_nodes;
};
HairyRingResult gen_hairy_ring(const HairyRingSpec& spec);

// The hairy ring with the edge between the first and last ring node
// removed; the vacated port slots are kept as holes so copies can be
// chained back together.
struct Fragment {
  std::vector<std::vector<HalfEdge>> rows;  // {-1,-1} marks a hole
  int first = 0, last = 0;
};
Fragment cut(const HairyRingResult& h);

// gamma copies of the fragment stitched end to end through the vacated
// slots; the two outermost holes are compacted away.
struct StretchResult {
  PortGraph g;
  std::vector<int> anchors;  // first node of each copy
  int first = -1, last = -1;
};
StretchResult gamma_stretch(const Fragment& f, int gamma);

bool certify_ring_cliques(const RingCliquesResult& r);
bool certify_necklace(const NecklaceResult& r, const NecklaceSpec& spec);
bool certify_hairy_ring(const HairyRingResult& r);

}  // namespace anelect
