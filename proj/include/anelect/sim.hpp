#pragma once
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "advice.hpp"
#include "encoding.hpp"
#include "graph.hpp"
#include "views.hpp"

namespace anelect {

struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-node result of a run. output is the flattened port pair sequence
// p1 q1 ... pk qk the node announces when it stops; rounds counts elapsed
// communication rounds at that point. A nonempty note means the node
// aborted on unusable advice (its output is then empty).
struct NodeResult {
  std::vector<int> output;
  uint64_t rounds = 0;
  std::string note;
};

struct ElectionOutcome {
  std::vector<NodeResult> nodes;
  uint64_t rounds = 0;  // max over nodes
};

struct VerifyReport {
  bool ok = false;
  int leader = -1;
  int offender = -1;
  std::string error;
};

// Checks that every output is a simple path and that all of them end at
// one common node, which becomes the leader.
VerifyReport verify_outcome(const PortGraph& g, const ElectionOutcome& o);

void write_outcome(std::ostream& out, const ElectionOutcome& o);
ElectionOutcome read_outcome(std::istream& in);  // rounds are not stored

// saturating arithmetic: the large-time variants overshoot 64 bits fast
uint64_t sat_add(uint64_t a, uint64_t b);
uint64_t sat_mul(uint64_t a, uint64_t b);
uint64_t sat_pow(uint64_t base, uint64_t exp);
uint64_t tower2(uint64_t k);      // 2^2^...^2 with k twos, tower2(0) = 1
uint64_t log2_floor(uint64_t x);  // x >= 1
uint64_t log_star2(uint64_t x);   // min k with tower2(k) >= x, x >= 1

// Advice payloads of the four large-time protocols: the raw binary
// expansion of phi, floor(log phi), floor(log log phi) and log* phi.
// Variant 3 rejects phi = 1 (its quantity is undefined there).
BitString variant_advice_bits(int variant, uint64_t phi);
// The waiting depth P_i recovered from a decoded advice value.
uint64_t variant_p(int variant, uint64_t decoded);
// The round budget T_i the variant must stay within.
uint64_t variant_t(int variant, int c, uint64_t diam, uint64_t phi);

BitString dphi_advice_bits(uint64_t diam, uint64_t phi);

// Minimum-time election from a full advice envelope: phi rounds, then
// every node outputs its tree path to the label-1 node. Nodes that cannot
// decode or apply the advice stop with an empty output and a note.
ElectionOutcome run_elect(const PortGraph& g, const BitString& advice);

// The waiting protocol parameterized by the depth x >= 1: nodes collect
// depth-x views along growing walks and stop once a round brings nothing
// new, then head for the nearest holder of the smallest view seen.
ElectionOutcome run_generic(const PortGraph& g, uint64_t x);

ElectionOutcome run_election_variant(const PortGraph& g, int variant, int c,
                                     const BitString& advice);

// Two-integer advice (diameter, phi): every node stops after exactly
// D + phi rounds knowing the depth-phi views of the whole graph.
ElectionOutcome run_election_dphi(const PortGraph& g, const BitString& advice);

}  // namespace anelect
