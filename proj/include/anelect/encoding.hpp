#pragma once
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "trie.hpp"

namespace anelect {

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bit string kept as ASCII '0'/'1' characters.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::string bits);
  static BitString from_hex(const std::string& hex, size_t bit_count);

  const std::string& str() const { return bits_; }
  std::string to_hex() const;
  size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  // 1-based bit access; the advice scheme's queries index bits from 1.
  int bit(size_t pos) const;
  void append(const BitString& other) { bits_ += other.bits_; }

  bool operator==(const BitString&) const = default;
  auto operator<=>(const BitString&) const = default;

 private:
  std::string bits_;
};

// Concat doubles every bit of every part and separates parts with "01".
// Zero parts encode as the empty string.
BitString concat(const std::vector<BitString>& parts);
// Exact inverse of concat for one or more parts; throws DecodeError on
// malformed input ("10" pair or odd length). decode("") yields one empty
// part; callers that allow zero-part encodings disambiguate by context.
std::vector<BitString> decode(const BitString& s);

// Binary representation, most significant bit first; bin_int(0) == "0".
BitString bin_int(uint64_t v);
uint64_t int_from_bin(const BitString& s);

// Generic codec for rooted trees with ports: S1 lists the 4(n-1) ports of
// the DFS walk (depart and arrive port of every edge traversal), S2 the
// node labels in first-visit order. The code is
// concat(concat(bin of S1 entries), concat(S2 labels)).
struct RawTree {
  struct Child {
    int down_port = 0;
    int up_port = 0;
    int node = -1;
  };
  struct Node {
    BitString label;
    std::vector<Child> children; // sorted by down_port
  };
  std::vector<Node> nodes;
  int root = 0;
};

BitString encode_raw_tree(const RawTree& t);
RawTree decode_raw_tree(const BitString& s);

BitString encode_labeled_tree(const LabeledTree& t);
LabeledTree decode_labeled_tree(const BitString& s);

BitString encode_trie(const Trie& t);
Trie decode_trie(const BitString& s);

BitString encode_nested_list(const NestedList& l);
NestedList decode_nested_list(const BitString& s);

// Advice envelope: concat(bin(phi), A1, A2) with
// A1 = concat(bin(E1), bin(E2)) and A2 the labeled election tree.
BitString encode_advice(const AdvicePayload& a);
AdvicePayload decode_advice(const BitString& s);

enum class BitFormat { bits, hex };

// File dump: "advice-bits <count>" then the payload line (0/1 or hex).
void write_bits_file(std::ostream& out, const BitString& bits, BitFormat fmt);
BitString read_bits_file(std::istream& in);

}  // namespace anelect
