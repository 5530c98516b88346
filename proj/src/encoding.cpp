#include "anelect/encoding.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace anelect {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw DecodeError("malformed code: " + what);
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  malformed("bad hex digit");
}

}  // namespace

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_)
    if (c != '0' && c != '1') malformed("bit strings may contain only 0 and 1");
}

BitString BitString::from_hex(const std::string& hex, size_t bit_count) {
  if (hex.size() != (bit_count + 3) / 4) malformed("hex length does not match bit count");
  std::string bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v = hex_value(c);
    for (int b = 3; b >= 0; --b) bits.push_back((v >> b) & 1 ? '1' : '0');
  }
  for (size_t i = bit_count; i < bits.size(); ++i)
    if (bits[i] != '0') malformed("nonzero hex padding");
  bits.resize(bit_count);
  return BitString(std::move(bits));
}

std::string BitString::to_hex() const {
  std::string hex;
  hex.reserve((bits_.size() + 3) / 4);
  for (size_t i = 0; i < bits_.size(); i += 4) {
    int v = 0;
    for (size_t j = 0; j < 4; ++j) {
      v <<= 1;
      if (i + j < bits_.size() && bits_[i + j] == '1') v |= 1;
    }
    hex.push_back("0123456789abcdef"[v]);
  }
  return hex;
}

int BitString::bit(size_t pos) const {
  if (pos < 1 || pos > bits_.size()) throw DecodeError("bit index out of range");
  return bits_[pos - 1] - '0';
}

BitString concat(const std::vector<BitString>& parts) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += "01";
    for (char c : parts[i].str()) {
      out.push_back(c);
      out.push_back(c);
    }
  }
  return BitString(std::move(out));
}

std::vector<BitString> decode(const BitString& s) {
  const std::string& in = s.str();
  if (in.size() % 2 != 0) malformed("odd length");
  std::vector<BitString> parts;
  if (in.empty()) return parts;  // the empty string codes zero parts
  std::string cur;
  for (size_t i = 0; i < in.size(); i += 2) {
    char a = in[i], b = in[i + 1];
    if (a == b) {
      cur.push_back(a);
    } else if (a == '0' && b == '1') {
      parts.emplace_back(std::move(cur));
      cur.clear();
    } else {
      malformed("10 is neither a doubled bit nor a separator");
    }
  }
  parts.emplace_back(std::move(cur));
  return parts;
}

BitString bin_int(uint64_t v) {
  if (v == 0) return BitString("0");
  std::string out;
  while (v > 0) {
    out.push_back((v & 1) ? '1' : '0');
    v >>= 1;
  }
  std::reverse(out.begin(), out.end());
  return BitString(std::move(out));
}

uint64_t int_from_bin(const BitString& s) {
  if (s.empty()) malformed("empty integer");
  if (s.size() > 64) malformed("integer too wide");
  uint64_t v = 0;
  for (char c : s.str()) v = (v << 1) | (c == '1');
  return v;
}

BitString encode_raw_tree(const RawTree& t) {
  std::vector<BitString> ports;
  std::vector<BitString> labels;
  // Iterative DFS, children in increasing down_port order.
  struct Frame {
    int node;
    size_t next_child;
  };
  std::vector<std::vector<RawTree::Child>> kids(t.nodes.size());
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    kids[i] = t.nodes[i].children;
    std::sort(kids[i].begin(), kids[i].end(),
              [](const RawTree::Child& a, const RawTree::Child& b) { return a.down_port < b.down_port; });
  }
  std::vector<Frame> stack{{t.root, 0}};
  labels.push_back(t.nodes[t.root].label);
  std::vector<RawTree::Child> edge_to;  // edge used to enter each stacked node
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_child < kids[f.node].size()) {
      RawTree::Child c = kids[f.node][f.next_child++];
      ports.push_back(bin_int(c.down_port));
      ports.push_back(bin_int(c.up_port));
      labels.push_back(t.nodes[c.node].label);
      stack.push_back({c.node, 0});
      edge_to.push_back(c);
    } else {
      stack.pop_back();
      if (!stack.empty()) {
        RawTree::Child c = edge_to.back();
        edge_to.pop_back();
        ports.push_back(bin_int(c.up_port));
        ports.push_back(bin_int(c.down_port));
      }
    }
  }
  BitString s1 = ports.empty() ? BitString() : concat(ports);
  return concat({s1, concat(labels)});
}

RawTree decode_raw_tree(const BitString& s) {
  std::vector<BitString> outer = decode(s);
  if (outer.size() != 2) malformed("tree code must have two parts");
  RawTree t;
  t.root = 0;
  t.nodes.emplace_back();
  if (!outer[0].empty()) {
    std::vector<BitString> port_bins = decode(outer[0]);
    if (port_bins.size() % 2 != 0) malformed("walk must list port pairs");
    std::vector<int> trail{0};           // node stack
    std::vector<RawTree::Child> entered; // edge used to enter trail.back()
    for (size_t i = 0; i < port_bins.size(); i += 2) {
      int p = (int)int_from_bin(port_bins[i]);
      int q = (int)int_from_bin(port_bins[i + 1]);
      int cur = trail.back();
      if (!entered.empty() && trail.size() > 1 && p == entered.back().up_port) {
        // Moving back up: the pair must mirror the entering edge.
        if (q != entered.back().down_port) malformed("walk return pair mismatch");
        trail.pop_back();
        entered.pop_back();
      } else {
        RawTree::Child c;
        c.down_port = p;
        c.up_port = q;
        c.node = (int)t.nodes.size();
        if (!t.nodes[cur].children.empty() && t.nodes[cur].children.back().down_port >= p)
          malformed("walk must explore ports in increasing order");
        t.nodes.emplace_back();
        t.nodes[cur].children.push_back(c);
        trail.push_back(c.node);
        entered.push_back(c);
      }
    }
    if (trail.size() != 1) malformed("walk does not return to the root");
  }
  std::vector<BitString> labels = decode(outer[1]);
  if (labels.size() != t.nodes.size()) malformed("label count does not match the walk");
  for (size_t i = 0; i < labels.size(); ++i) t.nodes[i].label = labels[i];
  return t;
}

BitString encode_labeled_tree(const LabeledTree& t) {
  RawTree raw;
  raw.root = t.root;
  raw.nodes.resize(t.nodes.size());
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    if (t.nodes[i].label < 0) throw DecodeError("tree labels must be non-negative");
    raw.nodes[i].label = bin_int((uint64_t)t.nodes[i].label);
    for (const auto& c : t.nodes[i].children)
      raw.nodes[i].children.push_back({c.down_port, c.up_port, c.node});
  }
  return encode_raw_tree(raw);
}

LabeledTree decode_labeled_tree(const BitString& s)
{
  RawTree raw = decode_raw_tree(s);
  LabeledTree t;
  t.root = raw.root;
  t.nodes.resize(raw.nodes.size());
  for (size_t i = 0; i < raw.nodes.size(); ++i) {
    t.nodes[i].label = (long long)int_from_bin(raw.nodes[i].label);
    for (const auto& c : raw.nodes[i].children)
      t.nodes[i].children.push_back({c.down_port, c.up_port, c.node});
  }
  return t;
}

namespace {

// Tries are trees with ports: at an internal node port 0 leads to the left
// child and port 1 to the right one; the port back to the parent is 0 at a
// leaf and 2 at an internal node. Leaves carry the marker label (0).
int trie_to_raw(const Trie& t, int idx, RawTree& raw) {
  int out = (int)raw.nodes.size();
  raw.nodes.emplace_back();
  const Trie::Node& n = t.nodes[idx];
  if (n.leaf) {
    raw.nodes[out].label = BitString("0");
  } else {
    raw.nodes[out].label = concat({bin_int((uint64_t)n.qa), bin_int((uint64_t)n.qb)});
    int l = trie_to_raw(t, n.left, raw);
    raw.nodes[out].children.push_back({0, t.nodes[n.left].leaf ? 0 : 2, l});
    int r = trie_to_raw(t, n.right, raw);
    raw.nodes[out].children.push_back({1, t.nodes[n.right].leaf ? 0 : 2, r});
  }
  return out;
}

int raw_to_trie(const RawTree& raw, int idx, Trie& t) {
  const RawTree::Node& n = raw.nodes[idx];
  if (n.children.empty()) {
    if (n.label.str() != "0") malformed("trie leaf label must be (0)");
    return trie_add_leaf(t);
  }
  if (n.children.size() != 2) malformed("trie nodes have zero or two children");
  if (n.children[0].down_port != 0 || n.children[1].down_port != 1)
    malformed("trie child ports must be 0 and 1");
  for (const auto& c : n.children) {
    int expect = raw.nodes[c.node].children.empty() ? 0 : 2;
    if (c.up_port != expect) malformed("trie parent port convention violated");
  }
  std::vector<BitString> query = decode(n.label);
  if (query.size() != 2) malformed("trie query must be a pair");
  int qa = (int)int_from_bin(query[0]);
  int qb = (int)int_from_bin(query[1]);
  int l = raw_to_trie(raw, n.children[0].node, t);
  int r = raw_to_trie(raw, n.children[1].node, t);
  return trie_add_internal(t, qa, qb, l, r);
}

}  // namespace

BitString encode_trie(const Trie& t) {
  if (t.empty()) throw DecodeError("cannot encode an empty trie");
  RawTree raw;
  raw.root = 0;
  trie_to_raw(t, t.root, raw);
  return encode_raw_tree(raw);
}

Trie decode_trie(const BitString& s) {
  RawTree raw = decode_raw_tree(s);
  Trie t;
  t.root = raw_to_trie(raw, raw.root, t);
  return t;
}

BitString encode_nested_list(const NestedList& l) {
  if (l.entries.empty()) return BitString();
  std::vector<BitString> outer;
  for (const auto& e : l.entries) {
    outer.push_back(bin_int((uint64_t)e.depth));
    if (e.couples.empty()) {
      outer.emplace_back();
    } else {
      std::vector<BitString> inner;
      for (const auto& c : e.couples) {
        inner.push_back(bin_int((uint64_t)c.index));
        inner.push_back(encode_trie(c.trie));
      }
      outer.push_back(concat(inner));
    }
  }
  return concat(outer);
}

NestedList decode_nested_list(const BitString& s) {
  NestedList l;
  if (s.empty()) return l;
  std::vector<BitString> outer = decode(s);
  if (outer.size() % 2 != 0) malformed("list must alternate depths and sublists");
  for (size_t i = 0; i < outer.size(); i += 2) {
    NestedList::Entry e;
    e.depth = (int)int_from_bin(outer[i]);
    if (!outer[i + 1].empty()) {
      std::vector<BitString> inner = decode(outer[i + 1]);
      if (inner.size() % 2 != 0) malformed("sublist must alternate indices and tries");
      for (size_t j = 0; j < inner.size(); j += 2) {
        NestedList::Couple c;
        c.index = (int)int_from_bin(inner[j]);
        c.trie = decode_trie(inner[j + 1]);
        e.couples.push_back(std::move(c));
      }
    }
    l.entries.push_back(std::move(e));
  }
  return l;
}

BitString encode_advice(const AdvicePayload& a) {
  BitString a1 = concat({encode_trie(a.e1), encode_nested_list(a.e2)});
  return concat({bin_int((uint64_t)a.phi), a1, encode_labeled_tree(a.tree)});
}

AdvicePayload decode_advice(const BitString& s) {
  std::vector<BitString> outer = decode(s);
  if (outer.size() != 3) malformed("advice must have three parts");
  AdvicePayload a;
  a.phi = (int)int_from_bin(outer[0]);
  std::vector<BitString> a1 = decode(outer[1]);
  if (a1.size() != 2) malformed("advice tables must have two parts");
  a.e1 = decode_trie(a1[0]);
  a.e2 = decode_nested_list(a1[1]);
  a.tree = decode_labeled_tree(outer[2]);
  return a;
}

void write_bits_file(std::ostream& out, const BitString& bits, BitFormat fmt) {
  out << "advice-bits " << bits.size() << "\n";
  if (fmt == BitFormat::bits)
    out << bits.str() << "\n";
  else
    out << bits.to_hex() << "\n";
}

BitString read_bits_file(std::istream& in) {
  std::string key;
  size_t count = 0;
  if (!(in >> key >> count) || key != "advice-bits")
    throw DecodeError("advice file must start with an advice-bits line");
  std::string payload;
  in >> payload;
  if (count == 0 && payload.empty()) return BitString();
  if (payload.size() == count &&
      payload.find_first_not_of("01") == std::string::npos)
    return BitString(payload);
  return BitString::from_hex(payload, count);
}

}  // namespace anelect
