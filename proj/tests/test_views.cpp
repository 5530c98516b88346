#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "anelect/serial_ref.hpp"
#include "anelect/views.hpp"
#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace anelect;

// class ids as grouping, ignoring which id each group got
static std::vector<std::vector<int>> groups_of(const ViewPartition& p) {
  std::vector<std::vector<int>> g(p.classes);
  for (int v = 0; v < (int)p.class_of.size(); ++v) g[p.class_of[v]].push_back(v);
  std::sort(g.begin(), g.end());
  return g;
}

TEST_CASE("builder interns structurally equal views") {
  ViewBuilder b;
  ViewPtr f2 = b.frontier(2);
  CHECK(b.frontier(2).get() == f2.get());
  CHECK(b.frontier(3).get() != f2.get());
  ViewPtr inner1 = b.internal(1, {{0, f2}});
  ViewPtr inner2 = b.internal(1, {{0, b.frontier(2)}});
  CHECK(inner1.get() == inner2.get());
  CHECK(inner1->depth == 1);
  CHECK_THROWS_AS(b.internal(2, {{0, f2}, {1, inner1}}), ViewError);  // ragged depths
}

TEST_CASE("truncate rebuilds and refuses to extend") {
  PortGraph g = corpus::random_feasible(8, 3);
  ViewBuilder b;
  ViewPtr deep = aug_view(g, 0, 4, b);
  ViewPtr cut = b.truncate(deep, 2);
  CHECK(cut->depth == 2);
  CHECK(cut.get() == aug_view(g, 0, 2, b).get());
  CHECK(b.truncate(deep, 4).get() == deep.get());
  CHECK_THROWS_AS(b.truncate(cut, 3), ViewError);

  // import into a fresh builder preserves structure
  ViewBuilder other;
  ViewPtr moved = other.import(deep);
  CHECK(moved.get() != deep.get());
  CHECK(views_equal(moved, deep));
}

TEST_CASE("factory views match direct construction") {
  PortGraph g = corpus::random_feasible(10, 4);
  ViewFactory f(g);
  ViewBuilder b;
  for (int v = 0; v < g.node_count(); ++v)
    for (int d = 0; d <= 4; ++d)
      CHECK(views_equal(f.view(v, d), aug_view(g, v, d, b)));
  // interning makes repeated requests free
  CHECK(f.view(3, 4).get() == f.view(3, 4).get());
}

TEST_CASE("p3 refinement and frozen depth-1 codes") {
  PortGraph g = corpus::p3();
  Refinement ref = refine(g);
  REQUIRE(ref.by_depth.size() >= 2);
  CHECK(ref.by_depth[0].classes == 2);
  CHECK(ref.by_depth[1].classes == 3);
  CHECK(election_index(g) == 1);

  ViewFactory f(g);
  // endpoint behind the middle's port 0, the middle, the other endpoint
  CHECK(bin_depth1(f.view(0, 1)).str() == "000000110000001111110000");
  CHECK(bin_depth1(f.view(1, 1)).str() ==
        "000000110000001111110111110011000000111111");
  CHECK(bin_depth1(f.view(2, 1)).str() == "000000111111001111110000");
  CHECK_THROWS_AS(bin_depth1(f.view(0, 2)), ViewError);
  CHECK_THROWS_AS(bin_depth1(f.view(0, 0)), ViewError);
}

TEST_CASE("symmetric graphs never separate") {
  for (PortGraph g : {corpus::k3(), corpus::c4()}) {
    Refinement ref = refine(g);
    for (const auto& p : ref.by_depth) CHECK(p.classes == 1);
    CHECK_FALSE(election_index(g).has_value());
    CHECK_FALSE(is_feasible(g));
  }
}

TEST_CASE("refinement agrees with the serial reference and the naive oracle") {
  auto all = corpus::feasible_corpus();
  int small = 0;
  for (const auto& e : all) {
    if (e.g.node_count() > 12) continue;
    CAPTURE(e.name);
    Refinement par = refine(e.g, ExecMode::parallel);
    Refinement ser = refine(e.g, ExecMode::serial);
    Refinement ref2 = serial::refine(e.g);
    REQUIRE(par.by_depth.size() == ser.by_depth.size());
    REQUIRE(par.by_depth.size() == ref2.by_depth.size());
    for (size_t d = 0; d < par.by_depth.size(); ++d) {
      CHECK(par.by_depth[d].class_of == ser.by_depth[d].class_of);
      CHECK(groups_of(par.by_depth[d]) == groups_of(ref2.by_depth[d]));
      CHECK(groups_of(par.by_depth[d]) == oracle::naive_partition(e.g, (int)d));
    }
    ++small;
  }
  CHECK(small >= 30);
}

TEST_CASE("class counts grow then stay") {
  for (const auto& e : corpus::feasible_corpus()) {
    if (e.g.node_count() > 24) continue;
    Refinement ref = refine(e.g);
    for (size_t d = 1; d < ref.by_depth.size(); ++d)
      CHECK(ref.by_depth[d].classes >= ref.by_depth[d - 1].classes);
    CHECK(ref.by_depth.back().classes ==
          ref.by_depth[ref.by_depth.size() - 2].classes);
    // stability really is forever, not just one repeat
    int n = e.g.node_count();
    ViewFactory f(e.g);
    int sd = ref.stable_depth();
    ViewComparator cmp;
    for (int extra = 1; extra <= 2; ++extra) {
      std::vector<int> ids(n);
      std::vector<ViewPtr> reps;
      for (int v = 0; v < n; ++v) {
        ViewPtr bv = f.view(v, sd + extra);
        size_t c = 0;
        while (c < reps.size() && cmp.compare(reps[c], bv) != 0) ++c;
        if (c == reps.size()) reps.push_back(bv);
        ids[v] = (int)c;
      }
      CHECK((int)reps.size() == ref.stable_classes());
    }
  }
}

TEST_CASE("view order is a total order consistent with equality") {
  PortGraph g = corpus::random_feasible(12, 9);
  ViewFactory f(g);
  ViewComparator cmp;
  int n = g.node_count();
  for (int d : {1, 2, 3}) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        auto ab = cmp.compare(f.view(a, d), f.view(b, d));
        auto ba = cmp.compare(f.view(b, d), f.view(a, d));
        CHECK((ab == 0) == (ba == 0));
        if (ab < 0) CHECK(ba > 0);
        CHECK((ab == 0) == views_equal(f.view(a, d), f.view(b, d)));
      }
    // transitivity via sort consistency: sorting twice gives one answer
    std::vector<int> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i;
    std::sort(nodes.begin(), nodes.end(), [&](int a, int b) {
      return cmp.compare(f.view(a, d), f.view(b, d)) < 0;
    });
    for (int i = 0; i + 1 < n; ++i)
      CHECK(cmp.compare(f.view(nodes[i], d), f.view(nodes[i + 1], d)) <= 0);
  }
}

TEST_CASE("order of extensions never flips") {
  // comparing level by level means deeper looks cannot reverse an
  // already-decided order
  for (const auto& e : corpus::feasible_corpus()) {
    int n = e.g.node_count();
    if (n > 16) continue;
    ViewFactory f(e.g);
    ViewComparator cmp;
    for (int d = 1; d + 1 <= 4; ++d)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          auto shallow = cmp.compare(f.view(a, d), f.view(b, d));
          if (shallow == 0) continue;
          auto deep = cmp.compare(f.view(a, d + 1), f.view(b, d + 1));
          CHECK((shallow < 0) == (deep < 0));
        }
  }
}

TEST_CASE("argmin is stable beyond the election index") {
  for (const auto& e : corpus::feasible_corpus()) {
    int n = e.g.node_count();
    if (n > 20) continue;
    auto idx = election_index(e.g);
    REQUIRE(idx.has_value());
    ViewFactory f(e.g);
    ViewComparator cmp;
    auto argmin = [&](int depth) {
      int best = 0;
      for (int v = 1; v < n; ++v)
        if (cmp.compare(f.view(v, depth), f.view(best, depth)) < 0) best = v;
      return best;
    };
    int at_phi = argmin(*idx);
    for (int x : {*idx + 1, *idx + 3}) CHECK(argmin(x) == at_phi);
  }
}

TEST_CASE("extract_subview matches the walked node's view") {
  PortGraph g = corpus::random_feasible(8, 17);
  ViewBuilder b;
  int n = g.node_count();
  for (int v = 0; v < n; ++v)
    for (int total = 1; total <= 4; ++total) {
      ViewPtr big = aug_view(g, v, total, b);
      // every down-port path of length <= total
      std::vector<std::pair<std::vector<int>, int>> stack{{{}, v}};
      while (!stack.empty()) {
        auto [path, node] = stack.back();
        stack.pop_back();
        int rest = total - (int)path.size();
        for (int x = 0; x <= rest; ++x) {
          ViewPtr sub = extract_subview(b, big, path, x);
          CHECK(views_equal(sub, aug_view(g, node, x, b)));
        }
        if ((int)path.size() < total)
          for (int p = 0; p < g.degree(node); ++p) {
            auto longer = path;
            longer.push_back(p);
            stack.push_back({longer, g.neighbors(node)[p].node});
          }
      }
      CHECK_THROWS_AS(extract_subview(b, big, {}, total + 1), ViewError);
    }
}

TEST_CASE("view multisets separate non-isomorphic graphs") {
  PortGraph a = corpus::p3();
  PortGraph b = corpus::star(3);
  CHECK(view_multisets_differ(a, b));
  CHECK_FALSE(view_multisets_differ(a, a));

  PortGraph h = relabel(a, {2, 0, 1});
  CHECK_FALSE(view_multisets_differ(a, h));

  // the x=3 clique family stays apart even as unrooted graphs; at x=4 a
  // few members become isomorphic through maps that move the root, so the
  // family-wide guarantee is the rooted one (checked in the family tests)
  auto fam = gen_clique_family(3);
  for (size_t i = 0; i < fam.size(); ++i)
    for (size_t j = i + 1; j < fam.size(); ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(view_multisets_differ(fam[i].g, fam[j].g));
    }
  auto f4 = gen_clique_family(4);
  CHECK_FALSE(view_multisets_differ(f4[1].g, f4[17].g));  // truly isomorphic
}
