#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "quadop/trees.hpp"

using namespace quadop;

static long dfact(int n) { // (2n-3)!!
  long r = 1;
  for (int k = 2 * n - 3; k > 1; k -= 2) r *= k;
  return r;
}

TEST_CASE("binary tree counts (2n-3)!!") {
  for (int n = 2; n <= 8; n++)
    CHECK((long)enumerate_trees(n, true).size() == dfact(n));
}

TEST_CASE("reduced tree counts") {
  CHECK(enumerate_trees(2, false).size() == 1);
  CHECK(enumerate_trees(3, false).size() == 4);
  CHECK(enumerate_trees(4, false).size() == 26);  // 1 star + 10 one-edge + 15 binary
  CHECK(enumerate_trees(5, false).size() == 236); // Schroeder's fourth problem
  int one_edge = 0, binary = 0, stars = 0;
  for (auto &t : enumerate_trees(4, false)) {
    int m = t.num_internal_edges();
    if (m == 0) stars++;
    if (m == 1) one_edge++;
    if (m == 2) binary++;
  }
  CHECK(stars == 1);
  CHECK(one_edge == 10);
  CHECK(binary == 15);
}

TEST_CASE("canonical form and serialization") {
  Tree t = Tree::make_node({Tree::make_node({Tree::make_leaf(3), Tree::make_leaf(2)}),
                            Tree::make_leaf(1)});
  CHECK(t.str() == "(1,(2,3))");
  CHECK(t.min_leaf() == 1);
  CHECK(t.n_leaves() == 3);
  CHECK(t.num_internal_edges() == 1);
}

TEST_CASE("edge order") {
  // (1,(2,3)): Ed order should be {1},{2},{2,3},{3}; ed order just {2,3}
  Tree t = Tree::make_node({Tree::make_leaf(1),
                            Tree::make_node({Tree::make_leaf(2), Tree::make_leaf(3)})});
  auto ed = canonical_edge_order(t, false);
  CHECK(ed.size() == 1);
  CHECK(ed[0].internal);
  auto Ed = canonical_edge_order(t, true);
  CHECK(Ed.size() == 4);
  CHECK(!Ed[0].internal); // leaf 1
  CHECK(!Ed[1].internal); // leaf 2
  CHECK(Ed[2].internal);  // {2,3}
  CHECK(!Ed[3].internal); // leaf 3
}

TEST_CASE("contract") {
  Tree t = Tree::make_node({Tree::make_leaf(1),
                            Tree::make_node({Tree::make_leaf(2), Tree::make_leaf(3)})});
  auto ed = canonical_edge_order(t, false);
  auto [s, sign] = contract(t, ed[0], false);
  CHECK(s == star(3));
  CHECK(sign == 1);

  // right comb (((3,4) with 2) with 1): 1,(2,(3,4)); contract topmost edge {3,4}
  Tree comb = Tree::make_node(
      {Tree::make_leaf(1),
       Tree::make_node({Tree::make_leaf(2),
                        Tree::make_node({Tree::make_leaf(3), Tree::make_leaf(4)})})});
  auto edges = canonical_edge_order(comb, false);
  // edges sorted by min leaf: {2,3,4} then {3,4}
  CHECK(edges.size() == 2);
  auto [c1, sg1] = contract(comb, edges[1], false);
  CHECK(c1.str() == "(1,(2,3,4))");
  CHECK(sg1 == -1); // position 1 in ed order
  auto [c2, sg2] = contract(comb, edges[0], false);
  CHECK(c2.str() == "(1,2,(3,4))");
  CHECK(sg2 == 1);
}

TEST_CASE("compose") {
  Tree two = star(2);
  Tree t = compose(two, 1, two); // output of star2 into slot 1 of star2
  CHECK(t.str() == "((1,2),3)");
  Tree u = compose(two, 2, star(3));
  CHECK(u.str() == "(1,(2,3),4)");
  CHECK(u.num_internal_edges() == 1);
}

TEST_CASE("leq poset") {
  auto all4 = enumerate_trees(4, false);
  Tree s4 = star(4);
  for (auto &t : all4) {
    CHECK(leq(t, t));
    CHECK(leq(t, s4));
  }
  // two distinct binary 4-trees incomparable
  auto bin = enumerate_trees(4, true);
  CHECK(!leq(bin[0], bin[1]));
  CHECK(!leq(bin[1], bin[0]));
  // antisymmetry + transitivity, exhaustive at n=4
  for (auto &a : all4)
    for (auto &b : all4) {
      if (leq(a, b) && leq(b, a)) CHECK(a == b);
      for (auto &c : all4)
        if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
    }
}

TEST_CASE("contraction chain reaches the star") {
  for (auto &t : enumerate_trees(4, true)) {
    Tree cur = t;
    while (cur.num_internal_edges() > 0) {
      auto ed = canonical_edge_order(cur, false);
      cur = contract(cur, ed[0], false).first;
    }
    CHECK(cur == star(4));
  }
}

TEST_CASE("colored enumeration") {
  // two colors, 3 leaves all color 0, output color 0: internal edge may take
  // either color, so binary trees double: 3 one-color shapes x 2 colors
  auto ts = enumerate_trees(3, true, 2, {0, 0, 0}, 0);
  CHECK(ts.size() == 6);
  auto all = enumerate_trees(3, false, 2, {0, 0, 0}, 0);
  CHECK(all.size() == 7); // star + 6 colored binary
  bool found_colored = false;
  for (auto &t : ts)
    if (t.str().find(':') != std::string::npos) found_colored = true;
  CHECK(found_colored); // suffixes appear once a nonzero color is used
}
