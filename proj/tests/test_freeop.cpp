#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "quadop/freeop.hpp"

using namespace quadop;

static long dfact(int n) { // (2n-3)!!
  long r = 1;
  for (int k = 2 * n - 3; k > 1; k -= 2) r *= k;
  return r;
}

static long ipow(long b, int e) {
  long r = 1;
  while (e--) r *= b;
  return r;
}

// one symmetric binary operation
static GeneratorSpace com_gen() { return GeneratorSpace::single(1, Mat::identity(1)); }

// one antisymmetric binary operation
static GeneratorSpace lie_gen() {
  Mat s(1, 1);
  s.set(0, 0, Rat(-1));
  return GeneratorSpace::single(1, s);
}

// regular representation of S2: basis (mu, mu^op), sigma swaps them
static GeneratorSpace as_gen() {
  Mat s(2, 2);
  s.set(0, 1, Rat(1));
  s.set(1, 0, Rat(1));
  return GeneratorSpace::single(2, s);
}

static RelationSet com_assoc_rel() {
  // in F(E)(3) for dim-1 symmetric E: differences of the three binary trees
  Mat r(2, 3);
  r.set(0, 0, Rat(1));
  r.set(0, 1, Rat(-1));
  r.set(1, 1, Rat(1));
  r.set(1, 2, Rat(-1));
  RelationSet rel;
  rel[{0, 0, 0, 0}] = Subspace::span(r);
  return rel;
}

TEST_CASE("dimension formula (dim E)^(n-1) (2n-3)!!") {
  auto e1 = com_gen();
  auto e2 = as_gen();
  for (int n = 2; n <= 5; n++) {
    CHECK(FreeSpace::build(e1, n).dim == dfact(n));
    CHECK(FreeSpace::build(e2, n).dim == ipow(2, n - 1) * dfact(n));
  }
  CHECK(FreeSpace::build(e2, 3).dim == 12);
}

TEST_CASE("index round trip") {
  auto f = FreeSpace::build(as_gen(), 4);
  for (int i = 0; i < f.dim; i++) {
    auto [ti, dec] = f.unindex(i);
    CHECK(f.index(ti, dec) == i);
  }
}

TEST_CASE("symmetric group action: Coxeter relations") {
  for (auto &e : {com_gen(), lie_gen(), as_gen()}) {
    for (int n = 3; n <= 4; n++) {
      auto f = FreeSpace::build(e, n);
      auto s = f.transpositions();
      Mat id = Mat::identity(f.dim);
      for (int i = 0; i < n - 1; i++) CHECK(s[i].mul(s[i]) == id);
      for (int i = 0; i + 1 < n - 1; i++) {
        Mat b = s[i].mul(s[i + 1]);
        CHECK(b.mul(b).mul(b) == id);
      }
      for (int i = 0; i < n - 1; i++)
        for (int j = i + 2; j < n - 1; j++)
          CHECK(s[i].mul(s[j]) == s[j].mul(s[i]));
    }
  }
}

TEST_CASE("action is a homomorphism") {
  auto f = FreeSpace::build(as_gen(), 3);
  for (auto &s : all_permutations(3))
    for (auto &t : all_permutations(3))
      CHECK(f.action(s).mul(f.action(t)) == f.action(perm_mul(s, t)));
}

TEST_CASE("antisymmetric generator picks up signs") {
  auto f = FreeSpace::build(lie_gen(), 3);
  CHECK(f.dim == 3);
  // swapping 2,3 maps (1,(2,3)) to itself with one flip at the inner vertex
  Mat t23 = f.transposition(2);
  int ti = f.tree_index(Tree::make_node(
      {Tree::make_leaf(1), Tree::make_node({Tree::make_leaf(2), Tree::make_leaf(3)})}));
  REQUIRE(ti >= 0);
  CHECK(t23.get(f.index(ti, {0, 0}), f.index(ti, {0, 0})) == Rat(-1));
}

TEST_CASE("grafting is associative in slot 1") {
  // ((a o1 b) o1 c) == (a o1 (b o1 c)) as maps F2 x F2 x F2 -> F4
  auto e = as_gen();
  auto f2 = FreeSpace::build(e, 2);
  auto f3 = FreeSpace::build(e, 3);
  auto f4 = FreeSpace::build(e, 4);
  Mat g23 = graft_matrix(f2, 1, f2, f3);
  Mat lhs = graft_matrix(f3, 1, f2, f4).mul(g23.kron(Mat::identity(f2.dim)));
  Mat rhs = graft_matrix(f2, 1, f3, f4).mul(Mat::identity(f2.dim).kron(g23));
  CHECK(lhs == rhs);
}

TEST_CASE("graft matrix basics") {
  auto e = com_gen();
  auto f2 = FreeSpace::build(e, 2);
  auto f3 = FreeSpace::build(e, 3);
  Mat g = graft_matrix(f2, 1, f2, f3);
  CHECK(g.rows == 3);
  CHECK(g.cols == 1);
  CHECK(rank(g) == 1);
}

TEST_CASE("one-ternary trees") {
  CHECK(one_ternary_trees(3).size() == 1);
  CHECK(one_ternary_trees(4).size() == 10);
  CHECK(one_ternary_trees(5).size() == 105); // 105 binary trees x 3 edges / 3 splits
}

TEST_CASE("relation spans: commutative associativity at n=4") {
  auto e = com_gen();
  auto f4 = FreeSpace::build(e, 4);
  CHECK(f4.dim == 15);
  auto rel = com_assoc_rel();
  Subspace total(f4.dim);
  for (auto &st : one_ternary_trees(4)) {
    Subspace s = ternary_relation_space(e, rel, st, f4, TernaryMode::Span);
    CHECK(s.ambient == f4.dim);
    CHECK(s.dim() == 2);
    total = sum(total, s);
  }
  CHECK(total.dim() == 14); // quotient = 1-dim, as it must be
  for (auto &s : all_permutations(4)) {
    Subspace moved = Subspace::span(total.basis.mul(f4.action(s).transpose()));
    CHECK(moved == total);
  }
}

TEST_CASE("relation preimages and their intersection at n=4") {
  auto e = com_gen();
  auto f4 = FreeSpace::build(e, 4);
  auto rel = com_assoc_rel();
  // each preimage: one condition on a 3-dim block of the 15-dim space
  Subspace p = ternary_relation_space(e, rel, one_ternary_trees(4)[0], f4,
                                      TernaryMode::Preimage);
  CHECK(p.dim() == 14);
  Mat cond(0, f4.dim);
  for (auto &st : one_ternary_trees(4))
    cond = cond.vcat(ternary_condition_rows(e, rel, st, f4, true));
  CHECK(kernel(cond).dim() == 6); // matches the antisymmetric-side count 3! = 6
}

TEST_CASE("Jacobi relations: quotient and det-signed intersection") {
  auto e = lie_gen();
  // Jacobi line in enumeration order ((1,2),3), ((1,3),2), (1,(2,3))
  Mat rl(1, 3);
  rl.set(0, 0, Rat(1));
  rl.set(0, 1, Rat(-1));
  rl.set(0, 2, Rat(-1));
  RelationSet rel;
  rel[{0, 0, 0, 0}] = Subspace::span(rl);
  for (int n = 4; n <= 5; n++) {
    auto f = FreeSpace::build(e, n);
    Subspace tot(f.dim);
    Mat cond(0, f.dim);
    for (auto &st : one_ternary_trees(n)) {
      tot = sum(tot, ternary_relation_space(e, rel, st, f, TernaryMode::Span));
      cond = cond.vcat(ternary_condition_rows(e, rel, st, f, true));
    }
    long fact = 1;
    for (int k = 2; k < n; k++) fact *= k;
    CHECK(f.dim - tot.dim() == fact);  // quotient has dim (n-1)!
    CHECK(kernel(cond).dim() == 1);    // one-dim on the other side
  }
}

TEST_CASE("colored free space dimensions") {
  // two colors; 1-dim blocks (0,0)->0, (1,1)->0, (0,1)->1, (1,0)->1
  GeneratorSpace e;
  e.colors = 2;
  e.dims = {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}};
  auto id1 = Mat::identity(1);
  e.sigma.assign(2, std::vector<std::vector<Mat>>(2, std::vector<Mat>(2, Mat(0, 0))));
  e.sigma[0][0][0] = id1;
  e.sigma[0][1][1] = id1;
  e.sigma[1][0][1] = id1;
  e.sigma[1][1][0] = id1;
  e.validate();
  CHECK(FreeSpace::build(e, 3, {0, 0, 0}, 0).dim == 3);
  CHECK(FreeSpace::build(e, 3, {0, 0, 1}, 1).dim == 3);
  CHECK(FreeSpace::build(e, 3, {1, 1, 1}, 0).dim == 0);
  CHECK(FreeSpace::build(e, 3, {1, 1, 1}, 1).dim == 3);
  auto g = FreeSpace::build(e, 3, {0, 0, 1}, 1);
  Mat a = g.transposition(1); // swaps the two color-0 leaves
  CHECK(a.mul(a) == Mat::identity(3));
}

TEST_CASE("split edge sign") {
  Tree comb = Tree::make_node(
      {Tree::make_leaf(1),
       Tree::make_node({Tree::make_leaf(2),
                        Tree::make_node({Tree::make_leaf(3), Tree::make_leaf(4)})})});
  // internal edge order: {2,3,4},{3,4}
  CHECK(split_edge_sign(comb, {1, 1}) == -1); // edge {3,4}, position 1
  CHECK(split_edge_sign(comb, {1}) == 1);     // edge {2,3,4}, position 0
  Tree l = Tree::make_node(
      {Tree::make_node({Tree::make_leaf(1), Tree::make_leaf(2)}), Tree::make_leaf(3)});
  CHECK(split_edge_sign(l, {0}) == 1); // only internal edge
  // with all-positive signs at n=3 the det twist is invisible there
}
