#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "quadop/cobar.hpp"

using namespace quadop;

static long fact(int n) {
  long r = 1;
  for (int k = 2; k <= n; k++) r *= k;
  return r;
}

TEST_CASE("dual complex of com at arity 3") {
  auto op = ExpandedOperad::expand(preset("com"), 3);
  DgOperad dg = cobar_dual(from_expanded(op), 3, true);
  const DgPiece &p = dg.pieces.at(3);
  // one ternary summand in degree -1, three binary trees in degree 0
  REQUIRE(p.degrees == std::vector<int>{-1, 0});
  CHECK(p.dims == std::vector<int>{1, 3});
  auto h = p.complex().homology();
  CHECK(h == std::vector<int>{0, 2});
  dg.validate();
}

TEST_CASE("summand dimensions against reduced tree counts") {
  // for com every vertex space is 1-dimensional, so the total dimension of
  // D(com)(n) is the number of reduced trees: 1, 4, 26, 236
  auto op = ExpandedOperad::expand(preset("com"), 5);
  DgOperad dg = cobar_dual(from_expanded(op), 5);
  int expected[] = {1, 4, 26, 236};
  for (int n = 2; n <= 5; n++) {
    const DgPiece &p = dg.pieces.at(n);
    int tot = 0;
    for (int d : p.dims) tot += d;
    CHECK(tot == expected[n - 2]);
  }
}

TEST_CASE("koszul certificate for com") {
  auto r = koszul_certificate(preset("com"), 6);
  CHECK(r.concentrated);
  for (int n = 2; n <= 6; n++) CHECK(r.h_top[n - 2] == fact(n - 1));
}

TEST_CASE("koszul certificate for lie") {
  auto r = koszul_certificate(preset("lie"), 6);
  CHECK(r.concentrated);
  for (int n = 2; n <= 6; n++) CHECK(r.h_top[n - 2] == 1);
}

TEST_CASE("koszul certificate for as") {
  auto r = koszul_certificate(preset("as"), 5);
  CHECK(r.concentrated);
  for (int n = 2; n <= 5; n++) CHECK(r.h_top[n - 2] == fact(n));
}

TEST_CASE("full dg structure validates") {
  for (const char *name : {"com", "lie"}) {
    auto op = ExpandedOperad::expand(preset(name), 4);
    DgOperad dg = cobar_dual(from_expanded(op), 4, true);
    dg.validate();
  }
}

TEST_CASE("euler characteristic matches the inverse series") {
  auto op = ExpandedOperad::expand(preset("com"), 5);
  DgOperad dg = cobar_dual(from_expanded(op), 5);
  FormalMap e = euler_series(dg, 5);
  // Euler characteristic is homotopy invariant: equals the dual dims up to
  // alternating signs, i.e. neg_conj of the inverse of g_com
  FormalMap gcom = from_operad(op, 5);
  FormalMap q = neg_conj(revert_tree(gcom));
  for (int n = 2; n <= 5; n++) {
    CHECK(e.get(0, {n}) == q.get(0, {n}));
    CHECK(e.get(0, {n}) == Rat(fact(n - 1)));
  }
}

TEST_CASE("double cobar homology returns the operad") {
  auto r = double_cobar_report(preset("com"), 4);
  CHECK(r.concentrated);
  CHECK(r.h_top == std::vector<int>{1, 1, 1});
  auto rl = double_cobar_report(preset("lie"), 4);
  CHECK(rl.concentrated);
  CHECK(rl.h_top == std::vector<int>{1, 2, 6});
  auto ra = double_cobar_report(preset("as"), 4);
  CHECK(ra.concentrated);
  CHECK(ra.h_top == std::vector<int>{2, 6, 24});
}
