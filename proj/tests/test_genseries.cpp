#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "quadop/genseries.hpp"
#include <random>

using namespace quadop;

// single-color map with EGF coefficients f(n), f(1) must be 1
static FormalMap egf(int N, const std::function<Rat(int)> &f) {
  return map_from_dims(1, N, [&](int, const std::vector<int> &a) { return f(a[0]); });
}

static long dfact(int n) { // (2n-3)!!
  long r = 1;
  for (int k = 2 * n - 3; k > 1; k -= 2) r *= k;
  return r;
}

static long fact(int n) {
  long r = 1;
  for (int k = 2; k <= n; k++) r *= k;
  return r;
}

TEST_CASE("identity and composition basics") {
  FormalMap id = FormalMap::identity(1, 6);
  FormalMap g = egf(6, [](int n) { return Rat(1); }); // e^x - 1
  CHECK(compose(g, id) == g);
  CHECK(compose(id, g) == g);
  // ordinary x + x^2 has EGF coefficient 2 at degree 2
  FormalMap h = egf(4, [](int n) { return n == 1 ? Rat(1) : n == 2 ? Rat(2) : Rat(0); });
  FormalMap hh = compose(h, h);
  // x + 2x^2 + 2x^3 + x^4 in ordinary coefficients
  CHECK(hh.get(0, {1}) == 1);
  CHECK(hh.get(0, {2}) == Rat(2) * 2);
  CHECK(hh.get(0, {3}) == Rat(2) * 6);
  CHECK(hh.get(0, {4}) == Rat(1) * 24);
}

TEST_CASE("composition is associative") {
  std::mt19937 rng(7);
  auto rnd = [&](int) { return Rat((int)(rng() % 7) - 3); };
  for (int rep = 0; rep < 3; rep++) {
    FormalMap a = egf(6, [&](int n) { return n == 1 ? Rat(1) : rnd(n); });
    FormalMap b = egf(6, [&](int n) { return n == 1 ? Rat(1) : rnd(n); });
    FormalMap c = egf(6, [&](int n) { return n == 1 ? Rat(1) : rnd(n); });
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("reversion of x + x^2/2") {
  FormalMap g = egf(8, [](int n) { return n <= 2 ? Rat(1) : Rat(0); });
  FormalMap q = revert_tree(g);
  CHECK(compose(g, q) == FormalMap::identity(1, 8));
  // -q(-x) = 1 - sqrt(1-2x): EGF coefficients (2n-3)!!
  FormalMap h = neg_conj(q);
  for (int n = 1; n <= 8; n++) CHECK(h.get(0, {n}) == Rat(dfact(n)));
}

TEST_CASE("newton reversion of e^x - 1 is log(1+x)") {
  FormalMap g = egf(7, [](int) { return Rat(1); });
  FormalMap q = revert_newton(g);
  for (int n = 1; n <= 7; n++)
    CHECK(q.get(0, {n}) == Rat((n % 2 ? 1 : -1) * fact(n - 1)));
  CHECK(compose(g, q) == FormalMap::identity(1, 7));
  CHECK(revert_newton(q) == g);
}

TEST_CASE("tree reversion equals newton reversion, two colors") {
  std::mt19937 rng(11);
  for (int rep = 0; rep < 5; rep++) {
    FormalMap g = map_from_dims(2, 6, [&](int i, const std::vector<int> &a) {
      int t = a[0] + a[1];
      if (t == 1) return Rat(a[i] == 1 ? 1 : 0);
      return Rat((int)(rng() % 5) - 2);
    });
    FormalMap qt = revert_tree(g);
    FormalMap qn = revert_newton(g);
    CHECK(qt == qn);
    CHECK(compose(g, qt) == FormalMap::identity(2, 6));
    CHECK(compose(qt, g) == FormalMap::identity(2, 6));
  }
}

TEST_CASE("from_operad on presets") {
  auto com = ExpandedOperad::expand(preset("com"), 5);
  FormalMap gc = from_operad(com, 5);
  for (int n = 1; n <= 5; n++) CHECK(gc.get(0, {n}) == 1); // e^x - 1
  auto as = ExpandedOperad::expand(preset("as"), 5);
  FormalMap ga = from_operad(as, 5);
  for (int n = 1; n <= 5; n++) CHECK(ga.get(0, {n}) == Rat(fact(n))); // x/(1-x)
  auto lie = ExpandedOperad::expand(preset("lie"), 5);
  FormalMap gl = from_operad(lie, 5);
  for (int n = 1; n <= 5; n++) CHECK(gl.get(0, {n}) == Rat(fact(n - 1))); // -log(1-x)
}

TEST_CASE("two-color preset series") {
  auto z2 = ExpandedOperad::expand(preset("z2"), 4);
  FormalMap g = from_operad(z2, 4);
  // g1 = e^{x1} cosh(x2) - 1, g2 = e^{x1} sinh(x2): EGF coefficient is 1
  // when the parity of a2 matches the output color, else 0
  for (int a1 = 0; a1 <= 4; a1++)
    for (int a2 = 0; a1 + a2 <= 4; a2++) {
      if (a1 + a2 < 1) continue;
      CHECK(g.get(0, {a1, a2}) == Rat(a2 % 2 == 0 ? 1 : 0));
      CHECK(g.get(1, {a1, a2}) == Rat(a2 % 2 == 1 ? 1 : 0));
    }
}

TEST_CASE("series duality, closed form to order 8") {
  int N = 8;
  FormalMap gcom = egf(N, [](int) { return Rat(1); });
  FormalMap glie = egf(N, [&](int n) { return Rat(fact(n - 1)); });
  FormalMap gas = egf(N, [&](int n) { return Rat(fact(n)); });
  FormalMap id = FormalMap::identity(1, N);
  CHECK(compose(glie, neg_conj(gcom)) == id);
  CHECK(compose(gcom, neg_conj(glie)) == id);
  CHECK(compose(gas, neg_conj(gas)) == id);
}

TEST_CASE("series duality from expanded dims") {
  CHECK(duality_identity_check(preset("com"), 5));
  CHECK(duality_identity_check(preset("lie"), 5));
  CHECK(duality_identity_check(preset("as"), 4));
  CHECK(duality_identity_check(preset("z2"), 4));
}
