#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "quadop/quadalg.hpp"
#include <random>

using namespace quadop;

namespace {

int coin_dim(const QuadraticPresentation &host, int dv) {
  Mat sw(dv * dv, dv * dv);
  for (int i = 0; i < dv; i++)
    for (int j = 0; j < dv; j++) sw.set(j * dv + i, i * dv + j, Rat(1));
  Mat t = host.E.sig(0, 0, 0).kron(sw);
  return t.rows - rank(t.sub(Mat::identity(t.rows)));
}

QuadraticAlgebraPresentation random_alg(std::mt19937 &rng) {
  const char *names[3] = {"com", "lie", "as"};
  auto host = preset(names[rng() % 3]);
  int dv = 1 + (int)(rng() % 2);
  int qd = coin_dim(host, dv);
  int ns = (int)(rng() % (qd + 1));
  Mat rows(ns, qd);
  for (int i = 0; i < ns; i++)
    for (int j = 0; j < qd; j++) rows.set(i, j, Rat((int)(rng() % 7) - 3));
  return make_quad_algebra(host, dv, false, Subspace::span(rows));
}

} // namespace

TEST_CASE("coinvariant dimensions of the flagged actions") {
  // plain: symmetric square for com, antisymmetric for lie, full for as
  CHECK(coin_dim(preset("com"), 1) == 1);
  CHECK(coin_dim(preset("com"), 2) == 3);
  CHECK(coin_dim(preset("lie"), 1) == 0);
  CHECK(coin_dim(preset("lie"), 2) == 1);
  CHECK(coin_dim(preset("as"), 1) == 1);
  CHECK(coin_dim(preset("as"), 2) == 4);
  // the dual data has coinvariants of the same dimension
  auto a = make_quad_algebra(preset("com"), 2, false, Subspace(3));
  CHECK(dual_algebra(a).coin.dim == 3);
  CHECK_THROWS(make_quad_algebra(preset("z2"), 1, false, Subspace(0)));
  CHECK_THROWS(make_quad_algebra(preset("com"), 2, false, Subspace(7)));
}

TEST_CASE("algebra duality is an involution with complementary dimensions") {
  std::mt19937 rng(7);
  for (int t = 0; t < 8; t++) {
    auto a = random_alg(rng);
    auto d = dual_algebra(a);
    CHECK(d.super != a.super);
    CHECK(a.S.dim() + d.S.dim() == a.coin.dim);
    auto dd = dual_algebra(d);
    CHECK(dd.S == a.S);
    CHECK(dd.super == a.super);
  }
  // x^2 = 0 over com dualizes to a free odd generator
  auto a = make_quad_algebra(preset("com"), 1, false, Subspace::full(1));
  auto d = dual_algebra(a);
  CHECK(d.host.name == "com!");
  CHECK(d.super);
  CHECK(d.S.dim() == 0);
  // and the free algebra dualizes to full relations
  auto f = make_quad_algebra(preset("com"), 1, false, Subspace(1));
  CHECK(dual_algebra(f).S.dim() == 1);
}

TEST_CASE("enveloping presentations of the standard small algebras") {
  // free non-unital polynomial algebra on x: enveloping is k[g], no relation
  auto fr = make_quad_algebra(preset("com"), 1, false, Subspace(1));
  auto u = enveloping_presentation(fr);
  CHECK(u.dw == 1);
  CHECK(u.rel.dim() == 0);
  // x^2 = 0: one quadratic relation g^2 = 0
  auto nil = make_quad_algebra(preset("com"), 1, false, Subspace::full(1));
  auto un = enveloping_presentation(nil);
  CHECK(un.dw == 1);
  CHECK(un.rel.dim() == 1);
  // one-dimensional lie algebra (necessarily abelian): polynomial enveloping
  auto lie1 = make_quad_algebra(preset("lie"), 1, false, Subspace(0));
  auto ul = enveloping_presentation(lie1);
  CHECK(ul.dw == 1);
  CHECK(ul.rel.dim() == 0);
  // k<x>/(xx) over as: two generators (left and right multiplication)
  auto asx = make_quad_algebra(preset("as"), 1, false, Subspace::full(1));
  auto ua = enveloping_presentation(asx);
  CHECK(ua.dw == 2);
  CHECK(ua.rel.dim() == 3);
  // empty generator space
  auto zv = make_quad_algebra(preset("com"), 0, false, Subspace(0));
  CHECK(enveloping_presentation(zv).dw == 0);
}

TEST_CASE("associative duality is an involution") {
  std::mt19937 rng(11);
  for (int t = 0; t < 6; t++) {
    auto u = enveloping_presentation(random_alg(rng));
    auto d = assoc_dual(u);
    CHECK(u.rel.dim() + d.rel.dim() == u.dw * u.dw);
    auto dd = assoc_dual(d);
    CHECK(dd.rel == u.rel);
  }
  // symmetric square relations dualize to the exterior square
  AssocQuadraticPresentation poly;
  poly.dw = 2;
  Mat r(1, 4);
  r.set(0, 1, Rat(1));
  r.set(0, 2, Rat(-1)); // xy - yx
  poly.rel = Subspace::span(r);
  auto d = assoc_dual(poly);
  CHECK(d.rel.dim() == 3);
  std::vector<Rat> sym{Rat(0), Rat(1), Rat(1), Rat(0)};
  CHECK(d.rel.contains(sym));
}

TEST_CASE("enveloping duality identity on presets") {
  CHECK(check_enveloping_duality(make_quad_algebra(preset("com"), 1, false,
                                       Subspace::full(1))));
  CHECK(check_enveloping_duality(make_quad_algebra(preset("as"), 1, false,
                                       Subspace::full(1))));
  // lie with dim V = 2 and the full antisymmetric relation space
  CHECK(check_enveloping_duality(make_quad_algebra(preset("lie"), 2, false,
                                       Subspace::full(1))));
}

TEST_CASE("enveloping duality identity on random algebras") {
  std::mt19937 rng(20240824);
  for (int t = 0; t < 10; t++) CHECK(check_enveloping_duality(random_alg(rng)));
}
