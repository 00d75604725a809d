#include "quadop/quadalg.hpp"
#include <stdexcept>

namespace quadop {

namespace {

Mat swap_pair(int d) {
  Mat p(d * d, d * d);
  for (int i = 0; i < d; i++)
    for (int j = 0; j < d; j++) p.set(j * d + i, i * d + j, Rat(1));
  return p;
}

// flagged Sigma_2 action on E (x) V (x) V
Mat flag_action(const QuadraticPresentation &host, int dv, bool super) {
  Mat t = host.E.sig(0, 0, 0).kron(swap_pair(dv));
  return super ? t.scaled(Rat(-1)) : t;
}

Quotient coinvariant_quotient(const Mat &t) {
  return quotient_by(t.sub(Mat::identity(t.rows)).transpose(), t.rows);
}

Subspace rel3(const QuadraticPresentation &p, const FreeSpace &f) {
  auto it = p.R.find({0, 0, 0, 0});
  return it == p.R.end() ? Subspace(f.dim) : it->second;
}

std::vector<int> inner_pair(const Tree &t) {
  std::vector<int> pair;
  for (auto &c : t.children)
    if (!c.leaf) pair = c.leaf_set();
  assert(pair.size() == 2);
  return pair;
}

} // namespace

QuadraticAlgebraPresentation
make_quad_algebra(const QuadraticPresentation &host, int dv, bool super,
                  const Subspace &s) {
  if (host.E.colors != 1)
    throw std::runtime_error("make_quad_algebra: single color only");
  QuadraticAlgebraPresentation a;
  a.host = host;
  a.dv = dv;
  a.super = super;
  a.coin = coinvariant_quotient(flag_action(host, dv, super));
  if (s.ambient != a.coin.dim)
    throw std::runtime_error("make_quad_algebra: S not in the coinvariants");
  a.S = s;
  return a;
}

Mat coin_pairing(const QuadraticAlgebraPresentation &a,
                 const QuadraticAlgebraPresentation &ad) {
  Mat t = flag_action(a.host, a.dv, a.super);
  Mat pi = t.add(Mat::identity(t.rows)).scaled(Rat(1, 2));
  return a.coin.section().transpose().mul(pi.transpose())
      .mul(ad.coin.section());
}

QuadraticAlgebraPresentation
dual_algebra(const QuadraticAlgebraPresentation &a) {
  QuadraticAlgebraPresentation d;
  d.host = dual(a.host);
  d.dv = a.dv;
  d.super = !a.super;
  d.coin = coinvariant_quotient(flag_action(d.host, d.dv, d.super));
  assert(d.coin.dim == a.coin.dim);
  d.S = annihilator(a.S, coin_pairing(a, d));
  return d;
}

AssocQuadraticPresentation
enveloping_presentation(const QuadraticAlgebraPresentation &a) {
  const QuadraticPresentation &p = a.host;
  int de = p.E.dim(0, 0, 0), dv = a.dv, dg = de * dv;
  FreeSpace f3 = FreeSpace::build(p.E, 3);
  int dvv = dv * dv, dy = f3.dim * dvv;
  int dimM = dg * dg, q2 = a.coin.dim, dimN = de * q2;
  Mat ty = f3.action({2, 1, 3}).kron(swap_pair(dv));
  if (a.super) ty = ty.scaled(Rat(-1));

  // projection Y = F(E)(3) (x) V (x) V -> M (+) N: the tree with inner pair
  // {2,3} is the product block X(lambda;v1) X(mu;v2), the tree with inner
  // pair {1,2} lands in E (x) A_2, and the remaining tree maps through the
  // leaf swap
  Mat proj(dimM + dimN, dy);
  std::vector<int> deferred;
  for (int ti = 0; ti < (int)f3.trees.size(); ti++) {
    auto pair = inner_pair(f3.trees[ti]);
    for (int lam = 0; lam < de; lam++)
      for (int mu = 0; mu < de; mu++)
        for (int v1 = 0; v1 < dv; v1++)
          for (int v2 = 0; v2 < dv; v2++) {
            int y = f3.index(ti, {lam, mu}) * dvv + v1 * dv + v2;
            if (pair[0] == 2) { // {2,3}
              proj.set((lam * dv + v1) * dg + (mu * dv + v2), y, Rat(1));
            } else if (pair[0] == 1 && pair[1] == 2) { // {1,2}
              int amb = (mu * dv + v1) * dv + v2;
              for (int r = 0; r < q2; r++) {
                Rat c = a.coin.proj.get(r, amb);
                if (c != 0) proj.add_to(dimM + lam * q2 + r, y, c);
              }
            } else {
              deferred.push_back(y);
            }
          }
  }
  // {1,3}: swap leaves 1,2 into the product block first
  Mat pushed = proj.mul(ty);
  for (int y : deferred)
    for (int pr = 0; pr < proj.rows; pr++) proj.set(pr, y, pushed.get(pr, y));

  Mat w = rel3(p, f3).basis.kron(Mat::identity(dvv)).mul(proj.transpose());
  Mat es = Mat::zero(de * a.S.dim(), dimM)
               .hcat(Mat::identity(de).kron(a.S.basis));
  Subspace rels = sum(Subspace::span(w), Subspace::span(es));
  Subspace mblock =
      Subspace::span(Mat::identity(dimM).hcat(Mat::zero(dimM, dimN)));
  Subspace inter = intersection(mblock, rels);
  Mat stripped(inter.dim(), dimM);
  for (int r = 0; r < inter.dim(); r++)
    for (auto &[c, val] : inter.basis.data[r]) {
      assert(c < dimM);
      stripped.set(r, c, val);
    }
  AssocQuadraticPresentation u;
  u.dw = dg;
  u.rel = Subspace::span(stripped);
  return u;
}

AssocQuadraticPresentation assoc_dual(const AssocQuadraticPresentation &w) {
  AssocQuadraticPresentation d;
  d.dw = w.dw;
  d.rel = w.rel.dim() == 0 ? Subspace::full(w.dw * w.dw) : kernel(w.rel.basis);
  return d;
}

bool check_enveloping_duality(const QuadraticAlgebraPresentation &a) {
  AssocQuadraticPresentation lhs = assoc_dual(enveloping_presentation(a));
  AssocQuadraticPresentation rhs = enveloping_presentation(dual_algebra(a));
  return lhs.dw == rhs.dw && lhs.rel == rhs.rel;
}

} // namespace quadop
