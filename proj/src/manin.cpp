#include "quadop/manin.hpp"
#include <stdexcept>

namespace quadop {

namespace {

void require_single_color(const QuadraticPresentation &p,
                          const QuadraticPresentation &q, const char *who) {
  if (p.E.colors != 1 || q.E.colors != 1)
    throw std::runtime_error(std::string(who) + ": color mismatch");
}

Subspace rel3(const QuadraticPresentation &p, const FreeSpace &f) {
  auto it = p.R.find({0, 0, 0, 0});
  return it == p.R.end() ? Subspace(f.dim) : it->second;
}

// arity-3 pairing sign per tree: -1 when the inner pair is {1,2}
Rat tree_sign(const Tree &t) {
  std::vector<int> pair;
  for (auto &c : t.children)
    if (!c.leaf) pair = c.leaf_set();
  assert(pair.size() == 2);
  return (pair[0] == 1 && pair[1] == 2) ? Rat(-1) : Rat(1);
}

std::string opname(const char *who, const QuadraticPresentation &p,
                   const QuadraticPresentation &q) {
  return std::string(who) + "(" + p.name + "," + q.name + ")";
}

} // namespace

Mat delta3(const FreeSpace &fu, const FreeSpace &fp, const FreeSpace &fq) {
  int a = fp.E.dim(0, 0, 0), b = fq.E.dim(0, 0, 0);
  assert(fu.E.dim(0, 0, 0) == a * b);
  Mat d(fp.dim * fq.dim, fu.dim);
  for (int ti = 0; ti < (int)fu.trees.size(); ti++) {
    int tp = fp.tree_index(fu.trees[ti]);
    int tq = fq.tree_index(fu.trees[ti]);
    assert(tp >= 0 && tq >= 0);
    for (int e1 = 0; e1 < a * b; e1++)
      for (int e2 = 0; e2 < a * b; e2++) {
        int row = fp.index(tp, {e1 / b, e2 / b}) * fq.dim +
                  fq.index(tq, {e1 % b, e2 % b});
        d.set(row, fu.index(ti, {e1, e2}), Rat(1));
      }
  }
  return d;
}

QuadraticPresentation circ(const QuadraticPresentation &p,
                           const QuadraticPresentation &q) {
  require_single_color(p, q, "circ");
  int a = p.E.dim(0, 0, 0), b = q.E.dim(0, 0, 0);
  QuadraticPresentation r;
  r.name = opname("circ", p, q);
  r.E = GeneratorSpace::single(a * b, p.E.sig(0, 0, 0).kron(q.E.sig(0, 0, 0)));
  FreeSpace fu = FreeSpace::build(r.E, 3);
  FreeSpace fp = FreeSpace::build(p.E, 3);
  FreeSpace fq = FreeSpace::build(q.E, 3);
  Quotient qp = quotient_by(rel3(p, fp).basis, fp.dim);
  Quotient qq = quotient_by(rel3(q, fq).basis, fq.dim);
  Subspace ker = kernel(qp.proj.kron(qq.proj).mul(delta3(fu, fp, fq)));
  if (ker.dim() > 0) r.R[{0, 0, 0, 0}] = ker;
  r.validate();
  return r;
}

QuadraticPresentation bullet(const QuadraticPresentation &p,
                             const QuadraticPresentation &q) {
  require_single_color(p, q, "bullet");
  int a = p.E.dim(0, 0, 0), b = q.E.dim(0, 0, 0);
  QuadraticPresentation r;
  r.name = opname("bullet", p, q);
  // the black product carries the sign-twisted product involution; with it
  // bullet(Lie, q) has exactly q's generator data and dual(circ(p, q)) has
  // exactly bullet(dual p, dual q)'s
  r.E = GeneratorSpace::single(
      a * b, p.E.sig(0, 0, 0).kron(q.E.sig(0, 0, 0)).scaled(Rat(-1)));
  FreeSpace fu = FreeSpace::build(r.E, 3);
  FreeSpace fp = FreeSpace::build(p.E, 3);
  FreeSpace fq = FreeSpace::build(q.E, 3);
  const Mat &rp = rel3(p, fp).basis, &rq = rel3(q, fq).basis;
  Mat rows(rp.rows * rq.rows, fu.dim);
  for (int i = 0; i < rp.rows; i++)
    for (int j = 0; j < rq.rows; j++)
      for (int ti = 0; ti < (int)fu.trees.size(); ti++) {
        Rat sgn = tree_sign(fu.trees[ti]);
        int tp = fp.tree_index(fu.trees[ti]), tq = fq.tree_index(fu.trees[ti]);
        for (int p1 = 0; p1 < a; p1++)
          for (int p2 = 0; p2 < a; p2++) {
            Rat pv = rp.get(i, fp.index(tp, {p1, p2}));
            if (pv == 0) continue;
            for (int q1 = 0; q1 < b; q1++)
              for (int q2 = 0; q2 < b; q2++) {
                Rat qv = rq.get(j, fq.index(tq, {q1, q2}));
                if (qv == 0) continue;
                rows.add_to(i * rq.rows + j,
                            fu.index(ti, {p1 * b + q1, p2 * b + q2}),
                            sgn * pv * qv);
              }
          }
      }
  Subspace s = Subspace::span(rows);
  if (s.dim() > 0) r.R[{0, 0, 0, 0}] = s;
  r.validate();
  return r;
}

QuadraticPresentation hom_operad(const QuadraticPresentation &p,
                                 const QuadraticPresentation &q) {
  require_single_color(p, q, "hom");
  int a = p.E.dim(0, 0, 0), b = q.E.dim(0, 0, 0);
  QuadraticPresentation r;
  r.name = opname("hom", p, q);
  // Hom(E_P, E_Q) = E_P^* (x) E_Q, index h = i * b + j
  Mat sigh = p.E.sig(0, 0, 0).transpose().kron(q.E.sig(0, 0, 0));
  r.E = GeneratorSpace::single(a * b, sigh);
  // generators of circ(hom, p): (E_P^* (x) E_Q) (x) E_P, index h * a + i
  GeneratorSpace ghp = GeneratorSpace::single(
      a * b * a, sigh.kron(p.E.sig(0, 0, 0)));
  FreeSpace fh = FreeSpace::build(r.E, 3);
  FreeSpace ft = FreeSpace::build(ghp, 3);
  FreeSpace fp = FreeSpace::build(p.E, 3);
  FreeSpace fq = FreeSpace::build(q.E, 3);
  // coevaluation nu_j -> sum_i a_ij (x) mu_i lifted to arity 3
  Mat can3(ft.dim, fq.dim);
  for (int ti = 0; ti < (int)fq.trees.size(); ti++) {
    int tt = ft.tree_index(fq.trees[ti]);
    assert(tt >= 0);
    for (int j1 = 0; j1 < b; j1++)
      for (int j2 = 0; j2 < b; j2++)
        for (int i1 = 0; i1 < a; i1++)
          for (int i2 = 0; i2 < a; i2++)
            can3.set(ft.index(tt, {(i1 * b + j1) * a + i1,
                                   (i2 * b + j2) * a + i2}),
                     fq.index(ti, {j1, j2}), Rat(1));
  }
  Quotient qp = quotient_by(rel3(p, fp).basis, fp.dim);
  // image of R_Q in F(hom)(3) (x) P(3); the minimal J is the span of its
  // P(3)-slices
  Mat img = Mat::identity(fh.dim).kron(qp.proj).mul(delta3(ft, fh, fp))
                .mul(can3).mul(rel3(q, fq).basis.transpose());
  Mat rows(img.cols * qp.dim, fh.dim);
  for (int c = 0; c < img.cols; c++)
    for (int x = 0; x < fh.dim; x++)
      for (int y = 0; y < qp.dim; y++)
        rows.set(c * qp.dim + y, x, img.get(x * qp.dim + y, c));
  Subspace s = Subspace::span(rows);
  if (s.dim() > 0) r.R[{0, 0, 0, 0}] = s;
  r.validate();
  return r;
}

CircDirectness circ_directness(const QuadraticPresentation &p,
                               const QuadraticPresentation &q) {
  require_single_color(p, q, "circ_directness");
  FreeSpace fp = FreeSpace::build(p.E, 3);
  FreeSpace fq = FreeSpace::build(q.E, 3);
  Mat b1 = rel3(p, fp).basis.kron(Mat::identity(fq.dim));
  Mat b2 = Mat::identity(fp.dim).kron(rel3(q, fq).basis);
  CircDirectness d;
  d.dim1 = b1.rows;
  d.dim2 = b2.rows;
  d.dimsum = rank(b1.vcat(b2));
  d.direct = d.dimsum == d.dim1 + d.dim2;
  return d;
}

Mat product_swap3(const QuadraticPresentation &p,
                  const QuadraticPresentation &q) {
  require_single_color(p, q, "product_swap3");
  int a = p.E.dim(0, 0, 0), b = q.E.dim(0, 0, 0);
  GeneratorSpace epq = GeneratorSpace::single(
      a * b, p.E.sig(0, 0, 0).kron(q.E.sig(0, 0, 0)));
  GeneratorSpace eqp = GeneratorSpace::single(
      a * b, q.E.sig(0, 0, 0).kron(p.E.sig(0, 0, 0)));
  FreeSpace fu = FreeSpace::build(epq, 3);
  FreeSpace fv = FreeSpace::build(eqp, 3);
  Mat m(fv.dim, fu.dim);
  for (int ti = 0; ti < (int)fu.trees.size(); ti++) {
    int tj = fv.tree_index(fu.trees[ti]);
    for (int e1 = 0; e1 < a * b; e1++)
      for (int e2 = 0; e2 < a * b; e2++)
        m.set(fv.index(tj, {(e1 % b) * a + e1 / b, (e2 % b) * a + e2 / b}),
              fu.index(ti, {e1, e2}), Rat(1));
  }
  return m;
}

} // namespace quadop
