#include "quadop/quadratic.hpp"
#include <functional>
#include <stdexcept>

namespace quadop {

namespace {

// all color vectors of length n over r colors
std::vector<std::vector<int>> color_tuples(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && ++cur[i] == r) cur[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// evaluate a decorated binary tree of the As preset to a word in its leaves:
// decoration 0 = concatenate in canonical child order, 1 = reversed
std::vector<int> as_word(const Tree &t, const std::vector<int> &dec, size_t &pos) {
  if (t.leaf) return {t.label};
  assert(t.children.size() == 2);
  int d = dec[pos++];
  auto l = as_word(t.children[0], dec, pos);
  auto r = as_word(t.children[1], dec, pos);
  if (d == 0) {
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  r.insert(r.end(), l.begin(), l.end());
  return r;
}

Subspace ones_kernel(const FreeSpace &f) {
  Mat row(1, f.dim);
  for (int j = 0; j < f.dim; j++) row.data[0].push_back({j, Rat(1)});
  return kernel(row);
}

} // namespace

void QuadraticPresentation::validate() const {
  E.validate();
  auto perms = all_permutations(3);
  for (auto &lc : color_tuples(3, E.colors)) {
    for (int out = 0; out < E.colors; out++) {
      FreeSpace f = FreeSpace::build(E, 3, lc, out);
      if (f.dim == 0) continue;
      auto it = R.find({lc[0], lc[1], lc[2], out});
      Subspace r = it == R.end() ? Subspace(f.dim) : it->second;
      if (r.ambient != f.dim) throw std::runtime_error("relation ambient mismatch");
      for (auto &s : perms) {
        std::vector<int> lc2(3);
        for (int i = 0; i < 3; i++) lc2[s[i] - 1] = lc[i];
        FreeSpace f2 = FreeSpace::build(E, 3, lc2, out);
        auto it2 = R.find({lc2[0], lc2[1], lc2[2], out});
        Subspace r2 = it2 == R.end() ? Subspace(f2.dim) : it2->second;
        Mat m = relabel_matrix(f, s, f2);
        Subspace moved = Subspace::span(r.basis.mul(m.transpose()));
        if (!(moved == r2)) throw std::runtime_error("relations not S3-stable");
      }
    }
  }
}

QuadraticPresentation preset(const std::string &name) {
  QuadraticPresentation p;
  p.name = name;
  if (name == "com") {
    p.E = GeneratorSpace::single(1, Mat::identity(1));
    FreeSpace f3 = FreeSpace::build(p.E, 3);
    p.R[{0, 0, 0, 0}] = ones_kernel(f3); // all three brackets equal
  } else if (name == "lie") {
    Mat neg(1, 1);
    neg.set(0, 0, Rat(-1));
    p.E = GeneratorSpace::single(1, neg);
    Mat rl(1, 3); // Jacobi line on trees ((1,2),3), ((1,3),2), (1,(2,3))
    rl.set(0, 0, Rat(1));
    rl.set(0, 1, Rat(-1));
    rl.set(0, 2, Rat(-1));
    p.R[{0, 0, 0, 0}] = Subspace::span(rl);
  } else if (name == "as") {
    Mat sw(2, 2);
    sw.set(0, 1, Rat(1));
    sw.set(1, 0, Rat(1));
    p.E = GeneratorSpace::single(2, sw);
    FreeSpace f3 = FreeSpace::build(p.E, 3);
    // kernel of the evaluation onto words in x1 x2 x3
    std::map<std::vector<int>, int> wordix;
    Mat ev(6, f3.dim);
    for (int idx = 0; idx < f3.dim; idx++) {
      auto [ti, dec] = f3.unindex(idx);
      size_t pos = 0;
      auto w = as_word(f3.trees[ti], dec, pos);
      auto it = wordix.find(w);
      int row = it == wordix.end() ? (wordix[w] = (int)wordix.size()) : it->second;
      ev.add_to(row, idx, Rat(1));
    }
    assert((int)wordix.size() == 6);
    p.R[{0, 0, 0, 0}] = kernel(ev);
  } else if (name == "z2") {
    // group algebra of Z/2 as a two-color operad: colors 0 (trivial) and 1
    // (sign); products land in the color sum mod 2
    GeneratorSpace e;
    e.colors = 2;
    e.dims = {{{1, 0}, {0, 1}}, {{0, 1}, {1, 0}}};
    auto id1 = Mat::identity(1);
    e.sigma.assign(2, std::vector<std::vector<Mat>>(2, std::vector<Mat>(2, Mat(0, 0))));
    e.sigma[0][0][0] = id1;
    e.sigma[0][1][1] = id1;
    e.sigma[1][0][1] = id1;
    e.sigma[1][1][0] = id1;
    p.E = e;
    for (auto &lc : color_tuples(3, 2)) {
      int out = (lc[0] + lc[1] + lc[2]) % 2;
      FreeSpace f3 = FreeSpace::build(e, 3, lc, out);
      if (f3.dim == 0) continue;
      p.R[{lc[0], lc[1], lc[2], out}] = ones_kernel(f3);
    }
  } else {
    throw std::runtime_error("unknown preset: " + name);
  }
  p.validate();
  return p;
}

GeneratorSpace dual_generators(const GeneratorSpace &e) {
  GeneratorSpace d = e;
  for (int c = 0; c < e.colors; c++)
    for (int c1 = 0; c1 < e.colors; c1++)
      for (int c2 = 0; c2 < e.colors; c2++)
        d.sigma[c][c1][c2] = e.sigma[c][c2][c1].transpose().scaled(Rat(-1));
  d.validate();
  return d;
}

Mat pairing3(const FreeSpace &f, const FreeSpace &fdual) {
  assert(f.n == 3 && fdual.n == 3);
  assert(f.leaf_colors == fdual.leaf_colors && f.out_color == fdual.out_color);
  assert(f.dim == fdual.dim);
  Mat p(f.dim, fdual.dim);
  for (int ti = 0; ti < (int)f.trees.size(); ti++) {
    const Tree &t = f.trees[ti];
    int tj = fdual.tree_index(t);
    assert(tj >= 0);
    // inner pair of the unique non-leaf child
    std::vector<int> pair;
    for (auto &c : t.children)
      if (!c.leaf) pair = c.leaf_set();
    assert(pair.size() == 2);
    Rat cst = (pair[0] == 1 && pair[1] == 2) ? Rat(-1) : Rat(1);
    int sz = 1;
    for (int d : f.vdims[ti]) sz *= d;
    for (int k = 0; k < sz; k++)
      p.add_to(f.offset[ti] + k, fdual.offset[tj] + k, cst);
  }
  return p;
}

QuadraticPresentation dual(const QuadraticPresentation &p) {
  QuadraticPresentation d;
  d.name = p.name.empty() ? "" : p.name + "!";
  d.E = dual_generators(p.E);
  for (auto &lc : color_tuples(3, p.E.colors)) {
    for (int out = 0; out < p.E.colors; out++) {
      FreeSpace f = FreeSpace::build(p.E, 3, lc, out);
      if (f.dim == 0) continue;
      FreeSpace fd = FreeSpace::build(d.E, 3, lc, out);
      auto it = p.R.find({lc[0], lc[1], lc[2], out});
      Subspace r = it == p.R.end() ? Subspace(f.dim) : it->second;
      d.R[{lc[0], lc[1], lc[2], out}] = kernel(r.basis.mul(pairing3(f, fd)));
    }
  }
  d.validate();
  return d;
}

std::string ExpandedOperad::key(int n, const std::vector<int> &lc, int out) {
  std::string k = std::to_string(n) + "|";
  for (int c : lc) k += std::to_string(c) + ",";
  k += "|" + std::to_string(out);
  return k;
}

ExpandedOperad ExpandedOperad::expand(const QuadraticPresentation &p, int N) {
  assert(N >= 2);
  p.validate();
  ExpandedOperad op;
  op.pres = p;
  op.N = N;
  for (int n = 2; n <= N; n++) {
    for (auto &lc : color_tuples(n, p.E.colors)) {
      for (int out = 0; out < p.E.colors; out++) {
        OperadComponent c;
        c.F = FreeSpace::build(p.E, n, lc, out);
        if (c.F.dim == 0 && p.E.colors > 1) continue;
        // batch every substitution row and reduce once: one RREF instead of
        // one per ternary tree
        Mat rows(0, c.F.dim);
        rows.data.reserve(256);
        for (auto &st : one_ternary_trees(n, p.E.colors, lc, out)) {
          Subspace s =
              ternary_relation_space(p.E, p.R, st, c.F, TernaryMode::Span);
          for (auto &row : s.basis.data) {
            rows.data.push_back(row);
            rows.rows++;
          }
        }
        c.relspan = Subspace::span(rows);
        c.q = quotient_by(c.relspan.basis, c.F.dim);
        op.comps.emplace(key(n, lc, out), std::move(c));
      }
    }
  }
  return op;
}

const OperadComponent &ExpandedOperad::comp(int n, const std::vector<int> &lc,
                                            int out) const {
  std::vector<int> l = lc.empty() ? std::vector<int>(n, 0) : lc;
  auto it = comps.find(key(n, l, out));
  if (it == comps.end()) throw std::runtime_error("arity not expanded");
  return it->second;
}

int ExpandedOperad::dim(int n, const std::vector<int> &lc, int out) const {
  std::vector<int> l = lc.empty() ? std::vector<int>(n, 0) : lc;
  auto it = comps.find(key(n, l, out));
  return it == comps.end() ? 0 : it->second.dim();
}

std::vector<int> ExpandedOperad::dims(int out) const {
  std::vector<int> d;
  for (int n = 2; n <= N; n++) d.push_back(dim(n, {}, out));
  return d;
}

Mat ExpandedOperad::action(int n, const std::vector<int> &s) const {
  const OperadComponent &c = comp(n);
  return c.q.proj.mul(c.F.action(s)).mul(c.q.section());
}

Mat ExpandedOperad::compose_matrix(int m, int slot, int k) const {
  const OperadComponent &ca = comp(m), &cb = comp(k), &ct = comp(m + k - 1);
  Mat g = graft_matrix(ca.F, slot, cb.F, ct.F);
  return ct.q.proj.mul(g).mul(ca.q.section().kron(cb.q.section()));
}

std::vector<Rat> compose_in_operad(const ExpandedOperad &op, int slot, int m,
                                   const std::vector<Rat> &a, int k,
                                   const std::vector<Rat> &b) {
  Mat c = op.compose_matrix(m, slot, k);
  std::vector<Rat> ab(a.size() * b.size());
  for (size_t i = 0; i < a.size(); i++)
    for (size_t j = 0; j < b.size(); j++) ab[i * b.size() + j] = a[i] * b[j];
  return c.apply(ab);
}

Subspace dual_space_via_intersection(const QuadraticPresentation &p, int n,
                                     const std::vector<int> &lc, int out) {
  if (n < 3) throw std::runtime_error("intersection needs n >= 3");
  std::vector<int> l = lc.empty() ? std::vector<int>(n, 0) : lc;
  FreeSpace f = FreeSpace::build(p.E, n, l, out);
  Mat cond(0, f.dim);
  for (auto &st : one_ternary_trees(n, p.E.colors, l, out))
    cond = cond.vcat(ternary_condition_rows(p.E, p.R, st, f, true));
  return kernel(cond);
}

} // namespace quadop
