#include "quadop/freeop.hpp"
#include <algorithm>
#include <functional>

namespace quadop {

GeneratorSpace GeneratorSpace::single(int d, const Mat &sig) {
  GeneratorSpace e;
  e.colors = 1;
  e.dims = {{{d}}};
  e.sigma = {{{sig}}};
  e.validate();
  return e;
}

int GeneratorSpace::dim2() const {
  int t = 0;
  for (int c = 0; c < colors; c++)
    for (int c1 = 0; c1 < colors; c1++)
      for (int c2 = 0; c2 < colors; c2++) t += dims[c][c1][c2];
  return t;
}

void GeneratorSpace::validate() const {
  for (int c = 0; c < colors; c++)
    for (int c1 = 0; c1 < colors; c1++)
      for (int c2 = 0; c2 < colors; c2++) {
        const Mat &s = sigma[c][c1][c2];
        assert(s.rows == dims[c][c2][c1] && s.cols == dims[c][c1][c2]);
        assert(sigma[c][c2][c1].mul(s) == Mat::identity(dims[c][c1][c2]));
      }
}

// ---- decorated-tree workhorse -------------------------------------------

namespace {

struct VTree {
  bool leaf = false;
  int label = 0;
  int color = 0;
  int vid = -1; // decoration slot for internal vertices; -1 leaf, -2 undecorated
  bool flipped = false;
  std::vector<VTree> ch;
  int mleaf = 0;
};

VTree to_vtree(const Tree &t, int &next_vid, const Tree *skip = nullptr) {
  VTree v;
  v.leaf = t.leaf;
  v.label = t.label;
  v.color = t.color;
  if (t.leaf) {
    v.mleaf = t.label;
    return v;
  }
  if (skip && t == *skip) v.vid = -2;
  else v.vid = next_vid++;
  for (auto &c : t.children) v.ch.push_back(to_vtree(c, next_vid, skip));
  v.mleaf = v.ch[0].mleaf;
  for (auto &c : v.ch) v.mleaf = std::min(v.mleaf, c.mleaf);
  return v;
}

void canon(VTree &t) {
  if (t.leaf) {
    t.mleaf = t.label;
    return;
  }
  for (auto &c : t.ch) canon(c);
  t.mleaf = t.ch[0].mleaf;
  for (auto &c : t.ch) t.mleaf = std::min(t.mleaf, c.mleaf);
  bool sorted = std::is_sorted(t.ch.begin(), t.ch.end(),
                               [](const VTree &a, const VTree &b) { return a.mleaf < b.mleaf; });
  if (!sorted) {
    assert(t.ch.size() == 2 && "flip bookkeeping requires binary vertices");
    std::swap(t.ch[0], t.ch[1]);
    t.flipped = !t.flipped;
  }
}

Tree strip(const VTree &v) {
  if (v.leaf) return Tree::make_leaf(v.label, v.color);
  std::vector<Tree> ch;
  for (auto &c : v.ch) ch.push_back(strip(c));
  return Tree::make_node(std::move(ch), v.color);
}

struct VInfo {
  int vid;
  bool flipped;
  std::array<int, 3> sig; // current (c, c1, c2) after any flip
};

void collect_info(const VTree &t, std::vector<VInfo> &out) {
  if (t.leaf) return;
  assert(t.ch.size() == 2);
  out.push_back({t.vid, t.flipped, {t.color, t.ch[0].color, t.ch[1].color}});
  for (auto &c : t.ch) collect_info(c, out);
}

void relabel_leaves(VTree &t, const std::vector<int> &s) {
  if (t.leaf) {
    t.label = s[t.label - 1];
    return;
  }
  for (auto &c : t.ch) relabel_leaves(c, s);
}

bool find_vid_path(const VTree &t, int vid, std::vector<int> &path) {
  if (t.leaf) return false;
  if (t.vid == vid) return true;
  for (int i = 0; i < (int)t.ch.size(); i++) {
    path.push_back(i);
    if (find_vid_path(t.ch[i], vid, path)) return true;
    path.pop_back();
  }
  return false;
}

bool next_dec(std::vector<int> &dec, const std::vector<int> &dims) {
  for (int i = (int)dec.size() - 1; i >= 0; i--) {
    if (++dec[i] < dims[i]) return true;
    dec[i] = 0;
  }
  return false;
}

// Emit (target index, coeff) pairs for transporting a decoration through a
// canonicalized tree: sigma applies at every flipped vertex.
void emit_transport(const GeneratorSpace &E, const FreeSpace &tgt, int tj,
                    const std::vector<VInfo> &info,
                    const std::vector<std::array<int, 3>> &oldsig_by_vid,
                    const std::vector<int> &dec_by_vid, const Rat &coeff0,
                    const std::function<void(int, Rat)> &emit) {
  std::vector<int> newdec(info.size());
  std::function<void(size_t, Rat)> rec = [&](size_t k, Rat coeff) {
    if (k == info.size()) {
      emit(tgt.index(tj, newdec), coeff);
      return;
    }
    const VInfo &vi = info[k];
    int d = dec_by_vid[vi.vid];
    if (!vi.flipped) {
      newdec[k] = d;
      rec(k + 1, coeff);
    } else {
      auto &os = oldsig_by_vid[vi.vid];
      const Mat &s = E.sig(os[0], os[1], os[2]);
      for (int a = 0; a < s.rows; a++) {
        Rat v = s.get(a, d);
        if (v == 0) continue;
        newdec[k] = a;
        rec(k + 1, coeff * v);
      }
    }
  };
  rec(0, coeff0);
}

} // namespace

// ---- FreeSpace -----------------------------------------------------------

FreeSpace FreeSpace::build(const GeneratorSpace &e, int n,
                           std::vector<int> leaf_colors, int out_color) {
  assert(n >= 2);
  FreeSpace f;
  f.E = e;
  f.n = n;
  f.leaf_colors = leaf_colors.empty() ? std::vector<int>(n, 0) : leaf_colors;
  f.out_color = out_color;
  auto all = enumerate_trees(n, true, e.colors, f.leaf_colors, out_color);
  for (auto &t : all) {
    int nv = 0;
    VTree v = to_vtree(t, nv);
    std::vector<VInfo> info;
    collect_info(v, info);
    std::vector<std::array<int, 3>> sigs;
    std::vector<int> dims;
    long prod = 1;
    for (auto &vi : info) {
      sigs.push_back(vi.sig);
      int d = e.dim(vi.sig[0], vi.sig[1], vi.sig[2]);
      dims.push_back(d);
      prod *= d;
    }
    if (prod == 0) continue;
    f.tree_lookup[t.str()] = (int)f.trees.size();
    f.trees.push_back(t);
    f.offset.push_back(f.dim);
    f.vsigs.push_back(sigs);
    f.vdims.push_back(dims);
    f.dim += (int)prod;
  }
  return f;
}

int FreeSpace::tree_index(const Tree &t) const {
  auto it = tree_lookup.find(t.str());
  return it == tree_lookup.end() ? -1 : it->second;
}

int FreeSpace::index(int ti, const std::vector<int> &dec) const {
  assert(ti >= 0 && ti < (int)trees.size());
  const auto &dims = vdims[ti];
  assert(dec.size() == dims.size());
  int idx = 0;
  for (size_t i = 0; i < dec.size(); i++) {
    assert(dec[i] >= 0 && dec[i] < dims[i]);
    idx = idx * dims[i] + dec[i];
  }
  return offset[ti] + idx;
}

std::pair<int, std::vector<int>> FreeSpace::unindex(int idx) const {
  int ti = (int)(std::upper_bound(offset.begin(), offset.end(), idx) - offset.begin()) - 1;
  int rem = idx - offset[ti];
  const auto &dims = vdims[ti];
  std::vector<int> dec(dims.size());
  for (int i = (int)dims.size() - 1; i >= 0; i--) {
    dec[i] = rem % dims[i];
    rem /= dims[i];
  }
  return {ti, dec};
}

Mat relabel_matrix(const FreeSpace &src, const std::vector<int> &s,
                   const FreeSpace &dst) {
  assert((int)s.size() == src.n && dst.n == src.n);
  for (int i = 1; i <= src.n; i++)
    assert(dst.leaf_colors[s[i - 1] - 1] == src.leaf_colors[i - 1] &&
           "relabel: leaf color mismatch");
  assert(dst.out_color == src.out_color);
  Mat a(dst.dim, src.dim);
  for (int ti = 0; ti < (int)src.trees.size(); ti++) {
    int nv = 0;
    VTree v = to_vtree(src.trees[ti], nv);
    relabel_leaves(v, s);
    canon(v);
    Tree t2 = strip(v);
    int tj = dst.tree_index(t2);
    assert(tj >= 0);
    std::vector<VInfo> info;
    collect_info(v, info);
    const auto &dims = src.vdims[ti];
    std::vector<int> dec(dims.size(), 0);
    do {
      int from = src.index(ti, dec);
      emit_transport(src.E, dst, tj, info, src.vsigs[ti], dec, Rat(1),
                     [&](int tgtidx, Rat c) { a.add_to(tgtidx, from, c); });
    } while (next_dec(dec, dims));
  }
  return a;
}

Mat FreeSpace::action(const std::vector<int> &s) const {
  return relabel_matrix(*this, s, *this);
}

Mat FreeSpace::transposition(int i) const {
  std::vector<int> s(n);
  for (int j = 0; j < n; j++) s[j] = j + 1;
  std::swap(s[i - 1], s[i]);
  return action(s);
}

std::vector<Mat> FreeSpace::transpositions() const {
  std::vector<Mat> out;
  for (int i = 1; i < n; i++) out.push_back(transposition(i));
  return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> s(n);
  for (int i = 0; i < n; i++) s[i] = i + 1;
  std::vector<std::vector<int>> out;
  do out.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  return out;
}

std::vector<int> perm_mul(const std::vector<int> &s, const std::vector<int> &t) {
  std::vector<int> r(s.size());
  for (size_t i = 0; i < s.size(); i++) r[i] = s[t[i] - 1];
  return r;
}

int perm_sign(const std::vector<int> &s) {
  int sg = 1;
  for (size_t i = 0; i < s.size(); i++)
    for (size_t j = i + 1; j < s.size(); j++)
      if (s[i] > s[j]) sg = -sg;
  return sg;
}

Mat graft_matrix(const FreeSpace &fa, int slot, const FreeSpace &fb,
                 const FreeSpace &ft) {
  assert(slot >= 1 && slot <= fa.n);
  assert(fb.out_color == fa.leaf_colors[slot - 1] && "grafting color mismatch");
  assert(ft.n == fa.n + fb.n - 1);
  Mat m(ft.dim, fa.dim * fb.dim);
  for (int ta = 0; ta < (int)fa.trees.size(); ta++) {
    int nva = 0;
    VTree va = to_vtree(fa.trees[ta], nva);
    for (int tb = 0; tb < (int)fb.trees.size(); tb++) {
      int nvb = nva;
      VTree vb = to_vtree(fb.trees[tb], nvb);
      // relabel: b's leaves shift by slot-1; a's leaves > slot shift by k-1
      std::vector<int> sb(fb.n);
      for (int i = 0; i < fb.n; i++) sb[i] = i + slot;
      relabel_leaves(vb, sb);
      VTree g = va;
      std::function<void(VTree &)> splice = [&](VTree &t) {
        if (t.leaf) {
          if (t.label == slot) t = vb;
          else if (t.label > slot) t.label += fb.n - 1;
          return;
        }
        for (auto &c : t.ch) splice(c);
      };
      splice(g);
      canon(g);
      Tree tg = strip(g);
      int tj = ft.tree_index(tg);
      assert(tj >= 0);
      std::vector<VInfo> info;
      collect_info(g, info);
      // oldsig/dec indexed by vid: a's vertices then b's
      std::vector<std::array<int, 3>> oldsig(nvb);
      for (size_t i = 0; i < fa.vsigs[ta].size(); i++) oldsig[i] = fa.vsigs[ta][i];
      for (size_t i = 0; i < fb.vsigs[tb].size(); i++) oldsig[nva + i] = fb.vsigs[tb][i];
      std::vector<int> dimsa = fa.vdims[ta], dimsb = fb.vdims[tb];
      std::vector<int> deca(dimsa.size(), 0);
      do {
        std::vector<int> decb(dimsb.size(), 0);
        do {
          std::vector<int> dec_by_vid(nvb);
          for (size_t i = 0; i < deca.size(); i++) dec_by_vid[i] = deca[i];
          for (size_t i = 0; i < decb.size(); i++) dec_by_vid[nva + i] = decb[i];
          int col = fa.index(ta, deca) * fb.dim + fb.index(tb, decb);
          emit_transport(fa.E, ft, tj, info, oldsig, dec_by_vid, Rat(1),
                         [&](int tgtidx, Rat c) { m.add_to(tgtidx, col, c); });
        } while (next_dec(decb, dimsb));
      } while (next_dec(deca, dimsa));
    }
  }
  return m;
}

std::vector<Tree> one_ternary_trees(int n, int num_colors,
                                    const std::vector<int> &leaf_colors,
                                    int out_color) {
  std::vector<Tree> out;
  for (auto &t : enumerate_trees(n, false, num_colors, leaf_colors, out_color)) {
    int ternary = 0;
    bool ok = true;
    std::function<void(const Tree &)> walk = [&](const Tree &u) {
      if (u.leaf) return;
      if (u.children.size() == 3) ternary++;
      else if (u.children.size() != 2) ok = false;
      for (auto &c : u.children) walk(c);
    };
    walk(t);
    if (ok && ternary == 1) out.push_back(t);
  }
  return out;
}

int split_edge_sign(const Tree &binary_tree, const std::vector<int> &path) {
  auto order = canonical_edge_order(binary_tree, false);
  for (int i = 0; i < (int)order.size(); i++)
    if (order[i].path == path && order[i].internal) return i % 2 == 0 ? 1 : -1;
  assert(false && "split edge not found");
  return 0;
}

namespace {

// Shared core: computes the substitution span vectors (rows in fn
// coordinates) and the participating block columns for one 1-ternary tree.
struct SplitData {
  std::vector<std::vector<Rat>> span_rows; // dense rows, fn.dim wide
  std::vector<int> block_trees;            // fn tree indices of the block
};

SplitData split_core(const GeneratorSpace &E, const RelationSet &rel,
                     const Tree &s_tree, const FreeSpace &fn, bool det_signs) {
  SplitData out;
  // locate the ternary vertex
  const Tree *tern = nullptr;
  std::function<void(const Tree &)> find = [&](const Tree &u) {
    if (u.leaf) return;
    if (u.children.size() == 3) tern = &u;
    for (auto &c : u.children) find(c);
  };
  find(s_tree);
  assert(tern && "not a 1-ternary tree");
  const Tree v = *tern;
  int cA = v.children[0].color, cB = v.children[1].color, cC = v.children[2].color;
  FreeSpace f3 = FreeSpace::build(E, 3, {cA, cB, cC}, v.color);

  // vids: other binary vertices of s_tree in pre-order, skipping v
  int nv = 0;
  VTree base = to_vtree(s_tree, nv, &v);
  int B = nv;
  std::vector<int> vpath;
  bool found = find_vid_path(base, -2, vpath);
  assert(found);
  (void)found;

  // signatures of the other vertices, indexed by vid
  std::vector<std::array<int, 3>> oldsig(B + 2);
  std::vector<int> odims;
  {
    std::vector<VInfo> info0;
    // collect over a copy where v is replaced by a leaf placeholder so only
    // binary vertices appear
    std::function<void(const VTree &)> walk = [&](const VTree &t) {
      if (t.leaf) return;
      if (t.vid >= 0) {
        assert(t.ch.size() == 2);
        oldsig[t.vid] = {t.color, t.ch[0].color, t.ch[1].color};
      }
      for (auto &c : t.ch) walk(c);
    };
    walk(base);
    odims.resize(B);
    for (int i = 0; i < B; i++)
      odims[i] = E.dim(oldsig[i][0], oldsig[i][1], oldsig[i][2]);
  }

  // per f3-tree: build the split tree, canonical info, sign
  struct PerT3 {
    int tj;
    std::vector<VInfo> info;
    int sign;
  };
  std::vector<PerT3> per(f3.trees.size());
  for (int t3 = 0; t3 < (int)f3.trees.size(); t3++) {
    const Tree &sh = f3.trees[t3];
    VTree g = base;
    VTree *at = &g;
    for (int i : vpath) at = &at->ch[i];
    // replace *at (the ternary vertex) by the split per sh
    const VTree A = at->ch[0], Bc = at->ch[1], C = at->ch[2];
    auto map_leaf = [&](int lbl) -> const VTree & {
      return lbl == 1 ? A : (lbl == 2 ? Bc : C);
    };
    std::function<VTree(const Tree &, bool)> from3 = [&](const Tree &u, bool root) -> VTree {
      if (u.leaf) return map_leaf(u.label);
      VTree w;
      w.leaf = false;
      w.color = root ? v.color : u.color;
      w.vid = root ? B : B + 1;
      for (auto &c : u.children) w.ch.push_back(from3(c, false));
      return w;
    };
    *at = from3(sh, true);
    canon(g);
    Tree tg = strip(g);
    PerT3 p;
    p.tj = fn.tree_index(tg);
    collect_info(g, p.info);
    p.sign = 1;
    if (det_signs && p.tj >= 0) {
      std::vector<int> epath;
      bool f = find_vid_path(g, B + 1, epath);
      assert(f);
      (void)f;
      p.sign = split_edge_sign(tg, epath);
    }
    per[t3] = p;
    if (p.tj >= 0) out.block_trees.push_back(p.tj);
    // record signatures of the two new vertices for the transport
    oldsig[B] = f3.vsigs[t3][0];
    oldsig[B + 1] = f3.vsigs[t3][1];
    // (overwritten per t3 below when emitting; store per t3 instead)
  }
  std::sort(out.block_trees.begin(), out.block_trees.end());
  out.block_trees.erase(std::unique(out.block_trees.begin(), out.block_trees.end()),
                        out.block_trees.end());

  auto it = rel.find({cA, cB, cC, v.color});
  if (it == rel.end()) return out; // zero relations here
  const Subspace &R = it->second;
  assert(R.ambient == f3.dim);

  for (int ri = 0; ri < R.dim(); ri++) {
    std::vector<std::pair<int, Rat>> rvec(R.basis.data[ri].begin(), R.basis.data[ri].end());
    std::vector<int> dec(odims.size(), 0);
    bool any = true;
    if (!odims.empty()) any = true;
    do {
      std::vector<Rat> row(fn.dim, Rat(0));
      bool nonzero = false;
      for (auto &[idx3, val] : rvec) {
        auto [t3, dec3] = f3.unindex(idx3);
        const PerT3 &p = per[t3];
        if (p.tj < 0) continue; // target tree has zero decoration space
        std::vector<std::array<int, 3>> sig = oldsig;
        sig[B] = f3.vsigs[t3][0];
        sig[B + 1] = f3.vsigs[t3][1];
        std::vector<int> dec_by_vid(B + 2);
        for (int i = 0; i < B; i++) dec_by_vid[i] = dec[i];
        dec_by_vid[B] = dec3[0];
        dec_by_vid[B + 1] = dec3[1];
        Rat c0 = val * p.sign;
        emit_transport(E, fn, p.tj, p.info, sig, dec_by_vid, c0,
                       [&](int tgtidx, Rat c) {
                         row[tgtidx] += c;
                         nonzero = true;
                       });
      }
      if (nonzero) out.span_rows.push_back(std::move(row));
    } while (!odims.empty() && next_dec(dec, odims));
    (void)any;
  }
  return out;
}

Mat rows_to_mat(const std::vector<std::vector<Rat>> &rows, int width) {
  Mat m((int)rows.size(), width);
  for (int i = 0; i < (int)rows.size(); i++)
    for (int j = 0; j < width; j++)
      if (rows[i][j] != 0) m.data[i].push_back({j, rows[i][j]});
  return m;
}

} // namespace

Mat ternary_condition_rows(const GeneratorSpace &E, const RelationSet &rel,
                           const Tree &s_tree, const FreeSpace &fn,
                           bool det_signs);

Subspace ternary_relation_space(const GeneratorSpace &e, const RelationSet &rel,
                                const Tree &s_tree, const FreeSpace &fn,
                                TernaryMode mode) {
  if (mode == TernaryMode::Span) {
    SplitData d = split_core(e, rel, s_tree, fn, false);
    return Subspace::span(rows_to_mat(d.span_rows, fn.dim));
  }
  Mat cond = ternary_condition_rows(e, rel, s_tree, fn, mode == TernaryMode::PreimageDet);
  return kernel(cond);
}

Mat ternary_condition_rows(const GeneratorSpace &E, const RelationSet &rel,
                           const Tree &s_tree, const FreeSpace &fn,
                           bool det_signs) {
  SplitData d = split_core(E, rel, s_tree, fn, det_signs);
  // block columns
  std::vector<int> cols;
  for (int tj : d.block_trees) {
    int sz = (tj + 1 < (int)fn.offset.size() ? fn.offset[tj + 1] : fn.dim) - fn.offset[tj];
    for (int k = 0; k < sz; k++) cols.push_back(fn.offset[tj] + k);
  }
  std::sort(cols.begin(), cols.end());
  std::map<int, int> colpos;
  for (int i = 0; i < (int)cols.size(); i++) colpos[cols[i]] = i;
  // span restricted to the block
  Mat u((int)d.span_rows.size(), (int)cols.size());
  for (int i = 0; i < (int)d.span_rows.size(); i++)
    for (int k = 0; k < (int)cols.size(); k++)
      if (d.span_rows[i][cols[k]] != 0) u.data[i].push_back({k, d.span_rows[i][cols[k]]});
  Subspace ann = kernel(Subspace::span(u).basis); // annihilator within the block
  Mat cond(ann.dim(), fn.dim);
  for (int i = 0; i < ann.dim(); i++)
    for (auto &[k, v] : ann.basis.data[i]) cond.data[i].push_back({cols[k], v});
  return cond;
}

} // namespace quadop
