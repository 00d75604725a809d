#include "quadop/cobar.hpp"
#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace quadop {

// ---- DgPiece -------------------------------------------------------------

int DgPiece::slot(int deg) const {
  if (degrees.empty() || deg < degrees.front() || deg > degrees.back()) return -1;
  return deg - degrees.front();
}

int DgPiece::dim_at(int deg) const {
  int s = slot(deg);
  return s < 0 ? 0 : dims[s];
}

Mat DgPiece::action(const std::vector<int> &s, int dslot) const {
  // decompose s into adjacent transpositions by sorting; A is a homomorphism
  std::vector<int> p = s;
  std::vector<int> js;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int j = 0; j + 1 < (int)p.size(); j++)
      if (p[j] > p[j + 1]) {
        std::swap(p[j], p[j + 1]);
        js.push_back(j);
        moved = true;
      }
  }
  Mat a = Mat::identity(dims[dslot]);
  for (auto it = js.rbegin(); it != js.rend(); ++it) a = a.mul(sw[*it][dslot]);
  return a;
}

ChainComplex DgPiece::complex() const {
  ChainComplex c;
  c.degrees = degrees;
  c.dims = dims;
  c.diffs = diff;
  c.cohomological = true;
  return c;
}

const Mat &DgOperad::compose_at(int m, int i, int k, int da, int db) const {
  static Mat empty;
  auto it = comp.find({m, i, k});
  if (it == comp.end()) return empty;
  auto jt = it->second.find({da, db});
  return jt == it->second.end() ? empty : jt->second;
}

void DgOperad::validate() const {
  for (auto &[n, p] : pieces) {
    p.complex().validate();
    if (p.sw.empty()) continue;
    for (int d = 0; d < (int)p.dims.size(); d++) {
      Mat id = Mat::identity(p.dims[d]);
      for (int i = 0; i + 2 <= n; i++) {
        assert(p.sw[i][d].mul(p.sw[i][d]) == id);
        if (i + 3 <= n) {
          Mat b = p.sw[i][d].mul(p.sw[i + 1][d]);
          assert(b.mul(b).mul(b) == id);
        }
      }
    }
  }
  if (!has_comp) return;
  // chain-map property with the Koszul sign
  for (auto &[key, mats] : comp) {
    auto [m, i, k] = key;
    const DgPiece &pa = pieces.at(m), &pb = pieces.at(k), &pt = pieces.at(m + k - 1);
    for (auto &[dd, c] : mats) {
      auto [da, db] = dd;
      int tslot = pt.slot(pa.degrees[da] + pb.degrees[db]);
      assert(tslot >= 0);
      Mat rhs(pt.dim_at(pa.degrees[da] + pb.degrees[db] + 1), c.cols);
      Mat lhs = tslot < (int)pt.diff.size() ? pt.diff[tslot].mul(c)
                                            : Mat::zero(rhs.rows, rhs.cols);
      if (da < (int)pa.diff.size()) {
        const Mat &c2 = compose_at(m, i, k, da + 1, db);
        if (c2.rows) rhs = rhs.add(c2.mul(pa.diff[da].kron(Mat::identity(pb.dims[db]))));
      }
      if (db < (int)pb.diff.size()) {
        const Mat &c2 = compose_at(m, i, k, da, db + 1);
        Rat sgn(pa.degrees[da] % 2 == 0 ? 1 : -1);
        if (c2.rows)
          rhs = rhs.add(
              c2.mul(Mat::identity(pa.dims[da]).kron(pb.diff[db])).scaled(sgn));
      }
      assert(lhs == rhs && "composition is not a chain map");
    }
  }
}

DgOperad from_expanded(const ExpandedOperad &op) {
  assert(op.pres.E.colors == 1 && "dg machinery is single-color");
  DgOperad dg;
  dg.N = op.N;
  dg.has_comp = true;
  for (int n = 2; n <= op.N; n++) {
    DgPiece p;
    p.n = n;
    p.degrees = {0};
    p.dims = {op.dim(n)};
    p.sw.assign(n - 1, {});
    for (int i = 1; i < n; i++) {
      std::vector<int> s(n);
      for (int j = 0; j < n; j++) s[j] = j + 1;
      std::swap(s[i - 1], s[i]);
      p.sw[i - 1] = {op.action(n, s)};
    }
    dg.pieces[n] = std::move(p);
  }
  for (int m = 2; m <= op.N; m++)
    for (int k = 2; m + k - 1 <= op.N; k++)
      for (int i = 1; i <= m; i++)
        dg.comp[{m, i, k}][{0, 0}] = op.compose_matrix(m, i, k);
  return dg;
}

// ---- cobar construction --------------------------------------------------

namespace {

struct PV { // pre-order vertex of a tree
  std::vector<int> path;
  int arity = 0;
  std::vector<int> lset;
};

void collect_pv(const Tree &t, std::vector<int> &path, std::vector<PV> &out) {
  if (t.leaf) return;
  PV v;
  v.path = path;
  v.arity = (int)t.children.size();
  v.lset = t.leaf_set();
  out.push_back(std::move(v));
  for (int i = 0; i < (int)t.children.size(); i++) {
    path.push_back(i);
    collect_pv(t.children[i], path, out);
    path.pop_back();
  }
}

std::vector<PV> preorder(const Tree &t) {
  std::vector<PV> out;
  std::vector<int> path;
  collect_pv(t, path, out);
  return out;
}

int mixed_index(const std::vector<int> &dig, const std::vector<int> &dims) {
  int idx = 0;
  for (size_t i = 0; i < dig.size(); i++) idx = idx * dims[i] + dig[i];
  return idx;
}

bool next_digits(std::vector<int> &dig, const std::vector<int> &dims) {
  for (int i = (int)dig.size() - 1; i >= 0; i--) {
    if (++dig[i] < dims[i]) return true;
    dig[i] = 0;
  }
  return false;
}

// Koszul sign of reordering graded factors: rho maps source position to
// target position; parities are the source factor degree parities.
int koszul_sign(const std::vector<int> &parity, const std::vector<int> &rho) {
  int s = 1;
  for (size_t i = 0; i < rho.size(); i++)
    for (size_t j = i + 1; j < rho.size(); j++)
      if (rho[i] > rho[j] && parity[i] && parity[j]) s = -s;
  return s;
}

int perm_parity_sign(const std::vector<int> &rho) {
  int s = 1;
  for (size_t i = 0; i < rho.size(); i++)
    for (size_t j = i + 1; j < rho.size(); j++)
      if (rho[i] > rho[j]) s = -s;
  return s;
}

struct Summand {
  int tree = 0;
  std::vector<int> dslots; // per vertex, slot into q.pieces[arity].degrees
  int cdeg = 0;            // edges - (n-2)
  int tdeg = 0;            // cdeg - sum of underlying degrees
  std::vector<int> fdims;
  std::vector<int> fpar; // underlying degree parities per factor
  int dim = 1;
  int degslot = -1;
  int offset = 0;
};

struct SpaceN {
  int n = 0;
  std::vector<Tree> trees;
  std::vector<std::vector<PV>> verts;
  std::vector<std::vector<EdgeRef>> edorder; // [tree] canonical Ed order
  std::vector<Summand> summands;
  std::map<std::string, int> lookup;

  static std::string skey(int tree, const std::vector<int> &ds) {
    std::string k = std::to_string(tree);
    for (int d : ds) k += "." + std::to_string(d);
    return k;
  }
  int find(int tree, const std::vector<int> &ds) const {
    auto it = lookup.find(skey(tree, ds));
    return it == lookup.end() ? -1 : it->second;
  }
  int gindex(int s, const std::vector<int> &dig) const {
    return summands[s].offset + mixed_index(dig, summands[s].fdims);
  }
};

// position of an edge keyed by (leafset, internal) in a canonical Ed order
int edge_pos(const Tree &t, const std::vector<EdgeRef> &order,
             const std::vector<int> &lset, bool internal) {
  for (int i = 0; i < (int)order.size(); i++) {
    const Tree &sub = subtree_at(t, order[i].path);
    if (order[i].internal == internal && sub.leaf_set() == lset) return i;
  }
  assert(false && "edge not found");
  return -1;
}

} // namespace

DgOperad cobar_dual(const DgOperad &q, int N, bool with_structure) {
  assert(N <= q.N);
  assert(q.has_comp && "cobar needs composition maps of the input");
  DgOperad out;
  out.N = N;
  std::map<int, SpaceN> spaces;

  // pass 1: summands, degree layout, differential
  for (int n = 2; n <= N; n++) {
    SpaceN sp;
    sp.n = n;
    sp.trees = enumerate_trees(n, false);
    std::map<std::string, int> tree_ix;
    for (int t = 0; t < (int)sp.trees.size(); t++) {
      tree_ix[sp.trees[t].str()] = t;
      sp.verts.push_back(preorder(sp.trees[t]));
      sp.edorder.push_back(canonical_edge_order(sp.trees[t], true));
    }
    // enumerate summands
    for (int t = 0; t < (int)sp.trees.size(); t++) {
      auto &vs = sp.verts[t];
      int m = sp.trees[t].num_internal_edges();
      std::vector<std::vector<int>> choices; // valid degree slots per vertex
      for (auto &v : vs) {
        const DgPiece &p = q.pieces.at(v.arity);
        std::vector<int> ch;
        for (int s = 0; s < (int)p.dims.size(); s++)
          if (p.dims[s] > 0) ch.push_back(s);
        choices.push_back(ch);
      }
      std::vector<int> pick(vs.size(), 0);
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i == vs.size()) {
          Summand s;
          s.tree = t;
          s.cdeg = m - (n - 2);
          s.tdeg = s.cdeg;
          for (size_t j = 0; j < vs.size(); j++) {
            const DgPiece &p = q.pieces.at(vs[j].arity);
            int sl = choices[j][pick[j]];
            s.dslots.push_back(sl);
            s.fdims.push_back(p.dims[sl]);
            s.fpar.push_back(((p.degrees[sl] % 2) + 2) % 2);
            s.tdeg -= p.degrees[sl];
            s.dim *= p.dims[sl];
          }
          sp.lookup[SpaceN::skey(t, s.dslots)] = (int)sp.summands.size();
          sp.summands.push_back(std::move(s));
          return;
        }
        for (size_t c = 0; c < choices[i].size(); c++) {
          pick[i] = (int)c;
          rec(i + 1);
        }
      };
      if (!choices.empty()) rec(0);
    }
    // degree layout
    int lo = 0, hi = 0;
    for (auto &s : sp.summands) {
      lo = std::min(lo, s.tdeg);
      hi = std::max(hi, s.tdeg);
    }
    DgPiece piece;
    piece.n = n;
    for (int d = lo; d <= hi; d++) piece.degrees.push_back(d);
    piece.dims.assign(hi - lo + 1, 0);
    for (auto &s : sp.summands) {
      s.degslot = s.tdeg - lo;
      s.offset = piece.dims[s.degslot];
      piece.dims[s.degslot] += s.dim;
    }
    // differential
    piece.diff.clear();
    for (size_t d = 0; d + 1 < piece.dims.size(); d++)
      piece.diff.push_back(Mat(piece.dims[d + 1], piece.dims[d]));
    auto &D = piece.diff;
    for (int si = 0; si < (int)sp.summands.size(); si++) {
      const Summand &sT = sp.summands[si];
      int t = sT.tree;
      auto &vs = sp.verts[t];
      // internal part: the dualized vertex differentials. d_Q raises the
      // underlying slot, so its transpose lowers it and raises the total
      // degree of the summand by one. Det sits first in the factor order, so
      // the Koszul prefix sign includes the cobar degree.
      for (size_t v = 0; v < vs.size(); v++) {
        const DgPiece &p = q.pieces.at(vs[v].arity);
        int sl = sT.dslots[v];
        if (sl == 0 || p.dims[sl - 1] == 0) continue;
        const Mat &dv = p.diff[sl - 1]; // deg sl-1 -> sl
        std::vector<int> ds2 = sT.dslots;
        ds2[v] = sl - 1;
        int sj = sp.find(t, ds2);
        if (sj < 0) continue;
        const Summand &sS = sp.summands[sj];
        assert(sS.tdeg == sT.tdeg + 1);
        int eps = (sT.cdeg % 2 + 2) % 2;
        for (size_t u = 0; u < v; u++) eps ^= sT.fpar[u];
        Rat sgn(eps ? -1 : 1);
        std::vector<int> dig(sT.fdims.size(), 0);
        if (sT.dim == 0) continue;
        do {
          int src = sp.gindex(si, dig);
          int b = dig[v];
          for (int a = 0; a < dv.cols; a++) {
            // transpose: coefficient dv[? ] ... dual: target digit a has
            // coefficient dv[b][a]? dv maps deg sl-1 -> sl: dv[row in sl][col
            // in sl-1]; transpose sends dual basis e^*_b (b in sl) to
            // sum_a dv[b][a] e^*_a (a in sl-1)
            Rat cval = dv.get(b, a);
            if (cval == 0) continue;
            std::vector<int> dig2 = dig;
            dig2[v] = a;
            D[sT.degslot].add_to(sp.gindex(sj, dig2), src, sgn * cval);
          }
        } while (next_digits(dig, sT.fdims));
      }
    }
    // contraction part: for each tree T with an edge e, delta maps the
    // summand of S = T/e into the summand of T
    for (int t = 0; t < (int)sp.trees.size(); t++) {
      const Tree &T = sp.trees[t];
      auto edges = canonical_edge_order(T, false);
      auto &edall = sp.edorder[t];
      for (auto &e : edges) {
        int pos = -1;
        for (int i = 0; i < (int)edall.size(); i++)
          if (edall[i] == e) pos = i;
        assert(pos >= 0);
        int sign_e = pos % 2 == 0 ? 1 : -1;
        Tree S = contract(T, e, false).first;
        int ts = tree_ix.at(S.str());
        auto &vT = sp.verts[t];
        auto &vS = sp.verts[ts];
        // locate w (below e) and v (parent)
        int wi = -1, vi = -1;
        std::vector<int> ppath(e.path.begin(), e.path.end() - 1);
        for (int i = 0; i < (int)vT.size(); i++) {
          if (vT[i].path == e.path) wi = i;
          if (vT[i].path == ppath) vi = i;
        }
        assert(wi >= 0 && vi >= 0);
        int j = e.path.back() + 1; // 1-based slot of w among v's children
        int nv = vT[vi].arity, nw = vT[wi].arity, nm = nv + nw - 1;
        // vertex map T -> S by leaf set (v maps to the merged vertex)
        std::vector<int> tmap(vT.size(), -1);
        for (int i = 0; i < (int)vT.size(); i++) {
          if (i == wi) continue;
          for (int k2 = 0; k2 < (int)vS.size(); k2++)
            if (vS[k2].lset == vT[i].lset) tmap[i] = k2;
          assert(tmap[i] >= 0);
        }
        // slot sort permutation at the merged vertex: splice order keys
        const Tree &tv = subtree_at(T, ppath);
        std::vector<int> keys;
        for (int ci = 0; ci < (int)tv.children.size(); ci++) {
          if (ci == e.path.back()) {
            for (auto &wc : tv.children[ci].children) keys.push_back(wc.min_leaf());
          } else {
            keys.push_back(tv.children[ci].min_leaf());
          }
        }
        std::vector<int> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> pi(nm);
        for (int i = 0; i < nm; i++)
          pi[i] = (int)(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) -
                        sorted.begin()) + 1;
        bool pi_id = true;
        for (int i = 0; i < nm; i++) pi_id = pi_id && pi[i] == i + 1;
        // factor reorder rho: T pre-order -> (S pre-order with the merged
        // vertex expanded to v then w)
        std::vector<int> expanded; // expanded position per S position
        // expanded sequence positions: S vertex k2 occupies 1 slot except the
        // merged one (tmap[vi]) occupies 2
        std::vector<int> spos(vS.size());
        {
          int c2 = 0;
          for (int k2 = 0; k2 < (int)vS.size(); k2++) {
            spos[k2] = c2;
            c2 += (k2 == tmap[vi]) ? 2 : 1;
          }
        }
        std::vector<int> rho(vT.size());
        for (int i = 0; i < (int)vT.size(); i++)
          rho[i] = (i == wi) ? spos[tmap[vi]] + 1 : spos[tmap[i]];
        // per source summand of T
        for (int si = 0; si < (int)sp.summands.size(); si++) {
          const Summand &sT = sp.summands[si];
          if (sT.tree != t || sT.dim == 0) continue;
          const DgPiece &pv = q.pieces.at(nv);
          const DgPiece &pw = q.pieces.at(nw);
          const DgPiece &pm = q.pieces.at(nm);
          int dv = pv.degrees[sT.dslots[vi]], dw = pw.degrees[sT.dslots[wi]];
          int msl = pm.slot(dv + dw);
          if (msl < 0 || pm.dims[msl] == 0) continue;
          const Mat &c0 = q.compose_at(nv, j, nw, sT.dslots[vi], sT.dslots[wi]);
          if (c0.rows == 0) continue;
          Mat M = pi_id ? c0 : pm.action(pi, msl).mul(c0);
          // target dslots in S
          std::vector<int> dsS(vS.size());
          for (int i = 0; i < (int)vT.size(); i++) {
            if (i == wi) continue;
            dsS[tmap[i]] = (i == vi) ? msl : sT.dslots[i];
          }
          int sj = sp.find(ts, dsS);
          if (sj < 0) continue;
          const Summand &sS = sp.summands[sj];
          assert(sS.tdeg == sT.tdeg - 1);
          int ks = koszul_sign(sT.fpar, rho);
          Rat sgn(sign_e * ks);
          std::vector<int> dig(sT.fdims.size(), 0);
          do {
            int srcT = sp.gindex(si, dig);
            int col = dig[vi] * sT.fdims[wi] + dig[wi];
            for (int a = 0; a < M.rows; a++) {
              Rat cval = M.get(a, col);
              if (cval == 0) continue;
              std::vector<int> digS(vS.size());
              for (int i = 0; i < (int)vT.size(); i++) {
                if (i == wi) continue;
                digS[tmap[i]] = (i == vi) ? a : dig[i];
              }
              D[sS.degslot].add_to(srcT, sp.gindex(sj, digS), sgn * cval);
            }
          } while (next_digits(dig, sT.fdims));
        }
      }
    }
    piece.complex().validate(); // hard d^2 = 0 assertion
    out.pieces[n] = std::move(piece);
    spaces[n] = std::move(sp);
  }

  if (!with_structure) return out;

  // pass 2: symmetric group actions
  struct GT {
    bool leaf = false;
    int label = 0;
    std::vector<GT> ch;
    int mleaf = 0;
    std::vector<int> tau; // input permutation: old slot -> new slot (1-based)
  };
  std::function<GT(const Tree &)> togt = [&](const Tree &t) -> GT {
    GT g;
    g.leaf = t.leaf;
    g.label = t.label;
    for (auto &c : t.children) g.ch.push_back(togt(c));
    return g;
  };
  std::function<void(GT &, const std::vector<int> &)> grelabel =
      [&](GT &g, const std::vector<int> &s) {
        if (g.leaf) {
          g.label = s[g.label - 1];
          return;
        }
        for (auto &c : g.ch) grelabel(c, s);
      };
  std::function<void(GT &)> gcanon = [&](GT &g) {
    if (g.leaf) {
      g.mleaf = g.label;
      return;
    }
    for (auto &c : g.ch) gcanon(c);
    std::vector<int> ord(g.ch.size());
    for (size_t i = 0; i < ord.size(); i++) ord[i] = (int)i;
    std::stable_sort(ord.begin(), ord.end(),
                     [&](int a, int b) { return g.ch[a].mleaf < g.ch[b].mleaf; });
    std::vector<GT> nc;
    g.tau.assign(g.ch.size(), 0);
    for (size_t np = 0; np < ord.size(); np++) {
      g.tau[ord[np]] = (int)np + 1;
      nc.push_back(std::move(g.ch[ord[np]]));
    }
    g.ch = std::move(nc);
    g.mleaf = g.ch[0].mleaf;
  };
  std::function<Tree(const GT &)> gstrip = [&](const GT &g) -> Tree {
    if (g.leaf) return Tree::make_leaf(g.label);
    std::vector<Tree> ch;
    for (auto &c : g.ch) ch.push_back(gstrip(c));
    return Tree::make_node(std::move(ch));
  };
  struct GInfo {
    std::vector<int> lset;
    std::vector<int> tau;
    int arity;
  };
  std::function<void(const GT &, std::vector<GInfo> &)> ginfo =
      [&](const GT &g, std::vector<GInfo> &outv) {
        if (g.leaf) return;
        GInfo i;
        i.arity = (int)g.ch.size();
        i.tau = g.tau;
        std::function<void(const GT &)> ls = [&](const GT &h) {
          if (h.leaf) {
            i.lset.push_back(h.label);
            return;
          }
          for (auto &c : h.ch) ls(c);
        };
        ls(g);
        std::sort(i.lset.begin(), i.lset.end());
        outv.push_back(std::move(i));
        for (auto &c : g.ch) ginfo(c, outv);
      };

  auto build_action = [&](int n, const std::vector<int> &s) -> std::vector<Mat> {
    SpaceN &sp = spaces[n];
    DgPiece &piece = out.pieces[n];
    std::vector<Mat> mats;
    for (size_t d = 0; d < piece.dims.size(); d++)
      mats.push_back(Mat(piece.dims[d], piece.dims[d]));
    std::map<std::string, int> tree_ix;
    for (int t = 0; t < (int)sp.trees.size(); t++) tree_ix[sp.trees[t].str()] = t;
    for (int si = 0; si < (int)sp.summands.size(); si++) {
      const Summand &sm = sp.summands[si];
      if (sm.dim == 0) continue;
      int t = sm.tree;
      GT g = togt(sp.trees[t]);
      grelabel(g, s);
      gcanon(g);
      Tree t2tree = gstrip(g);
      int t2 = tree_ix.at(t2tree.str());
      std::vector<GInfo> infos;
      ginfo(g, infos); // pre-order of the canonicalized tree
      auto &vT = sp.verts[t];
      auto &vS = sp.verts[t2];
      // match original vertices to new positions: original vertex with leaf
      // set L corresponds to the canonical vertex with leaf set s(L)
      std::vector<int> vmap(vT.size(), -1); // T pre-order -> T2 pre-order
      for (int i = 0; i < (int)vT.size(); i++) {
        std::vector<int> img;
        for (int l : vT[i].lset) img.push_back(s[l - 1]);
        std::sort(img.begin(), img.end());
        for (int k2 = 0; k2 < (int)vS.size(); k2++)
          if (vS[k2].lset == img) vmap[i] = k2;
        assert(vmap[i] >= 0);
      }
      // Det sign: permutation of the canonical Ed orders
      auto &edT = sp.edorder[t];
      auto &edS = sp.edorder[t2];
      std::vector<int> erho(edT.size());
      for (int i = 0; i < (int)edT.size(); i++) {
        const Tree &sub = subtree_at(sp.trees[t], edT[i].path);
        std::vector<int> img;
        for (int l : sub.leaf_set()) img.push_back(s[l - 1]);
        std::sort(img.begin(), img.end());
        erho[i] = edge_pos(sp.trees[t2], edS, img, edT[i].internal);
      }
      int dsign = perm_parity_sign(erho);
      // factor reorder Koszul sign
      std::vector<int> rho(vT.size());
      for (int i = 0; i < (int)vT.size(); i++) rho[i] = vmap[i];
      int ks = koszul_sign(sm.fpar, rho);
      // target summand
      std::vector<int> dsS(vS.size());
      for (int i = 0; i < (int)vT.size(); i++) dsS[vmap[i]] = sm.dslots[i];
      int sj = sp.find(t2, dsS);
      assert(sj >= 0);
      const Summand &sm2 = sp.summands[sj];
      assert(sm2.tdeg == sm.tdeg);
      // per-vertex dual action matrices
      std::vector<Mat> fmat(vT.size());
      for (int i = 0; i < (int)vT.size(); i++) {
        const GInfo &gi = infos[vmap[i]];
        assert(gi.arity == vT[i].arity);
        bool id = true;
        for (int a = 0; a < gi.arity; a++) id = id && gi.tau[a] == a + 1;
        const DgPiece &p = q.pieces.at(vT[i].arity);
        if (id) {
          fmat[i] = Mat::identity(p.dims[sm.dslots[i]]);
        } else {
          // dual action: (A_{tau^{-1}})^T
          std::vector<int> inv(gi.arity);
          for (int a = 0; a < gi.arity; a++) inv[gi.tau[a] - 1] = a + 1;
          fmat[i] = p.action(inv, sm.dslots[i]).transpose();
        }
      }
      Rat base(dsign * ks);
      std::vector<int> dig(sm.fdims.size(), 0);
      do {
        int src = sp.gindex(si, dig);
        // expand product of per-factor matrix columns
        std::function<void(size_t, Rat, std::vector<int> &)> recm =
            [&](size_t i, Rat coeff, std::vector<int> &tdig) {
              if (i == vT.size()) {
                mats[sm.degslot].add_to(sp.gindex(sj, tdig), src, coeff);
                return;
              }
              const Mat &fm = fmat[i];
              for (int a = 0; a < fm.rows; a++) {
                Rat cv = fm.get(a, dig[i]);
                if (cv == 0) continue;
                tdig[vmap[i]] = a;
                recm(i + 1, coeff * cv, tdig);
              }
            };
        std::vector<int> tdig(vS.size(), 0);
        recm(0, base, tdig);
      } while (next_digits(dig, sm.fdims));
    }
    return mats;
  };

  for (int n = 2; n <= N; n++) {
    DgPiece &piece = out.pieces[n];
    piece.sw.assign(n - 1, {});
    for (int i = 1; i < n; i++) {
      std::vector<int> s(n);
      for (int j = 0; j < n; j++) s[j] = j + 1;
      std::swap(s[i - 1], s[i]);
      piece.sw[i - 1] = build_action(n, s);
    }
  }

  // pass 3: compositions by grafting of tree summands
  out.has_comp = true;
  for (int m = 2; m <= N; m++)
    for (int k = 2; m + k - 1 <= N; k++)
      for (int i = 1; i <= m; i++) {
        SpaceN &sa = spaces[m];
        SpaceN &sb = spaces[k];
        SpaceN &st = spaces[m + k - 1];
        DgPiece &pa = out.pieces[m];
        DgPiece &pb = out.pieces[k];
        DgPiece &pt = out.pieces[m + k - 1];
        std::map<std::string, int> tree_ix;
        for (int t = 0; t < (int)st.trees.size(); t++)
          tree_ix[st.trees[t].str()] = t;
        auto &cm = out.comp[{m, i, k}];
        for (int da = 0; da < (int)pa.dims.size(); da++)
          for (int db = 0; db < (int)pb.dims.size(); db++) {
            if (pa.dims[da] == 0 || pb.dims[db] == 0) continue;
            int tdeg = pa.degrees[da] + pb.degrees[db];
            int tslot = pt.slot(tdeg);
            if (tslot < 0) continue;
            cm[{da, db}] = Mat(pt.dims[tslot], pa.dims[da] * pb.dims[db]);
          }
        for (int ia = 0; ia < (int)sa.summands.size(); ia++) {
          const Summand &A = sa.summands[ia];
          if (A.dim == 0) continue;
          for (int ib = 0; ib < (int)sb.summands.size(); ib++) {
            const Summand &B = sb.summands[ib];
            if (B.dim == 0) continue;
            Tree T = compose(sb.trees[B.tree], i, sa.trees[A.tree]);
            int tt = tree_ix.at(T.str());
            auto &vA = sa.verts[A.tree];
            auto &vB = sb.verts[B.tree];
            auto &vT = st.verts[tt];
            // vertex maps via transformed leaf sets
            auto mapls_a = [&](const std::vector<int> &ls) {
              // leaf i of a becomes the whole block {i..i+k-1}
              std::vector<int> r2;
              for (int l : ls) {
                if (l < i) r2.push_back(l);
                else if (l > i) r2.push_back(l + k - 1);
                else
                  for (int x = i; x <= i + k - 1; x++) r2.push_back(x);
              }
              std::sort(r2.begin(), r2.end());
              return r2;
            };
            auto mapls_b = [&](const std::vector<int> &ls) {
              std::vector<int> r;
              for (int l : ls) r.push_back(l + i - 1);
              return r;
            };
            int nA = (int)vA.size(), nB = (int)vB.size();
            std::vector<int> vmap(nA + nB, -1); // source order: a then b
            for (int x = 0; x < nA; x++) {
              auto img = mapls_a(vA[x].lset);
              for (int k2 = 0; k2 < (int)vT.size(); k2++)
                if (vT[k2].lset == img) vmap[x] = k2;
            }
            for (int x = 0; x < nB; x++) {
              auto img = mapls_b(vB[x].lset);
              for (int k2 = 0; k2 < (int)vT.size(); k2++)
                if (vT[k2].lset == img) vmap[nA + x] = k2;
            }
            for (int x = 0; x < nA + nB; x++) assert(vmap[x] >= 0);
            // degrees and target summand
            std::vector<int> dsT(vT.size());
            std::vector<int> fpar(nA + nB);
            for (int x = 0; x < nA; x++) {
              dsT[vmap[x]] = A.dslots[x];
              fpar[x] = A.fpar[x];
            }
            for (int x = 0; x < nB; x++) {
              dsT[vmap[nA + x]] = B.dslots[x];
              fpar[nA + x] = B.fpar[x];
            }
            int sj = st.find(tt, dsT);
            assert(sj >= 0);
            const Summand &SM = st.summands[sj];
            // Koszul: Det_b over the a-factors, then the interleave
            int cb_par = ((B.cdeg % 2) + 2) % 2;
            int apar = 0;
            for (int x = 0; x < nA; x++) apar ^= A.fpar[x];
            int sgn = (cb_par && apar) ? -1 : 1;
            sgn *= koszul_sign(fpar, vmap);
            // Det merge sign: concatenated Ed(a), Ed(b) vs canonical Ed(T)
            auto &edA = sa.edorder[A.tree];
            auto &edB = sb.edorder[B.tree];
            auto &edT = st.edorder[tt];
            std::vector<int> erho;
            for (auto &e : edA) {
              const Tree &sub = subtree_at(sa.trees[A.tree], e.path);
              auto ls = sub.leaf_set();
              bool internal = e.internal;
              if (!internal && ls.size() == 1 && ls[0] == i) {
                // leaf i of a becomes the connecting internal edge
                std::vector<int> block;
                for (int x = i; x <= i + k - 1; x++) block.push_back(x);
                erho.push_back(edge_pos(st.trees[tt], edT, block, true));
              } else {
                erho.push_back(edge_pos(st.trees[tt], edT, mapls_a(ls), internal));
              }
            }
            for (auto &e : edB) {
              const Tree &sub = subtree_at(sb.trees[B.tree], e.path);
              erho.push_back(
                  edge_pos(st.trees[tt], edT, mapls_b(sub.leaf_set()), e.internal));
            }
            sgn *= perm_parity_sign(erho);
            // emit entries: pure digit shuffle
            int da = A.degslot, db = B.degslot;
            Mat &cmat = cm[{da, db}];
            std::vector<int> diga(A.fdims.size(), 0);
            do {
              std::vector<int> digb(B.fdims.size(), 0);
              do {
                std::vector<int> digT(vT.size(), 0);
                for (int x = 0; x < nA; x++) digT[vmap[x]] = diga[x];
                for (int x = 0; x < nB; x++) digT[vmap[nA + x]] = digb[x];
                int col = sa.gindex(ia, diga) * pb.dims[db] + sb.gindex(ib, digb);
                cmat.add_to(st.gindex(sj, digT), col, Rat(sgn));
              } while (next_digits(digb, B.fdims));
            } while (next_digits(diga, A.fdims));
          }
        }
      }
  return out;
}

FormalMap euler_series(const DgOperad &dg, int N) {
  assert(N <= dg.N);
  return map_from_dims(1, N, [&](int, const std::vector<int> &a) -> Rat {
    int n = a[0];
    if (n == 1) return Rat(1);
    const DgPiece &p = dg.pieces.at(n);
    Rat e(0);
    for (size_t d = 0; d < p.dims.size(); d++)
      e += Rat(((p.degrees[d] % 2) + 2) % 2 ? -p.dims[d] : p.dims[d]);
    return e;
  });
}

HomologyReport homology_report(const DgOperad &dg) {
  HomologyReport r;
  r.N = dg.N;
  r.concentrated = true;
  for (int n = 2; n <= dg.N; n++) {
    const DgPiece &p = dg.pieces.at(n);
    auto h = p.complex().homology();
    r.degrees.push_back(p.degrees);
    r.dims.push_back(p.dims);
    r.homology.push_back(h);
    int s0 = p.slot(0);
    r.h_top.push_back(s0 >= 0 ? h[s0] : 0);
    for (size_t d = 0; d < h.size(); d++)
      if ((int)d != s0 && h[d] != 0) r.concentrated = false;
  }
  return r;
}

HomologyReport koszul_certificate(const QuadraticPresentation &p, int N) {
  if (N < 3) throw std::runtime_error("koszul_certificate: N >= 3 required");
  auto op = ExpandedOperad::expand(p, N);
  DgOperad dg = cobar_dual(from_expanded(op), N);
  HomologyReport r = homology_report(dg);
  auto opd = ExpandedOperad::expand(dual(p), N);
  for (int n = 2; n <= N; n++)
    assert(r.h_top[n - 2] == opd.dim(n) && "H^0 must match the dual operad");
  return r;
}

HomologyReport double_cobar_report(const QuadraticPresentation &p, int N) {
  if (N > 4) throw std::runtime_error("double cobar bounded at arity 4");
  auto op = ExpandedOperad::expand(p, N);
  DgOperad d1 = cobar_dual(from_expanded(op), N, true);
  DgOperad d2 = cobar_dual(d1, N);
  return homology_report(d2);
}

} // namespace quadop
