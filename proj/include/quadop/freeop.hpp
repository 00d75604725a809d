#pragma once
// Free operad on binary generators: arity-n spaces with explicit bases
// indexed by decorated binary trees, symmetric-group actions, grafting,
// and relation-substitution spans at 1-ternary trees.
#include "quadop/exactlin.hpp"
#include "quadop/trees.hpp"
#include <array>
#include <map>

namespace quadop {

struct GeneratorSpace {
  int colors = 1;
  std::vector<std::vector<std::vector<int>>> dims;  // [c][c1][c2]
  std::vector<std::vector<std::vector<Mat>>> sigma; // block (c1,c2->c) -> (c2,c1->c)

  static GeneratorSpace single(int d, const Mat &sig);
  int dim(int c, int c1, int c2) const { return dims[c][c1][c2]; }
  const Mat &sig(int c, int c1, int c2) const { return sigma[c][c1][c2]; }
  int dim2() const; // total dimension of E across blocks
  void validate() const;
};

struct FreeSpace {
  GeneratorSpace E;
  int n = 0;
  std::vector<int> leaf_colors; // size n
  int out_color = 0;
  std::vector<Tree> trees; // colored binary trees with nonzero decoration space
  std::vector<int> offset;
  std::vector<std::vector<std::array<int, 3>>> vsigs; // pre-order internal vertices: {c, c1, c2}
  std::vector<std::vector<int>> vdims;
  int dim = 0;
  std::map<std::string, int> tree_lookup;

  static FreeSpace build(const GeneratorSpace &e, int n,
                         std::vector<int> leaf_colors = {}, int out_color = 0);
  int tree_index(const Tree &t) const;
  int index(int ti, const std::vector<int> &dec) const;
  std::pair<int, std::vector<int>> unindex(int idx) const;
  Mat action(const std::vector<int> &s) const; // s[i-1] = image of label i
  Mat transposition(int i) const;              // adjacent swap (i, i+1)
  std::vector<Mat> transpositions() const;     // all adjacent swaps
};

// Leaf relabelling i -> s[i-1] as a matrix src -> dst; dst must carry the
// permuted leaf colors (dst.leaf_colors[s[i-1]-1] == src.leaf_colors[i-1]).
// src.action(s) is the special case dst == src.
Mat relabel_matrix(const FreeSpace &src, const std::vector<int> &s,
                   const FreeSpace &dst);

std::vector<std::vector<int>> all_permutations(int n);
std::vector<int> perm_mul(const std::vector<int> &s, const std::vector<int> &t); // s after t
int perm_sign(const std::vector<int> &s);

// Matrix of a ∘_slot b (b plugged into input `slot` of a), as a map
// F(m) ⊗ F(k) -> F(m+k-1); column index = ia * fb.dim + ib.
Mat graft_matrix(const FreeSpace &fa, int slot, const FreeSpace &fb,
                 const FreeSpace &ftarget);

std::vector<Tree> one_ternary_trees(int n, int num_colors = 1,
                                    const std::vector<int> &leaf_colors = {},
                                    int out_color = 0);

// Relations at arity 3, keyed by (c1, c2, c3, out); single color uses {0,0,0,0}.
using RelationSet = std::map<std::array<int, 4>, Subspace>;

enum class TernaryMode {
  Span,        // substitution image of R at v (used for the quotient P(n))
  Preimage,    // full preimage of the span under projection to the three
               // participating summands (used for the intersection formula)
  PreimageDet, // like Preimage but with the Det-line sign twist per summand
};

Subspace ternary_relation_space(const GeneratorSpace &e, const RelationSet &rel,
                                const Tree &s_tree, const FreeSpace &fn,
                                TernaryMode mode);

// Rows whose common kernel is the Preimage(-Det) space at s_tree; stacking
// these over all 1-ternary trees and taking one kernel computes the
// intersection cheaply.
Mat ternary_condition_rows(const GeneratorSpace &e, const RelationSet &rel,
                           const Tree &s_tree, const FreeSpace &fn,
                           bool det_signs);

// ed(T)-position sign of the internal edge created by splitting a ternary
// vertex; with this convention the n=3 intersection is the relation space
// itself (all signs +1). Exposed for the signed embeddings downstream.
int split_edge_sign(const Tree &binary_tree, const std::vector<int> &new_vertex_path);

} // namespace quadop
