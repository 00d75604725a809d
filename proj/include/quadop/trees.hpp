#pragma once
// Reduced, leaf-labelled, colored rooted trees in canonical form (children
// sorted by minimal leaf label), their contraction order, compositions, and
// the determinant-line sign conventions.
#include <string>
#include <vector>

namespace quadop {

struct Tree {
  bool leaf = false;
  int label = 0;               // leaves: 1..n
  int color = 0;               // color of the output edge (leaf edge for leaves)
  std::vector<Tree> children;  // internal: >= 2, sorted by min leaf

  static Tree make_leaf(int label, int color = 0);
  static Tree make_node(std::vector<Tree> ch, int color = 0);

  int min_leaf() const;
  int n_leaves() const;
  int num_internal_edges() const;           // |T|
  std::vector<int> leaf_set() const;        // sorted
  bool operator==(const Tree &o) const;
  std::string str() const;                  // e.g. (1,(2,3)); :c suffixes if colored
};

Tree star(int n, const std::vector<int> &leaf_colors = {}, int out_color = 0);

// An edge is named by the path (child indices from the root) to the node
// hanging below it. internal == the node is an internal vertex.
struct EdgeRef {
  std::vector<int> path;
  bool internal = false;
  bool operator==(const EdgeRef &o) const {
    return path == o.path && internal == o.internal;
  }
};

const Tree &subtree_at(const Tree &t, const std::vector<int> &path);

// Canonical edge order for det lines: sort by (min leaf below, leaf-set lex).
// include_leaves = false gives ed(T), true gives Ed(T) (all but the output).
std::vector<EdgeRef> canonical_edge_order(const Tree &t, bool include_leaves);

// Contract internal edge e. sign = (-1)^(position of e in the canonical edge
// order), i.e. the det-line transport coefficient for l_e; computed on ed(T)
// or Ed(T) according to det_with_leaves.
std::pair<Tree, int> contract(const Tree &t, const EdgeRef &e,
                              bool det_with_leaves);

// T1 composed into input slot i of T2 (leaves relabelled, canonical).
Tree compose(const Tree &t1, int i, const Tree &t2);

// true iff t2 is reachable from t by a sequence of contractions
// (t refines t2; the star is the minimum, binary trees are maximal).
bool leq(const Tree &t, const Tree &t2);

// One representative per isomorphism class, canonical form, deterministic
// order. leaf_colors empty means single color. out_color fixes the root edge
// color; internal edges range over all num_colors colors.
std::vector<Tree> enumerate_trees(int n, bool binary_only, int num_colors = 1,
                                  const std::vector<int> &leaf_colors = {},
                                  int out_color = 0);

// partitions of {0..n-1} into >= 2 (or exactly 2 if pairs_only) blocks,
// deterministic order; exposed for reuse by other modules
std::vector<std::vector<std::vector<int>>> set_partitions(int n, bool pairs_only);

} // namespace quadop
