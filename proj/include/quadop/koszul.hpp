#pragma once
// Composition of collections as coinvariants over ordered surjections, the
// arity-n Koszul complexes with their splitting differential, exactness
// reports, and the cross-check against the multidegree (1,...,1) part of
// free-algebra chain complexes.
#include "quadop/genseries.hpp"
#include <functional>

namespace quadop {

// A single-color collection: dimensions and symmetric-group actions per
// arity. dim(1) must be 1 (unit), with trivial action.
struct Collection {
  int N = 0;
  std::function<int(int)> dim;
  std::function<Mat(int, const std::vector<int> &)> action;
};

Collection plain_collection(const ExpandedOperad &op);
// (P^!)^vee: underlying spaces of the expanded dual, action transposed-inverse
// and twisted by sign
Collection dual_check_collection(const ExpandedOperad &opd);

// P(Q)(n) = sum over m of Sigma_m-coinvariants of the ordered-surjection sum
// of P(m) (x) prod_j Q(B_j); block data and projections retained per m.
struct CompositionSpace {
  int n = 0;
  // parts[m-1][f] = ordered partition (B_1..B_m) of [n], 1-based leaves
  std::vector<std::vector<std::vector<std::vector<int>>>> parts;
  std::vector<std::vector<int>> offsets; // [m-1][f] into the ordered space
  std::vector<int> odims;                // ordered dims per m
  std::vector<Quotient> coin;            // coinvariant quotient per m
  std::vector<int> dims;                 // coinvariant dims per m (1..n)

  int find_part(int m, const std::vector<std::vector<int>> &blocks) const;
};

CompositionSpace compose_collections(const ExpandedOperad &p,
                                     const Collection &q, int n);

// general core: outer(m) (x) prod_j inner(B_j). odd_slots puts the block
// slots on an orientation line (sign -1 relations and actions), as the
// Koszul complexes need; even slots give plain coinvariants.
CompositionSpace compose_collections(const Collection &outer,
                                     const Collection &inner, int n,
                                     bool odd_slots);

// leaf relabelling i -> s[i-1] on the coinvariant space at block count m
Mat composition_action(const CompositionSpace &cs, const ExpandedOperad &p,
                       const Collection &q, int m, const std::vector<int> &s);
Mat composition_action(const CompositionSpace &cs, const Collection &outer,
                       const Collection &inner, int m,
                       const std::vector<int> &s, bool odd_slots);

// mu: P(C) (x) P(D) -> P(C u D) composing with the arity-2 basis element i
// at the top; columns indexed ic * dimD + id
Mat merge_matrix(const ExpandedOperad &op, const std::vector<int> &C,
                 const std::vector<int> &D, int i);

struct KoszulComplex {
  CompositionSpace space; // over P and (P^!)^vee
  ChainComplex cx;        // degrees m = 1..n, d : m -> m+1, d^2 = 0 asserted
};

KoszulComplex koszul_complex(const QuadraticPresentation &p, int n);

struct ExactnessReport {
  int N = 0;
  std::vector<std::vector<int>> dims;     // per n = 2..N, by m
  std::vector<std::vector<int>> homology; // per n = 2..N
  std::vector<bool> exact;                // per n
  bool all_exact = false;
};

ExactnessReport is_exact(const QuadraticPresentation &p, int N);

// The (1,...,1)-multihomogeneous part of the free-algebra chain complex on n
// generators matches the n-th Koszul complex of the dual presentation (its
// own for a self-dual one), read in the opposite degree order, in dims and
// differential ranks.
bool multidegree_crosscheck(const QuadraticPresentation &p, int n);

} // namespace quadop
