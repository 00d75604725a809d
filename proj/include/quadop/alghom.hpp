#pragma once
// Chain complexes of algebras over a quadratic operad, their homology, and
// the classical comparison complexes (bar-type for associative algebras,
// exterior-power for Lie algebras).
#include "quadop/koszul.hpp"

namespace quadop {

// A finite-dimensional algebra over a single-color presentation: one
// structure map per generator basis element, d x d^2, columns ia * d + ib.
struct PAlgebra {
  int d = 0;
  std::vector<Mat> mul;
};

PAlgebra zero_algebra(int d, int ngen);
PAlgebra as_algebra(const Mat &m);        // m and the reversed word m.swap
PAlgebra lie_algebra(const Mat &bracket); // antisymmetric single generator

// true iff the structure maps are sigma-compatible and every relation vector
// acts as zero on A^(x)3; throws on shape mismatch
bool validate_algebra(const QuadraticPresentation &p, const PAlgebra &a);

// evaluation of a free-space vector as a multilinear map A^(x)n -> A
Mat eval_free(const FreeSpace &f, const PAlgebra &a, const std::vector<Rat> &v);

// C_n = (A^(x)n (x) P!(n)^vee)_{Sigma_n} for n = 1..N, differential merging
// two tensor factors against the dual cocomposition. Stored top degree
// first: cx.diffs[i] maps degree N-i to degree N-i-1.
struct AlgChainComplex {
  int N = 0;
  std::vector<Quotient> coin; // per degree n = 1..N (ambient A^(x)n (x) Q(n))
  ChainComplex cx;
  std::vector<int> h() const; // homology dims by degree 1..N
};

AlgChainComplex chain_complex(const QuadraticPresentation &p, const PAlgebra &a,
                              int N);

// bar-type complex ... -> A(x)A(x)A -> A(x)A -> A with the alternating-sum
// multiplication differential; same storage layout
AlgChainComplex hochschild_oracle(const PAlgebra &a, int N);
// exterior powers Lambda^n A with the standard bracket differential
AlgChainComplex chevalley_eilenberg_oracle(const PAlgebra &a, int N);

// the identification A^(x)n -> C_n (tensor with the class of the left-comb
// identity word) under which chain_complex(as, a) equals the bar-type complex
// entrywise
Mat bar_identification(const AlgChainComplex &c, const PAlgebra &a, int n);

// multidegree (1,...,1) part of the complex of the free algebra on n
// generators; same storage layout as AlgChainComplex.cx (degrees n..1)
ChainComplex free_algebra_complex_multidegree(const QuadraticPresentation &p,
                                              int n);

} // namespace quadop
