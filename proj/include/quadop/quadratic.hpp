#pragma once
// Quadratic presentations, arity-by-arity expansion, partial compositions,
// and quadratic duality.
#include "quadop/freeop.hpp"
#include <string>

namespace quadop {

struct QuadraticPresentation {
  std::string name;
  GeneratorSpace E;
  RelationSet R; // per colored signature (c1,c2,c3,out); missing key = zero

  void validate() const; // S3-stability across colored signatures
};

// Presets: "com", "lie", "as", "z2" (two-color group algebra of Z/2).
QuadraticPresentation preset(const std::string &name);

GeneratorSpace dual_generators(const GeneratorSpace &e); // sigma -> -sigma^T

// Diagonal pairing between F(E)(3) and F(E^dual)(3) on the same leaf data:
// natural dual pairing of decorations, tree constant -1 on inner pair {1,2}
// and +1 on {1,3}, {2,3}.
Mat pairing3(const FreeSpace &f, const FreeSpace &fdual);

QuadraticPresentation dual(const QuadraticPresentation &p);

struct OperadComponent {
  FreeSpace F;      // ambient free space
  Subspace relspan; // sum of the substitution spans
  Quotient q;       // projection F -> P
  int dim() const { return q.dim; }
};

struct ExpandedOperad {
  QuadraticPresentation pres;
  int N = 0;
  std::map<std::string, OperadComponent> comps;

  static std::string key(int n, const std::vector<int> &lc, int out);
  static ExpandedOperad expand(const QuadraticPresentation &p, int N);
  const OperadComponent &comp(int n, const std::vector<int> &lc = {},
                              int out = 0) const;
  int dim(int n, const std::vector<int> &lc = {}, int out = 0) const;
  std::vector<int> dims(int out = 0) const; // single color, n = 2..N
  // induced action on the quotient (color-preserving permutations)
  Mat action(int n, const std::vector<int> &s) const;
  // induced a o_slot b : P(m) (x) P(k) -> P(m+k-1) (b into slot of a),
  // column index ia * dim(k) + ib; single color
  Mat compose_matrix(int m, int slot, int k) const;
};

std::vector<Rat> compose_in_operad(const ExpandedOperad &op, int slot, int m,
                                   const std::vector<Rat> &a, int k,
                                   const std::vector<Rat> &b);

// Intersection over all 1-ternary n-trees of the (det-signed) preimages of
// the relation spans, inside F(E)(n); dim equals dim P^!(n).
Subspace dual_space_via_intersection(const QuadraticPresentation &p, int n,
                                     const std::vector<int> &lc = {},
                                     int out = 0);

} // namespace quadop
