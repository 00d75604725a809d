#pragma once
// Truncated formal maps (exponential coefficients), composition, reversion by
// the signed tree formula with a fixed-point oracle, and the series duality
// identity.
#include "quadop/quadratic.hpp"
#include <functional>

namespace quadop {

// coefficients p^{(i)}(a): Scalar per output color i and multidegree a,
// stored in exponential normalization (coefficient of prod x_j^{a_j}/a_j!)
struct FormalMap {
  int r = 1, N = 1;
  std::map<std::vector<int>, std::vector<Rat>> c; // multidegree -> per color

  static FormalMap identity(int r, int N);
  Rat get(int i, const std::vector<int> &a) const;
  void set(int i, const std::vector<int> &a, const Rat &v);
  void validate() const; // identity linear term, degrees within 1..N
  bool operator==(const FormalMap &o) const;
  std::string str() const;
};

FormalMap map_from_dims(int r, int N,
                        const std::function<Rat(int, const std::vector<int> &)> &dims);
FormalMap from_operad(const ExpandedOperad &op, int N);

FormalMap compose(const FormalMap &g, const FormalMap &h); // g(h(x))
FormalMap neg_conj(const FormalMap &g);                    // -g(-x)

// Compositional inverse via the signed tree sum: coefficient of the inverse
// at multidegree a is the sum over reduced colored trees with leaf type a of
// (-1)^(vertex count) times the product of g-values at the vertices.
FormalMap revert_tree(const FormalMap &g);
// Independent oracle: fixed-point iteration h <- h + (id - g o h).
FormalMap revert_newton(const FormalMap &g);

// g_{P^!}(-g_P(-x)) == x up to order N, with dims from expansion to arity N.
bool duality_identity_check(const QuadraticPresentation &p, int N);

} // namespace quadop
