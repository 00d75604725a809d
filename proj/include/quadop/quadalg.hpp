#pragma once
// Quadratic algebras over a quadratic operad (plain and super), their
// quadratic duals, the quadratic presentation of the universal enveloping
// algebra, classical associative quadratic duality, and the duality check
// relating the two.
#include "quadop/quadratic.hpp"

namespace quadop {

// A(V, S) over a single-color host presentation: V of dimension dv, S a
// subspace of the Sigma_2-coinvariants of E (x) V (x) V under
// e (x) v1 (x) v2 -> +-(sigma e) (x) v2 (x) v1 (minus for super).
struct QuadraticAlgebraPresentation {
  QuadraticPresentation host;
  int dv = 0;
  bool super = false;
  Quotient coin; // of E (x) V (x) V, index (e * dv + v1) * dv + v2
  Subspace S;    // in coin coordinates
};

// builds the coinvariant quotient and checks S fits inside it
QuadraticAlgebraPresentation
make_quad_algebra(const QuadraticPresentation &host, int dv, bool super,
                  const Subspace &s);

// nondegenerate pairing between the coinvariant spaces of an algebra and of
// its dual data (the flagged actions are mutually transposed)
Mat coin_pairing(const QuadraticAlgebraPresentation &a,
                 const QuadraticAlgebraPresentation &ad);

// host dualized, parity flipped, relations the annihilator of S
QuadraticAlgebraPresentation
dual_algebra(const QuadraticAlgebraPresentation &a);

// an ordinary quadratic associative presentation: dw generators, relations
// inside W (x) W (index g1 * dw + g2)
struct AssocQuadraticPresentation {
  int dw = 0;
  Subspace rel;
};

// quadratic presentation of U_P(A) (or of the super enveloping when the
// input is super): generators E (x) V, relations the intersection of the
// product block with W + E (x) S inside the coinvariant space of
// F(E)(3) (x) V (x) V
AssocQuadraticPresentation
enveloping_presentation(const QuadraticAlgebraPresentation &a);

// Priddy dual: same generator count, annihilator relations
AssocQuadraticPresentation assoc_dual(const AssocQuadraticPresentation &w);

// (U_P(A))^! == U^-_{P^!}(A^!) as relation subspaces under the index-wise
// identification (E (x) V)^* = E^* (x) V^*
bool check_enveloping_duality(const QuadraticAlgebraPresentation &a);

} // namespace quadop
