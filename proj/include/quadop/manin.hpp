#pragma once
// White and black products of quadratic operads on one color, the internal
// hom, and the diagonal splitting of the free operad on a tensor-product
// generator space that defines them.
#include "quadop/quadratic.hpp"

namespace quadop {

// The arity-3 component of the free operad on E_P (x) E_Q splits tree by
// tree into (pair of P-decorations) (x) (pair of Q-decorations); delta3 is
// the resulting embedding F(E_P (x) E_Q)(3) -> F(E_P)(3) (x) F(E_Q)(3)
// (diagonal in the tree index), row index iP * dim F_Q(3) + iQ.
Mat delta3(const FreeSpace &fu, const FreeSpace &fp, const FreeSpace &fq);

// White product: generators E_P (x) E_Q with the product involution;
// relations the kernel of F(E_P (x) E_Q)(3) -> P(3) (x) Q(3) through delta3,
// i.e. the preimage of R_P (x) F_Q(3) + F_P(3) (x) R_Q.
QuadraticPresentation circ(const QuadraticPresentation &p,
                           const QuadraticPresentation &q);

// Black product: generators E_P (x) E_Q with the sign-twisted involution
// -(sigma_P (x) sigma_Q); relations the image of R_P (x) R_Q under the
// pairing-adjoint of delta3 (tree-diagonal product with the arity-3 pairing
// sign). Satisfies dual(circ(p, q)) = bullet(dual(p), dual(q)).
QuadraticPresentation bullet(const QuadraticPresentation &p,
                             const QuadraticPresentation &q);

// Internal hom: generators Hom(E_P, E_Q) = E_P^* (x) E_Q; relations the
// minimal subspace J such that the coevaluation E_Q -> Hom (x) E_P extends
// to an operad morphism q -> circ(hom, p): the span of the P(3)-slices of
// the projected coevaluation image of R_Q. Isomorphic to bullet(dual(p), q).
QuadraticPresentation hom_operad(const QuadraticPresentation &p,
                                 const QuadraticPresentation &q);

// Directness of the sum R_P (x) F_Q(3) + F_P(3) (x) R_Q defining the white
// product (diagnostic only; the sum need not be direct).
struct CircDirectness {
  int dim1 = 0, dim2 = 0, dimsum = 0;
  bool direct = false;
};
CircDirectness circ_directness(const QuadraticPresentation &p,
                               const QuadraticPresentation &q);

// Factor-swap relabelling F(E_P (x) E_Q)(3) -> F(E_Q (x) E_P)(3); conjugates
// circ(p, q) into circ(q, p) and likewise for bullet.
Mat product_swap3(const QuadraticPresentation &p,
                  const QuadraticPresentation &q);

} // namespace quadop
