#pragma once
// The dual dg-operad D(P) of a (possibly already dg) operad: determinant-line
// signs, homology tables, Koszulness certificates, and the double-cobar check.
#include "quadop/genseries.hpp"
#include <array>

namespace quadop {

// One arity of a dg collection: a cochain complex on consecutive degrees with
// a symmetric-group action per degree.
struct DgPiece {
  int n = 0;
  std::vector<int> degrees; // consecutive, ascending
  std::vector<int> dims;
  std::vector<Mat> diff;               // diff[i]: degrees[i] -> degrees[i+1]
  std::vector<std::vector<Mat>> sw;    // sw[i-1][d]: transposition (i,i+1)

  int slot(int deg) const; // -1 if outside the range
  int dim_at(int deg) const;
  Mat action(const std::vector<int> &s, int dslot) const; // via adjacent swaps
  ChainComplex complex() const;
};

// dg-operad on arities 2..N (unit arity k implicit), with partial-composition
// chain maps stored per degree-slot pair.
struct DgOperad {
  int N = 0;
  std::map<int, DgPiece> pieces;
  bool has_comp = false;
  // key {m, slot, k} -> per (da_slot, db_slot) the matrix of a o_slot b,
  // column index ia * dim_b + ib, landing in degree da+db
  std::map<std::array<int, 3>, std::map<std::array<int, 2>, Mat>> comp;

  const Mat &compose_at(int m, int i, int k, int da, int db) const;
  void validate() const; // d^2 = 0, Coxeter relations, chain-map compositions
};

DgOperad from_expanded(const ExpandedOperad &op); // degree 0, zero differential

// D(Q): per arity, the sum over reduced trees of Q(T)^* tensor Det(T), binary
// summands in cobar degree 0. with_structure additionally builds the actions
// and compositions of the result so it can be fed back in.
DgOperad cobar_dual(const DgOperad &q, int N, bool with_structure = false);

FormalMap euler_series(const DgOperad &dg, int N); // single color

struct HomologyReport {
  int N = 0;
  std::vector<std::vector<int>> degrees; // per n = 2..N
  std::vector<std::vector<int>> dims;
  std::vector<std::vector<int>> homology;
  std::vector<int> h_top; // homology in degree 0
  bool concentrated = false; // all homology in degree 0
};

HomologyReport homology_report(const DgOperad &dg);
// asserts dim H^0(D(P)(n)) = dim P^!(n)
HomologyReport koszul_certificate(const QuadraticPresentation &p, int N);
HomologyReport double_cobar_report(const QuadraticPresentation &p, int N);

} // namespace quadop
