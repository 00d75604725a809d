#pragma once
// Exact rational linear algebra: sparse-capable matrices, RREF-canonical
// subspaces, coinvariants, chain complexes. Everything is over Q (GMP).
#include <gmpxx.h>
#include <cassert>
#include <map>
#include <string>
#include <vector>

namespace quadop {

using Rat = mpq_class;

std::string rat_str(const Rat &q);
Rat parse_rat(const std::string &s); // "p/q" or "p"

// Sparse row-major matrix. Rows are sorted (col, value) lists with no zeros.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, Rat>>> data;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), data(r) {}
  static Mat identity(int n);
  static Mat zero(int r, int c) { return Mat(r, c); }
  static Mat from_dense(const std::vector<std::vector<Rat>> &d);

  Rat get(int r, int c) const;
  void set(int r, int c, const Rat &v); // v may be 0 (erases)
  void add_to(int r, int c, const Rat &v);
  int nnz() const;
  bool is_zero() const;

  Mat mul(const Mat &o) const;
  Mat add(const Mat &o) const;
  Mat sub(const Mat &o) const;
  Mat scaled(const Rat &s) const;
  Mat transpose() const;
  Mat vcat(const Mat &o) const;   // stack below
  Mat hcat(const Mat &o) const;   // stack right
  Mat kron(const Mat &o) const;   // Kronecker product
  std::vector<Rat> apply(const std::vector<Rat> &v) const; // this * v (column)
  bool operator==(const Mat &o) const;
};

// In-place reduced row echelon form; returns pivot columns. Zero rows dropped.
std::vector<int> rref(Mat &m);
int rank(const Mat &m);

// Row-span subspace in canonical (RREF) form.
struct Subspace {
  int ambient = 0;
  Mat basis; // RREF, rows = basis vectors

  Subspace() = default;
  explicit Subspace(int amb) : ambient(amb), basis(0, amb) {}
  static Subspace span(const Mat &rows); // canonicalizes
  static Subspace full(int amb) { return span(Mat::identity(amb)); }
  int dim() const { return basis.rows; }
  bool contains(const std::vector<Rat> &v) const;
  bool contains(const Subspace &o) const;
  bool operator==(const Subspace &o) const {
    return ambient == o.ambient && basis == o.basis;
  }
  // Coordinates of v in this subspace's basis (asserts membership).
  std::vector<Rat> coords(const std::vector<Rat> &v) const;
};

Subspace sum(const Subspace &a, const Subspace &b);
Subspace intersection(const Subspace &a, const Subspace &b);
// {y : x^T * pairing * y = 0 for all x in a}; pairing must be invertible.
Subspace annihilator(const Subspace &a, const Mat &pairing);
Subspace kernel(const Mat &m);       // right kernel: {v : m v = 0}
Subspace row_space(const Mat &m);

// Quotient of k^ambient by the row span of `relations`. proj is dim x ambient
// (coordinates on the free columns of the RREF); section() embeds the
// quotient back along the free columns, proj * section = identity.
struct Quotient {
  Mat proj;
  int dim = 0;
  std::vector<int> freecols;
  Mat section() const;
};
Quotient quotient_by(Mat relations, int ambient);

// Quotient of k^dim by span{a*v - v}. Returns (projection, quotient_dim).
// The projection sends v to coordinates on the non-pivot ("free") columns of
// the RREF of the relation span.
std::pair<Mat, int> coinvariants(int dim, const std::vector<Mat> &action);
// Same but for the quotient of a subspace V (group must preserve V).
std::pair<Mat, int> coinvariants_sub(const Subspace &v,
                                     const std::vector<Mat> &action);

struct ChainComplex {
  // Spaces stored in the direction the differential flows:
  // diffs[i] : space i -> space i+1, shape dims[i+1] x dims[i].
  std::vector<int> degrees;
  std::vector<int> dims;
  std::vector<Mat> diffs;
  bool cohomological = true; // degrees ascending, d raises degree

  void validate() const; // shapes + d∘d = 0 (hard assertion)
  std::vector<int> homology() const;
  long euler() const;
};

} // namespace quadop
