#pragma once

// Integer kernel lattices via unimodular column reduction.

#include <vector>

#include "qdesign/numeric.hpp"

namespace qdesign {

struct KernelBasis {
  // Columns generate {x in Z^c : rows * x = 0} exactly (saturated).
  IntegerMatrix vectors;

  Eigen::Index rank() const { return vectors.cols(); }
  Eigen::Index dimension() const { return vectors.rows(); }
  bool empty() const { return vectors.cols() == 0; }
  IntegerVector vector(Eigen::Index i) const { return vectors.col(i); }
};

// Result of reducing A by unimodular column operations: A * transform = reduced,
// where reduced is in column echelon form and its last (c - rank) columns vanish.
struct ColumnHermiteForm {
  IntegerMatrix reduced;
  IntegerMatrix transform;
  Eigen::Index rank = 0;
};

ColumnHermiteForm column_hermite_form(const IntegerMatrix& a);

// Saturated basis of the integer kernel of `rows`; empty when the kernel is {0}.
KernelBasis integer_kernel(const IntegerMatrix& rows);

// Row echelon (Hermite) form of a lattice basis given as the rows of `basis`:
// pivots strictly increase, pivot entries are positive, entries above a pivot
// are reduced into [0, pivot).  Spans the same lattice.
struct RowEchelonBasis {
  IntegerMatrix rows;
  std::vector<Eigen::Index> pivots;
};

RowEchelonBasis row_hermite_form(const IntegerMatrix& basis);

// Rank over Q.
Eigen::Index rational_rank(const IntegerMatrix& a);

// LLL-reduces lattice basis columns (delta = 3/4) under the inner product
// <x, y> = sum_l w_l^2 x_l y_l, exactly over Q.  Same lattice.
IntegerMatrix lll_reduce(const IntegerMatrix& basis_columns, const IntegerVector& weights);

// True iff x is an integer combination of the basis columns.
bool in_lattice(const KernelBasis& basis, const IntegerVector& x);

}  // namespace qdesign
