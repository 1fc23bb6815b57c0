#include "qdesign/lattice.hpp"

#include <gmp.h>

#include <utility>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

// g = s*a + t*b with g = gcd(a, b) >= 0.
void extended_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  mpz_gcdext(g.backend().data(), s.backend().data(), t.backend().data(), a.backend().data(), b.backend().data());
}

// Replaces columns (p, q) by (s*p + t*q, -(b/g)*p + (a/g)*q); determinant 1.
template <typename Block>
void combine_columns(Block& m, Eigen::Index p, Eigen::Index q, const BigInt& s, const BigInt& t, const BigInt& u,
                     const BigInt& v) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    BigInt x = m(r, p);
    BigInt y = m(r, q);
    m(r, p) = s * x + t * y;
    m(r, q) = u * x + v * y;
  }
}

template <typename Block>
void combine_rows(Block& m, Eigen::Index p, Eigen::Index q, const BigInt& s, const BigInt& t, const BigInt& u,
                  const BigInt& v) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    BigInt x = m(p, c);
    BigInt y = m(q, c);
    m(p, c) = s * x + t * y;
    m(q, c) = u * x + v * y;
  }
}

}  // namespace

ColumnHermiteForm column_hermite_form(const IntegerMatrix& a) {
  ColumnHermiteForm form;
  form.reduced = a;
  form.transform = IntegerMatrix::Identity(a.cols(), a.cols());
  IntegerMatrix& h = form.reduced;
  IntegerMatrix& u = form.transform;

  Eigen::Index pivot = 0;
  for (Eigen::Index row = 0; row < h.rows() && pivot < h.cols(); ++row) {
    for (Eigen::Index col = pivot + 1; col < h.cols(); ++col) {
      if (h(row, col) == 0) continue;
      BigInt g, s, t;
      const BigInt x = h(row, pivot);
      const BigInt y = h(row, col);
      extended_gcd(x, y, g, s, t);
      const BigInt cu = -(y / g);
      const BigInt cv = x / g;
      combine_columns(h, pivot, col, s, t, cu, cv);
      combine_columns(u, pivot, col, s, t, cu, cv);
    }
    if (h(row, pivot) != 0) {
      if (h(row, pivot) < 0) {
        h.col(pivot) = -h.col(pivot);
        u.col(pivot) = -u.col(pivot);
      }
      ++pivot;
    }
  }
  form.rank = pivot;
  return form;
}

RowEchelonBasis row_hermite_form(const IntegerMatrix& basis) {
  IntegerMatrix h = basis;
  RowEchelonBasis out;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < h.cols() && row < h.rows(); ++col) {
    for (Eigen::Index r = row + 1; r < h.rows(); ++r) {
      if (h(r, col) == 0) continue;
      BigInt g, s, t;
      const BigInt x = h(row, col);
      const BigInt y = h(r, col);
      extended_gcd(x, y, g, s, t);
      combine_rows(h, row, r, s, t, BigInt(-(y / g)), BigInt(x / g));
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) h.row(row) = -h.row(row);
    for (Eigen::Index above = 0; above < row; ++above) {
      const BigInt q = floor_div(h(above, col), h(row, col));
      if (q != 0) h.row(above) -= q * h.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rows = h.topRows(row);
  return out;
}

KernelBasis integer_kernel(const IntegerMatrix& rows) {
  const ColumnHermiteForm form = column_hermite_form(rows);
  const Eigen::Index nullity = rows.cols() - form.rank;
  KernelBasis basis;
  if (nullity == 0) {
    basis.vectors.resize(rows.cols(), 0);
    return basis;
  }
  // Normalise the raw transform columns; same lattice, smaller entries.
  const IntegerMatrix raw = form.transform.rightCols(nullity);
  const RowEchelonBasis echelon = row_hermite_form(raw.transpose());
  basis.vectors = echelon.rows.transpose();
  if (!is_zero(IntegerVector((rows * basis.vectors).reshaped())))
    throw InvariantError("integer_kernel: basis does not annihilate the rows");
  return basis;
}

Eigen::Index rational_rank(const IntegerMatrix& a) {
  RationalMatrix m = a.cast<Rational>();
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < m.cols() && rank < m.rows(); ++col) {
    Eigen::Index pivot = rank;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.row(pivot).swap(m.row(rank));
    for (Eigen::Index r = rank + 1; r < m.rows(); ++r) {
      if (m(r, col) == 0) continue;
      const Rational f = m(r, col) / m(rank, col);
      m.row(r) -= f * m.row(rank);
    }
    ++rank;
  }
  return rank;
}

bool in_lattice(const KernelBasis& basis, const IntegerVector& x) {
  if (basis.empty()) return is_zero(x);
  const RowEchelonBasis echelon = row_hermite_form(basis.vectors.transpose());
  IntegerVector rest = x;
  for (std::size_t i = 0; i < echelon.pivots.size(); ++i) {
    const Eigen::Index p = echelon.pivots[i];
    const auto r = static_cast<Eigen::Index>(i);
    BigInt q, rem;
    divide_qr(rest(p), echelon.rows(r, p), q, rem);
    if (rem != 0) return false;
    rest -= q * echelon.rows.row(r).transpose();
  }
  return is_zero(rest);
}

IntegerMatrix lll_reduce(const IntegerMatrix& basis_columns, const IntegerVector& weights) {
  IntegerMatrix b = basis_columns;
  const Eigen::Index d = b.cols();
  if (d <= 1) return b;

  RationalVector w2(weights.size());
  for (Eigen::Index i = 0; i < weights.size(); ++i) w2(i) = Rational(weights(i) * weights(i));
  auto inner = [&](const IntegerVector& x, const RationalVector& y) {
    Rational s = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x(i) != 0) s += w2(i) * Rational(x(i)) * y(i);
    return s;
  };

  // Gram-Schmidt data, recomputed from scratch after each swap; d is small.
  RationalMatrix star(b.rows(), d);
  RationalMatrix mu = RationalMatrix::Zero(d, d);
  RationalVector norms(d);
  auto gram_schmidt = [&]() {
    for (Eigen::Index i = 0; i < d; ++i) {
      RationalVector v = b.col(i).cast<Rational>();
      for (Eigen::Index j = 0; j < i; ++j) {
        mu(i, j) = inner(b.col(i), star.col(j)) / norms(j);
        v -= mu(i, j) * star.col(j);
      }
      star.col(i) = v;
      Rational s = 0;
      for (Eigen::Index r = 0; r < v.size(); ++r) s += w2(r) * v(r) * v(r);
      norms(i) = s;
    }
  };

  gram_schmidt();
  const Rational delta(3, 4);
  Eigen::Index k = 1;
  while (k < d) {
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      // nearest integer to mu(k, j)
      const Rational twice = mu(k, j) * 2 + 1;
      const BigInt q = floor_div(numerator(twice), denominator(twice) * 2);
      if (q == 0) continue;
      b.col(k) -= q * b.col(j);
      for (Eigen::Index l = 0; l <= j; ++l) mu(k, l) -= Rational(q) * (l == j ? Rational(1) : mu(j, l));
    }
    if (norms(k) >= (delta - mu(k, k - 1) * mu(k, k - 1)) * norms(k - 1)) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      gram_schmidt();
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
  return b;
}

}  // namespace qdesign
