#pragma once

// Exact scalar types and the Eigen containers built on them.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <vector>

namespace qdesign {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntegerVector = Vector<BigInt>;
using IntegerMatrix = Matrix<BigInt>;
using RationalVector = Vector<Rational>;
using RationalMatrix = Matrix<Rational>;

// Builds an IntegerVector from a braced list, e.g. make_vector({1, -1}).
IntegerVector make_vector(std::initializer_list<long long> entries);
IntegerVector make_vector(const std::vector<BigInt>& entries);

std::vector<BigInt> to_std_vector(const IntegerVector& v);

// "(a, b, c)"
std::string to_string(const IntegerVector& v);

// Sum of |x_i| * w_i.
BigInt weighted_l1(const IntegerVector& x, const IntegerVector& weights);

bool is_zero(const IntegerVector& v);

// Lexicographic comparison of equal-length vectors.
bool lex_less(const IntegerVector& a, const IntegerVector& b);

// Floor/ceil division for arbitrary signs; divisor must be nonzero.
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);

// Exact division; throws InvariantError when b does not divide a.
BigInt exact_div(const BigInt& a, const BigInt& b);

}  // namespace qdesign
