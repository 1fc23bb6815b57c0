#pragma once

// Exact combinatorial primitives: binomials, the a/b/c sequences that give
// the closed-form design orders, the explicit kernel witnesses, and trace
// vectors of qubit permutation operators.
//
// All functions are pure and thread-safe.

#include <vector>

#include "qdesign/numeric.hpp"

namespace qdesign {

// n choose r; zero outside the Pascal triangle (r < 0, r > n or n < 0).
BigInt binomial(long long n, long long r);

// sum_{p=0}^{j} C(n, j-p) C(n-k+p-1, p).  Requires 0 <= k <= n-1, j >= 0.
BigInt a_sequence(long long n, long long k, long long j);

// 2^{floor(k/2)} / ceil(k/2)! * prod_{a=1}^{ceil(k/2)} (n-k+2a-1).
// U(1) design-order bound.  Requires 2 <= k <= n-1.
BigInt b_bound(long long n, long long k);

// 2^{floor(k/2)} / (floor(k/2)+1)! * prod_{a=1}^{floor(k/2)+1} (n-2a+1).
// SU(2) design-order bound.  Requires k >= 2, n >= 2(floor(k/2)+1).
BigInt c_bound(long long n, long long k);

// Integer kernel witness for the U(1) system, indexed by charge 0..n:
//   y_l = (-1)^l / (n-k-1)! * prod_{a=1}^{n-k-1} (l - ceil(k/2) - a).
// Requires 2 <= k <= n-1.
IntegerVector u1_witness(long long n, long long k);

// Integer kernel witness for the SU(2) system, indexed by j = n/2 - spin:
//   y_j = (-1)^j C(n - j - h - 1, h + 1 - j),  h = floor(k/2).
// Requires k >= 2, n >= 2(h+1).
IntegerVector su2_witness(long long n, long long k);

// Trace vector (f_j(Q_sigma (x) I))_{j=0..floor(n/2)} of a qubit permutation
// with the given nontrivial cycle lengths, in the SU(2) irrep basis indexed
// by j = n/2 - spin.  An empty cycle list gives the multiplicity vector.
// Requires every length >= 2 and their sum <= n.
IntegerVector permutation_trace_vector(long long n, const std::vector<long long>& cycle_lengths);

// Cumulative version f~_j = #{bitstrings with j ones fixed by sigma}.
IntegerVector permutation_fixed_counts(long long n, const std::vector<long long>& cycle_lengths);

BigInt factorial(long long n);

}  // namespace qdesign
