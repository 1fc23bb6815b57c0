#include "qdesign/combinatorics.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <vector>

#include "qdesign/errors.hpp"
#include "qdesign/lattice.hpp"
#include "qdesign/symmetry.hpp"

using namespace qdesign;

namespace {

// Pascal's rule, row by row.
std::vector<std::vector<BigInt>> pascal(int rows) {
  std::vector<std::vector<BigInt>> t(rows + 1);
  for (int n = 0; n <= rows; ++n) {
    t[n].assign(n + 1, BigInt(1));
    for (int r = 1; r < n; ++r) t[n][r] = t[n - 1][r - 1] + t[n - 1][r];
  }
  return t;
}

// Number of weight-j bitstrings left invariant by a permutation with the given
// cycles (remaining qubits fixed), by direct enumeration.
std::vector<long long> brute_fixed(int n, const std::vector<long long>& cycles) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int start = 0;
  for (long long len : cycles) {
    for (int i = 0; i < len; ++i) perm[start + i] = start + (i + 1) % static_cast<int>(len);
    start += static_cast<int>(len);
  }
  std::vector<long long> counts(n / 2 + 1, 0);
  for (unsigned bits = 0; bits < (1u << n); ++bits) {
    unsigned image = 0;
    for (int q = 0; q < n; ++q)
      if (bits >> q & 1u) image |= 1u << perm[q];
    const int weight = __builtin_popcount(bits);
    if (image == bits && weight <= n / 2) ++counts[weight];
  }
  return counts;
}

void cycle_types(long long remaining, long long min_len, std::vector<long long>& cur,
                 std::vector<std::vector<long long>>& out) {
  out.push_back(cur);
  for (long long len = min_len; len <= remaining; ++len) {
    cur.push_back(len);
    cycle_types(remaining - len, len, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST(Binomial, MatchesPascalTriangle) {
  const auto t = pascal(60);
  for (int n = 0; n <= 60; ++n)
    for (int r = 0; r <= n; ++r) EXPECT_EQ(binomial(n, r), t[n][r]) << n << " " << r;
}

TEST(Binomial, ZeroOutsideTriangle) {
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(-3, 1), 0);
  EXPECT_EQ(binomial(0, 0), 1);
}

TEST(Binomial, LargeArguments) {
  EXPECT_EQ(binomial(100, 50), BigInt("100891344545564193334812497256"));
}

TEST(Factorial, Values) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_THROW(factorial(-1), PreconditionError);
}

TEST(Bounds, SmallLocalityClosedForms) {
  for (long long n = 3; n <= 40; ++n) {
    EXPECT_EQ(b_bound(n, 2), 2 * (n - 1));
    if (n >= 4) EXPECT_EQ(b_bound(n, 3), n * (n - 2));
    if (n >= 5) EXPECT_EQ(b_bound(n, 4), 2 * (n - 1) * (n - 3));
    if (n >= 4) EXPECT_EQ(c_bound(n, 2), (n - 1) * (n - 3));
    if (n >= 6) EXPECT_EQ(3 * c_bound(n, 4), 2 * (n - 1) * (n - 3) * (n - 5));
  }
}

TEST(Bounds, Preconditions) {
  EXPECT_THROW(b_bound(4, 4), PreconditionError);
  EXPECT_THROW(b_bound(4, 1), PreconditionError);
  EXPECT_THROW(c_bound(5, 4), PreconditionError);
  EXPECT_THROW(a_sequence(3, 3, 0), PreconditionError);
}

TEST(ASequence, DirectSum) {
  // a_{n,k,j} = sum_p C(n, j-p) C(n-k+p-1, p), evaluated with the Pascal table
  const auto t = pascal(80);
  auto c = [&](long long a, long long b) { return (a < 0 || b < 0 || b > a) ? BigInt(0) : t[a][b]; };
  for (long long n = 2; n <= 20; ++n)
    for (long long k = 0; k <= n - 1; ++k)
      for (long long j = 0; j <= 6; ++j) {
        BigInt s = 0;
        for (long long p = 0; p <= j; ++p) s += c(n, j - p) * c(n - k + p - 1, p);
        EXPECT_EQ(a_sequence(n, k, j), s);
      }
}

TEST(Witness, U1KnownSmallCases) {
  EXPECT_EQ(u1_witness(4, 3), make_vector({1, -1, 1, -1, 1}));
  EXPECT_EQ(u1_witness(3, 2), make_vector({1, -1, 1, -1}));
}

TEST(Witness, SU2KnownSmallCases) {
  EXPECT_EQ(su2_witness(6, 2), make_vector({6, -3, 1, 0}));
  EXPECT_EQ(su2_witness(4, 2), make_vector({1, -1, 1}));
}

TEST(Witness, LieInKernelWithBoundCost) {
  for (long long k = 2; k <= 6; ++k)
    for (long long n = k + 1; n <= 18; ++n) {
      const auto u1 = constraint_system(SymmetrySpec::builtin(SymmetryKind::U1), n, k);
      const IntegerVector y = u1_witness(n, k);
      EXPECT_TRUE(u1.annihilates(y)) << n << " " << k;
      EXPECT_EQ(weighted_l1(y, irrep_table(SymmetrySpec::builtin(SymmetryKind::U1), n).multiplicities),
                2 * b_bound(n, k));
      if (n >= 2 * (k / 2 + 1)) {
        const auto su2 = constraint_system(SymmetrySpec::builtin(SymmetryKind::SU2), n, k);
        const IntegerVector z = su2_witness(n, k);
        EXPECT_TRUE(su2.annihilates(z)) << n << " " << k;
        EXPECT_EQ(weighted_l1(z, irrep_table(SymmetrySpec::builtin(SymmetryKind::SU2), n).multiplicities),
                  2 * c_bound(n, k));
      }
    }
}

TEST(PermutationTrace, FixedCountsMatchEnumeration) {
  for (int n = 1; n <= 10; ++n) {
    std::vector<long long> cur;
    std::vector<std::vector<long long>> types;
    cycle_types(n, 2, cur, types);
    for (const auto& cycles : types) {
      const auto expected = brute_fixed(n, cycles);
      const IntegerVector got = permutation_fixed_counts(n, cycles);
      ASSERT_EQ(got.size(), static_cast<Eigen::Index>(expected.size()));
      for (std::size_t j = 0; j < expected.size(); ++j) EXPECT_EQ(got(j), expected[j]);
    }
  }
}

TEST(PermutationTrace, IdentityGivesMultiplicities) {
  for (long long n = 1; n <= 15; ++n)
    EXPECT_EQ(permutation_trace_vector(n, {}), irrep_table(SymmetrySpec::builtin(SymmetryKind::SU2), n).multiplicities);
}

TEST(PermutationTrace, SwapOnTwoQubits) {
  // triplet +1, singlet -1
  EXPECT_EQ(permutation_trace_vector(2, {2}), make_vector({1, -1}));
}

TEST(PermutationTrace, LocalPermutationsAreOrthogonalToKernel) {
  const auto spec = SymmetrySpec::builtin(SymmetryKind::SU2);
  for (long long n = 3; n <= 12; ++n)
    for (long long k = 2; k <= n - 1; ++k) {
      const KernelBasis kernel = integer_kernel(constraint_system(spec, n, k).rows);
      std::vector<long long> cur;
      std::vector<std::vector<long long>> types;
      cycle_types(k, 2, cur, types);
      for (const auto& cycles : types) {
        const IntegerVector f = permutation_trace_vector(n, cycles);
        for (Eigen::Index i = 0; i < kernel.rank(); ++i) EXPECT_EQ(f.dot(kernel.vector(i)), 0) << n << " " << k;
      }
    }
}

TEST(PermutationTrace, Preconditions) {
  EXPECT_THROW(permutation_trace_vector(3, {4}), PreconditionError);
  EXPECT_THROW(permutation_trace_vector(3, {1}), PreconditionError);
}
