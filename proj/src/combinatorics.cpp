#include "qdesign/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qdesign/errors.hpp"

namespace qdesign {

namespace {

long long floor_half(long long k) { return k / 2; }
long long ceil_half(long long k) { return (k + 1) / 2; }

BigInt pow2(long long e) {
  BigInt r = 1;
  r <<= static_cast<unsigned>(e);
  return r;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace

BigInt factorial(long long n) {
  require(n >= 0, "factorial of negative number");
  BigInt r = 1;
  for (long long i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(long long n, long long r) {
  if (n < 0 || r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt result = 1;
  for (long long i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;  // exact: result is C(n-r+i, i) here
  }
  return result;
}

BigInt a_sequence(long long n, long long k, long long j) {
  require(0 <= k && k <= n - 1 && j >= 0, "a_sequence requires 0 <= k <= n-1 and j >= 0");
  BigInt total = 0;
  for (long long p = 0; p <= j; ++p) total += binomial(n, j - p) * binomial(n - k + p - 1, p);
  return total;
}

BigInt b_bound(long long n, long long k) {
  require(2 <= k && k <= n - 1, "b_bound requires 2 <= k <= n-1");
  BigInt product = 1;
  for (long long a = 1; a <= ceil_half(k); ++a) product *= n - k + 2 * a - 1;
  return exact_div(pow2(floor_half(k)) * product, factorial(ceil_half(k)));
}

BigInt c_bound(long long n, long long k) {
  const long long h = floor_half(k);
  require(k >= 2 && n >= 2 * (h + 1), "c_bound requires k >= 2 and n >= 2(floor(k/2)+1)");
  BigInt product = 1;
  for (long long a = 1; a <= h + 1; ++a) product *= n - 2 * a + 1;
  return exact_div(pow2(h) * product, factorial(h + 1));
}

IntegerVector u1_witness(long long n, long long k) {
  require(2 <= k && k <= n - 1, "u1_witness requires 2 <= k <= n-1");
  const long long shift = ceil_half(k);
  const BigInt denominator = factorial(n - k - 1);
  IntegerVector y(n + 1);
  for (long long l = 0; l <= n; ++l) {
    BigInt product = 1;
    for (long long a = 1; a <= n - k - 1; ++a) product *= l - shift - a;
    y(l) = exact_div(product, denominator);
    if (l % 2) y(l) = -y(l);
  }
  return y;
}

IntegerVector su2_witness(long long n, long long k) {
  const long long h = floor_half(k);
  require(k >= 2 && n >= 2 * (h + 1), "su2_witness requires k >= 2 and n >= 2(floor(k/2)+1)");
  IntegerVector y = IntegerVector::Zero(n / 2 + 1);
  for (long long j = 0; j <= h + 1; ++j) {
    y(j) = binomial(n - j - h - 1, h + 1 - j);
    if (j % 2) y(j) = -y(j);
  }
  return y;
}

IntegerVector permutation_fixed_counts(long long n, const std::vector<long long>& cycle_lengths) {
  require(n >= 1, "permutation_fixed_counts requires n >= 1");
  long long support = 0;
  for (long long p : cycle_lengths) {
    require(p >= 2, "cycle lengths must be at least 2");
    support += p;
  }
  require(support <= n, "total cycle length exceeds qubit count");

  // ways[s] = #{q in {0,1}^L : sum_l q_l p_l = s}
  std::vector<BigInt> ways(static_cast<std::size_t>(support + 1), BigInt(0));
  ways[0] = 1;
  long long reach = 0;
  for (long long p : cycle_lengths) {
    for (long long s = reach; s >= 0; --s) ways[s + p] += ways[s];
    reach += p;
  }

  IntegerVector counts(n / 2 + 1);
  for (long long j = 0; j <= n / 2; ++j) {
    BigInt total = 0;
    for (long long s = 0; s <= support; ++s)
      if (ways[s] != 0) total += ways[s] * binomial(n - support, j - s);
    counts(j) = total;
  }
  return counts;
}

IntegerVector permutation_trace_vector(long long n, const std::vector<long long>& cycle_lengths) {
  IntegerVector cumulative = permutation_fixed_counts(n, cycle_lengths);
  IntegerVector f(cumulative.size());
  for (Eigen::Index j = 0; j < cumulative.size(); ++j)
    f(j) = j == 0 ? cumulative(0) : BigInt(cumulative(j) - cumulative(j - 1));
  return f;
}

}  // namespace qdesign
