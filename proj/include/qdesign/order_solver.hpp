#pragma once

// Exact maximal design order.
//
// A symmetric k-local random circuit is a t-design iff t is below
//   min { <m, x+> : x != 0 integer, rows * x = 0 },
// where rows includes the multiplicity vector m.  On that lattice <m, x> = 0,
// so <m, x+> = (1/2) sum_l m_l |x_l|.  The answer is reported as
// t_max = min - 1 ("t-design iff t <= t_max"), or Infinite when the integer
// kernel is trivial.

#include <cstdint>
#include <optional>

#include "qdesign/lattice.hpp"
#include "qdesign/numeric.hpp"
#include "qdesign/symmetry.hpp"

namespace qdesign {

struct SolutionCertificate {
  IntegerVector vector;
  BigInt cost;  // <m, x+>
};

struct DesignOrder {
  enum class Tag { Finite, Infinite };

  Tag tag = Tag::Infinite;
  BigInt t_max;  // meaningful when Finite
  // The solver always attaches one; closed forms attach the explicit witness
  // when it is tight.
  std::optional<SolutionCertificate> certificate;

  static DesignOrder infinite() { return {}; }
  static DesignOrder finite(BigInt t_max, std::optional<SolutionCertificate> certificate = std::nullopt);

  bool is_finite() const { return tag == Tag::Finite; }
  friend bool operator==(const DesignOrder& a, const DesignOrder& b) {
    return a.tag == b.tag && (a.tag == Tag::Infinite || a.t_max == b.t_max);
  }
};

struct SearchOptions {
  std::uint64_t node_budget = 100'000'000;
  unsigned jobs = 1;
};

// 10^8 unless QDESIGN_NODE_BUDGET holds a positive integer.
std::uint64_t default_node_budget();
SearchOptions default_search_options();

struct SearchStats {
  std::uint64_t nodes = 0;
};

// <m, x+> for a vector with <m, x> = 0; InvariantError otherwise.
BigInt certificate_cost(const IntegerVector& x, const IntegerVector& multiplicities);

// Sign convention for certificates: first nonzero entry positive.
IntegerVector canonical_sign(const IntegerVector& x);

// Cheapest of the closed-form witness (when one applies) and the LLL-reduced
// kernel basis vectors.  nullopt iff the kernel is empty.
std::optional<SolutionCertificate> seed_certificate(const SymmetrySpec& spec, long long n, long long k,
                                                    const KernelBasis& kernel);
std::optional<BigInt> seed_upper_bound(const SymmetrySpec& spec, long long n, long long k,
                                       const KernelBasis& kernel);

// Globally minimal nonzero kernel point by exhaustive branch-and-bound inside
// {x : m_l |x_l| <= t0}.  Among minimisers returns the lexicographically
// smallest with positive leading entry.  Requires some kernel point of cost
// <= t0; throws ResourceLimitError (with the interval for t_max) when the node
// budget runs out.
SolutionCertificate minimize_cost(const KernelBasis& kernel, const IntegerVector& multiplicities, const BigInt& t0,
                                  const SearchOptions& options = default_search_options(),
                                  SearchStats* stats = nullptr);

DesignOrder max_design_order(const SymmetrySpec& spec, long long n, long long k,
                             const SearchOptions& options = default_search_options(), SearchStats* stats = nullptr);

// Closed forms and exceptional tables for the built-in symmetries on their
// proven ranges; nullopt ("not covered") elsewhere and for custom specs.
std::optional<DesignOrder> theorem_order(const SymmetrySpec& spec, long long n, long long k);

}  // namespace qdesign
