#pragma once

// Independent checks of the design-order solver.
//
// Collision oracle: t is below the minimal kernel cost iff no two distinct
// nonnegative y, y' with <m, y> = <m, y'> <= t have equal constraint
// projections rows * y = rows * y'.  Plain enumeration, no lattice theory.
//
// Commutant oracle: a distribution over symmetric gate sets is an asymptotic
// t-design iff the commutant of omega_t(s) equals that of omega_t(u), where
// omega_t(A) = sum_s I..A..I (A in slot s), s spans the local symmetric
// generators and u the whole symmetric algebra.  Exact, tiny sizes only.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qdesign/gaussian_rational.hpp"
#include "qdesign/numeric.hpp"
#include "qdesign/symmetry.hpp"

namespace qdesign {

// ---- collision oracle ----

struct CollisionReport {
  long long t = 0;
  bool found = false;
  // y != y', equal weight and equal projection; weight is minimal among all
  // collisions with weight <= t
  std::optional<std::pair<IntegerVector, IntegerVector>> pair;
  std::optional<BigInt> weight;
  std::uint64_t enumerated = 0;  // vectors visited
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 200'000'000;

// Enumerates nonnegative y with <m, y> <= t weight by weight.  Throws
// ResourceLimitError once more than `budget` vectors have been visited.
CollisionReport collision_exists(const IrrepTable& table, const ConstraintSystem& system, long long t,
                                 std::uint64_t budget = kDefaultEnumerationBudget);

// Checks the collision conditions for a given pair.
bool is_collision(const IrrepTable& table, const ConstraintSystem& system, const IntegerVector& y,
                  const IntegerVector& y_prime, long long t);

// y = (|x| + x)/2, y' = (|x| - x)/2.
std::pair<IntegerVector, IntegerVector> split_signs(const IntegerVector& x);

// ---- commutant oracle ----

struct FullAlgebra {};
using Locality = std::variant<long long, FullAlgebra>;

// Largest n * t the commutant oracle accepts (matrix dimension 2^{nt} <= 64).
inline constexpr long long kCommutantCap = 6;

// Basis of the algebra of operators on k qubits (k = n for FullAlgebra)
// commuting with the symmetry generators, each embedded on every k-subset of
// the n qubits (identity elsewhere).  Built-ins only; n <= 6.
std::vector<GaussianRationalMatrix> symmetric_algebra_generators(const SymmetrySpec& spec, long long n,
                                                                 Locality k);

struct CommutantReport {
  long long t = 0;
  long long dim_gateset = 0;
  long long dim_full = 0;
  bool is_design = false;
};

// Dimension of {L : [omega_t(A), L] = 0 for all A} on (2^n)^t-dimensional space.
long long commutant_dimension(const std::vector<GaussianRationalMatrix>& generators, long long n, long long t);

CommutantReport commutant_check(const SymmetrySpec& spec, long long n, long long k, long long t);

// Same check with an explicit list of Lie-algebra generators on n qubits in
// place of the k-local symmetric ones.
CommutantReport commutant_check(const SymmetrySpec& spec, const std::vector<GaussianRationalMatrix>& generators,
                                long long n, long long t);

// Named gate sets with explicit generators.
struct GateSetFixture {
  std::string name;
  std::string description;
  SymmetrySpec spec;
  long long n = 0;
  std::vector<GaussianRationalMatrix> generators;
};

std::vector<std::string> fixture_names();
GateSetFixture fixture(const std::string& name);  // PreconditionError if unknown

// Pauli matrices and tensor products, qubit 0 most significant.
GaussianRationalMatrix pauli(char which);  // 'I', 'X', 'Y', 'Z'
GaussianRationalMatrix kron(const GaussianRationalMatrix& a, const GaussianRationalMatrix& b);
GaussianRationalMatrix pauli_string(const std::string& word);  // e.g. "XZI"

}  // namespace qdesign
