#pragma once

// Irrep tables and integer constraint systems for Z2, U(1), SU(2) acting on
// qubits as tensor powers, and for user-supplied custom data.
//
// Built-in conventions:
//   Z2    labels {0, 1} (Z^{(x)n} eigenvalue (-1)^label), m = (2^{n-1}, 2^{n-1})
//   U1    labels 0..n (number of excitations),            m_l = C(n, l)
//   SU2   labels j = 0..floor(n/2) for spin n/2 - j,       m_j = C(n, j) - C(n, j-1)
//
// Only the maximal gate locality k enters; the set of qubit subsets carrying
// gates is assumed inseparable, and the gate set semi-universal.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qdesign/numeric.hpp"

namespace qdesign {

enum class SymmetryKind { Z2, U1, SU2, Custom };

std::string_view to_string(SymmetryKind kind);

// Accepts "z2", "u1", "su2" (case-insensitive). Throws PreconditionError.
SymmetryKind parse_symmetry_kind(std::string_view name);

struct SymmetrySpec {
  SymmetryKind kind = SymmetryKind::Z2;

  // Custom only.
  IntegerVector multiplicities;
  std::vector<IntegerVector> constraints;
  std::vector<std::string> labels;

  static SymmetrySpec builtin(SymmetryKind kind);
  bool is_builtin() const { return kind != SymmetryKind::Custom; }
};

struct IrrepTable {
  std::vector<std::string> labels;
  IntegerVector multiplicities;
  IntegerVector irrep_dims;

  std::size_t size() const { return labels.size(); }
};

struct ConstraintSystem {
  // One row per constraint; the final row is always the multiplicity vector.
  IntegerMatrix rows;
  // Human-readable origin of each row ("j=1", "custom[0]", "m").
  std::vector<std::string> provenance;

  Eigen::Index num_labels() const { return rows.cols(); }
  // True iff every row annihilates x.
  bool annihilates(const IntegerVector& x) const;
};

// Throws PreconditionError for n < 1 on built-ins.
IrrepTable irrep_table(const SymmetrySpec& spec, long long n);

// Built-ins require 2 <= k <= n-1; custom specs ignore n and k.
ConstraintSystem constraint_system(const SymmetrySpec& spec, long long n, long long k);

// Parses the custom JSON schema:
//   {"multiplicities": [int, ...],
//    "constraints": [[int | "p/q", ...], ...],
//    "labels": ["...", ...]}            (optional)
// Rational rows are cleared to integers by the LCM of their denominators.
// Throws FormatError (shape/syntax) or ValidationError (content).
SymmetrySpec parse_custom(std::string_view document);
SymmetrySpec load_custom(const std::string& path);

// Dimension of the Hilbert space carried by the table: sum r_l m_l.
BigInt represented_dimension(const IrrepTable& table);

}  // namespace qdesign
