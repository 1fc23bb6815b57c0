#include "qdesign/symmetry.hpp"

#include <gtest/gtest.h>

#include "qdesign/combinatorics.hpp"
#include "qdesign/errors.hpp"

using namespace qdesign;

namespace {

const SymmetrySpec z2 = SymmetrySpec::builtin(SymmetryKind::Z2);
const SymmetrySpec u1 = SymmetrySpec::builtin(SymmetryKind::U1);
const SymmetrySpec su2 = SymmetrySpec::builtin(SymmetryKind::SU2);

BigInt pow2(long long e) { return BigInt(1) << static_cast<unsigned>(e); }

}  // namespace

TEST(SymmetryKind, ParseAndPrint) {
  EXPECT_EQ(parse_symmetry_kind("SU2"), SymmetryKind::SU2);
  EXPECT_EQ(parse_symmetry_kind("u1"), SymmetryKind::U1);
  EXPECT_EQ(to_string(SymmetryKind::Z2), "z2");
  EXPECT_THROW(parse_symmetry_kind("so3"), PreconditionError);
}

TEST(IrrepTable, Z2) {
  const IrrepTable t = irrep_table(z2, 5);
  EXPECT_EQ(t.multiplicities, make_vector({16, 16}));
  EXPECT_EQ(t.labels, (std::vector<std::string>{"0", "1"}));
}

TEST(IrrepTable, SU2Labels) {
  const IrrepTable even = irrep_table(su2, 4);
  EXPECT_EQ(even.labels, (std::vector<std::string>{"2", "1", "0"}));
  EXPECT_EQ(even.multiplicities, make_vector({1, 3, 2}));
  EXPECT_EQ(even.irrep_dims, make_vector({5, 3, 1}));
  const IrrepTable odd = irrep_table(su2, 3);
  EXPECT_EQ(odd.labels, (std::vector<std::string>{"3/2", "1/2"}));
  EXPECT_EQ(odd.multiplicities, make_vector({1, 2}));
}

TEST(IrrepTable, DimensionsAddUpToHilbertSpace) {
  for (long long n = 1; n <= 40; ++n) {
    EXPECT_EQ(represented_dimension(irrep_table(z2, n)), pow2(n));
    EXPECT_EQ(represented_dimension(irrep_table(u1, n)), pow2(n));
    EXPECT_EQ(represented_dimension(irrep_table(su2, n)), pow2(n));
  }
}

TEST(IrrepTable, RejectsNonPositiveQubits) { EXPECT_THROW(irrep_table(u1, 0), PreconditionError); }

TEST(ConstraintSystem, Z2Rows) {
  const ConstraintSystem s = constraint_system(z2, 3, 2);
  EXPECT_EQ(s.rows.rows(), 2);
  EXPECT_EQ(IntegerVector(s.rows.row(0).transpose()), make_vector({1, 1}));
  EXPECT_EQ(IntegerVector(s.rows.row(1).transpose()), make_vector({4, 4}));
  EXPECT_EQ(s.provenance.back(), "m");
}

TEST(ConstraintSystem, U1RowsAndMultiplicityRow) {
  for (long long n = 3; n <= 14; ++n)
    for (long long k = 2; k <= n - 1; ++k) {
      const ConstraintSystem s = constraint_system(u1, n, k);
      ASSERT_EQ(s.rows.rows(), k + 2);
      const IntegerVector m = irrep_table(u1, n).multiplicities;
      IntegerVector combo = IntegerVector::Zero(n + 1);
      for (long long j = 0; j <= k; ++j) {
        for (long long l = 0; l <= n; ++l) EXPECT_EQ(s.rows(j, l), binomial(n - k, l - j));
        combo += binomial(k, j) * IntegerVector(s.rows.row(j).transpose());
      }
      // Vandermonde: m is a combination of the charge rows
      EXPECT_EQ(combo, m);
      EXPECT_EQ(IntegerVector(s.rows.row(k + 1).transpose()), m);
    }
}

TEST(ConstraintSystem, SU2FirstRowIsMultiplicity) {
  for (long long n = 3; n <= 16; ++n)
    for (long long k = 2; k <= n - 1; ++k) {
      const ConstraintSystem s = constraint_system(su2, n, k);
      ASSERT_EQ(s.rows.rows(), k / 2 + 2);
      EXPECT_EQ(IntegerVector(s.rows.row(0).transpose()), irrep_table(su2, n).multiplicities);
    }
}

TEST(ConstraintSystem, SU2SmallExample) {
  // n=4, k=2: rows j'=0 (m) and j'=1 (multiplicities of 2 qubits shifted by one)
  const ConstraintSystem s = constraint_system(su2, 4, 2);
  EXPECT_EQ(IntegerVector(s.rows.row(0).transpose()), make_vector({1, 3, 2}));
  EXPECT_EQ(IntegerVector(s.rows.row(1).transpose()), make_vector({0, 1, 1}));
}

TEST(ConstraintSystem, LocalityPreconditions) {
  EXPECT_THROW(constraint_system(u1, 4, 4), PreconditionError);
  EXPECT_THROW(constraint_system(su2, 4, 1), PreconditionError);
  EXPECT_THROW(constraint_system(z2, 2, 2), PreconditionError);
}

TEST(CustomSpec, ParsesIntegersAndRationals) {
  const SymmetrySpec s = parse_custom(R"({"multiplicities": [1, 2, 3],
                                          "constraints": [[1, "1/2", "-1/3"], [0, 1, 1]],
                                          "labels": ["a", "b", "c"]})");
  EXPECT_EQ(s.kind, SymmetryKind::Custom);
  EXPECT_EQ(s.multiplicities, make_vector({1, 2, 3}));
  ASSERT_EQ(s.constraints.size(), 2u);
  EXPECT_EQ(s.constraints[0], make_vector({6, 3, -2}));
  EXPECT_EQ(s.constraints[1], make_vector({0, 1, 1}));
  const ConstraintSystem sys = constraint_system(s, 0, 0);
  EXPECT_EQ(sys.rows.rows(), 3);
  EXPECT_EQ(sys.provenance, (std::vector<std::string>{"custom[0]", "custom[1]", "m"}));
  EXPECT_EQ(irrep_table(s, 0).labels, (std::vector<std::string>{"a", "b", "c"}));
}

TEST(CustomSpec, DefaultLabelsAndNoConstraints) {
  const SymmetrySpec s = parse_custom(R"({"multiplicities": [2, 2]})");
  EXPECT_EQ(s.labels, (std::vector<std::string>{"0", "1"}));
  EXPECT_TRUE(s.constraints.empty());
}

TEST(CustomSpec, Errors) {
  EXPECT_THROW(parse_custom("not json"), FormatError);
  EXPECT_THROW(parse_custom(R"([1, 2])"), FormatError);
  EXPECT_THROW(parse_custom(R"({"constraints": []})"), FormatError);
  EXPECT_THROW(parse_custom(R"({"multiplicities": [1, 2], "extra": 1})"), FormatError);
  EXPECT_THROW(parse_custom(R"({"multiplicities": [1, 2], "constraints": [[1]]})"), FormatError);
  EXPECT_THROW(parse_custom(R"({"multiplicities": [1, 2], "constraints": [[1, "1/0"]]})"), FormatError);
  EXPECT_THROW(parse_custom(R"({"multiplicities": [1, 2], "constraints": [[1, "x"]]})"), FormatError);
  EXPECT_THROW(parse_custom(R"({"multiplicities": [1.5, 2]})"), FormatError);
  EXPECT_THROW(parse_custom(R"({"multiplicities": [1, 0]})"), ValidationError);
  EXPECT_THROW(parse_custom(R"({"multiplicities": [1, -2]})"), ValidationError);
  EXPECT_THROW(parse_custom(R"({"multiplicities": [1, 2], "labels": ["a"]})"), FormatError);
  EXPECT_THROW(load_custom("/nonexistent/spec.json"), FormatError);
}
