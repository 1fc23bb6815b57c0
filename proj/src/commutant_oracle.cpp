#include <map>
#include <ostream>
#include <sstream>

#include "qdesign/errors.hpp"
#include "qdesign/oracles.hpp"
#include "qdesign/sparse_elimination.hpp"

namespace qdesign {

std::string to_string(const GaussianRational& z) {
  std::ostringstream os;
  os << z;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
  if (z.imag() == 0) return os << z.real();
  if (z.real() == 0) return os << z.imag() << "i";
  return os << z.real() << (z.imag() < 0 ? "-" : "+") << abs(z.imag()) << "i";
}

namespace {

using Eliminator = SparseEliminator<GaussianRational>;
using Index = std::int64_t;

// Sparse square operator as row lists.
struct SparseOperator {
  Index dim = 0;
  std::vector<std::vector<std::pair<Index, GaussianRational>>> rows;
  std::vector<std::vector<std::pair<Index, GaussianRational>>> cols;
};

SparseOperator sparse_from_entries(Index dim, std::map<std::pair<Index, Index>, GaussianRational> entries) {
  SparseOperator op;
  op.dim = dim;
  op.rows.resize(static_cast<std::size_t>(dim));
  op.cols.resize(static_cast<std::size_t>(dim));
  for (auto& [rc, v] : entries) {
    if (v.is_zero()) continue;
    op.rows[static_cast<std::size_t>(rc.first)].emplace_back(rc.second, v);
    op.cols[static_cast<std::size_t>(rc.second)].emplace_back(rc.first, v);
  }
  return op;
}

// Appends the rows of [A, L] = 0 (unknown L_{cb} at index c*dim + b).
void add_commutator_rows(const SparseOperator& a, Eliminator& system) {
  const Index dim = a.dim;
  for (Index r = 0; r < dim; ++r)
    for (Index b = 0; b < dim; ++b) {
      const auto& row = a.rows[static_cast<std::size_t>(r)];
      const auto& col = a.cols[static_cast<std::size_t>(b)];
      if (row.empty() && col.empty()) continue;
      Eliminator::Row eq;
      for (const auto& [c, v] : row) eq.emplace_back(c * dim + b, v);
      for (const auto& [c, v] : col) eq.emplace_back(r * dim + c, -v);
      system.add(std::move(eq));
      if (system.nullity() == 1) return;  // only the scalars are left
    }
}

// Spin sums on q qubits: sum_i P_i for P in {X, Y, Z}, and Z^{(x)q}.
SparseOperator collective(char pauli_name, Index qubits) {
  const Index dim = Index{1} << qubits;
  std::map<std::pair<Index, Index>, GaussianRational> entries;
  for (Index x = 0; x < dim; ++x)
    for (Index q = 0; q < qubits; ++q) {
      const Index bit = Index{1} << (qubits - 1 - q);
      const bool one = x & bit;
      switch (pauli_name) {
        case 'Z': entries[{x, x}] += GaussianRational(one ? -1 : 1); break;
        case 'X': entries[{x ^ bit, x}] += GaussianRational(1); break;
        // Y|0> = i|1>, Y|1> = -i|0>
        case 'Y': entries[{x ^ bit, x}] += one ? -GaussianRational::i() : GaussianRational::i(); break;
        default: throw InvariantError("collective: unknown Pauli");
      }
    }
  return sparse_from_entries(dim, std::move(entries));
}

SparseOperator parity(Index qubits) {
  const Index dim = Index{1} << qubits;
  std::map<std::pair<Index, Index>, GaussianRational> entries;
  for (Index x = 0; x < dim; ++x) entries[{x, x}] = GaussianRational(__builtin_popcountll(x) % 2 ? -1 : 1);
  return sparse_from_entries(dim, std::move(entries));
}

std::vector<SparseOperator> symmetry_generators(SymmetryKind kind, Index qubits) {
  switch (kind) {
    case SymmetryKind::Z2: return {parity(qubits)};
    case SymmetryKind::U1: return {collective('Z', qubits)};
    case SymmetryKind::SU2: return {collective('X', qubits), collective('Y', qubits), collective('Z', qubits)};
    case SymmetryKind::Custom: break;
  }
  throw PreconditionError("the commutant oracle supports built-in symmetries only");
}

// Basis of the operators on `qubits` qubits commuting with the symmetry.
std::vector<GaussianRationalMatrix> local_algebra(SymmetryKind kind, Index qubits) {
  const Index dim = Index{1} << qubits;
  Eliminator system(dim * dim);
  for (const auto& s : symmetry_generators(kind, qubits)) add_commutator_rows(s, system);
  std::vector<GaussianRationalMatrix> basis;
  for (const auto& v : system.nullspace_basis()) {
    GaussianRationalMatrix m(dim, dim);
    for (Index r = 0; r < dim; ++r)
      for (Index c = 0; c < dim; ++c) m(r, c) = v[static_cast<std::size_t>(r * dim + c)];
    basis.push_back(std::move(m));
  }
  return basis;
}

// Embeds a k-qubit operator on the given qubits of an n-qubit register.
GaussianRationalMatrix embed(const GaussianRationalMatrix& local, const std::vector<Index>& qubits, Index n) {
  const Index dim = Index{1} << n;
  const auto k = static_cast<Index>(qubits.size());
  auto local_index = [&](Index x) {
    Index i = 0;
    for (Index q : qubits) i = (i << 1) | ((x >> (n - 1 - q)) & 1);
    return i;
  };
  auto scatter = [&](Index x, Index i) {
    for (Index j = k; j-- > 0;) {
      const Index bit = Index{1} << (n - 1 - qubits[static_cast<std::size_t>(j)]);
      x = (i & 1) ? (x | bit) : (x & ~bit);
      i >>= 1;
    }
    return x;
  };
  GaussianRationalMatrix out = GaussianRationalMatrix::Constant(dim, dim, GaussianRational(0));
  for (Index x = 0; x < dim; ++x) {
    const Index i = local_index(x);
    for (Index j = 0; j < local.cols(); ++j) {
      if (local(i, j).is_zero()) continue;
      out(x, scatter(x, j)) = local(i, j);
    }
  }
  return out;
}

void subsets(Index n, Index k, Index start, std::vector<Index>& cur, std::vector<std::vector<Index>>& out) {
  if (static_cast<Index>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (Index q = start; q < n; ++q) {
    cur.push_back(q);
    subsets(n, k, q + 1, cur, out);
    cur.pop_back();
  }
}

// omega_t(A) on t copies of an n-qubit register, copy 0 most significant.
SparseOperator omega(const GaussianRationalMatrix& a, Index n, Index t) {
  const Index d = Index{1} << n;
  const Index dim = Index{1} << (n * t);
  std::vector<std::vector<std::pair<Index, GaussianRational>>> nonzeros(static_cast<std::size_t>(d));
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c)
      if (!a(r, c).is_zero()) nonzeros[static_cast<std::size_t>(r)].emplace_back(c, a(r, c));
  std::map<std::pair<Index, Index>, GaussianRational> entries;
  for (Index x = 0; x < dim; ++x)
    for (Index s = 0; s < t; ++s) {
      const Index shift = n * (t - 1 - s);
      const Index slot = (x >> shift) & (d - 1);
      const Index rest = x & ~((d - 1) << shift);
      for (const auto& [c, v] : nonzeros[static_cast<std::size_t>(slot)]) entries[{x, rest | (c << shift)}] += v;
    }
  return sparse_from_entries(dim, std::move(entries));
}

bool is_scalar(const GaussianRationalMatrix& a) {
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < a.cols(); ++c)
      if (r == c ? a(r, c) != a(0, 0) : !a(r, c).is_zero()) return false;
  return true;
}

// Drops scalar multiples of the identity and linearly dependent operators.
std::vector<GaussianRationalMatrix> independent(const std::vector<GaussianRationalMatrix>& ops) {
  std::vector<GaussianRationalMatrix> kept;
  if (ops.empty()) return kept;
  const Index dim = ops.front().rows();
  Eliminator span(dim * dim);
  for (const auto& op : ops) {
    if (is_scalar(op)) continue;
    Eliminator::Row row;
    for (Index r = 0; r < dim; ++r)
      for (Index c = 0; c < dim; ++c)
        if (!op(r, c).is_zero()) row.emplace_back(r * dim + c, op(r, c));
    if (span.add(std::move(row))) kept.push_back(op);
  }
  return kept;
}

void require_builtin_locality(const SymmetrySpec& spec, long long n, long long k) {
  if (!spec.is_builtin()) throw PreconditionError("the commutant oracle supports built-in symmetries only");
  if (k < 2 || k > n - 1)
    throw PreconditionError("commutant_check requires 2 <= k <= n-1 (got n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
}

void require_cap(long long n, long long t) {
  if (n < 1 || t < 1) throw PreconditionError("commutant oracle requires n >= 1 and t >= 1");
  if (n * t > kCommutantCap)
    throw ResourceLimitError("commutant oracle: n*t = " + std::to_string(n * t) + " exceeds the cap of " +
                             std::to_string(kCommutantCap));
}

}  // namespace

GaussianRationalMatrix pauli(char which) {
  GaussianRationalMatrix m = GaussianRationalMatrix::Constant(2, 2, GaussianRational(0));
  switch (which) {
    case 'I': m(0, 0) = 1; m(1, 1) = 1; break;
    case 'X': m(0, 1) = 1; m(1, 0) = 1; break;
    case 'Y': m(0, 1) = -GaussianRational::i(); m(1, 0) = GaussianRational::i(); break;
    case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
    default: throw PreconditionError(std::string("unknown Pauli '") + which + "'");
  }
  return m;
}

GaussianRationalMatrix kron(const GaussianRationalMatrix& a, const GaussianRationalMatrix& b) {
  GaussianRationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

GaussianRationalMatrix pauli_string(const std::string& word) {
  if (word.empty()) throw PreconditionError("empty Pauli string");
  GaussianRationalMatrix out = pauli(word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) out = kron(out, pauli(word[i]));
  return out;
}

std::vector<GaussianRationalMatrix> symmetric_algebra_generators(const SymmetrySpec& spec, long long n, Locality k) {
  if (!spec.is_builtin()) throw PreconditionError("symmetric_algebra_generators supports built-in symmetries only");
  if (n < 1) throw PreconditionError("qubit count must be positive");
  if (n > kCommutantCap) throw ResourceLimitError("symmetric_algebra_generators: n exceeds the cap of 6");
  if (std::holds_alternative<FullAlgebra>(k)) return local_algebra(spec.kind, n);

  const long long locality = std::get<long long>(k);
  if (locality < 1 || locality > n) throw PreconditionError("locality must satisfy 1 <= k <= n");
  const auto local = local_algebra(spec.kind, locality);
  std::vector<std::vector<Index>> supports;
  std::vector<Index> cur;
  subsets(n, locality, 0, cur, supports);
  std::vector<GaussianRationalMatrix> out;
  for (const auto& support : supports)
    for (const auto& a : local) out.push_back(embed(a, support, n));
  return out;
}

long long commutant_dimension(const std::vector<GaussianRationalMatrix>& generators, long long n, long long t) {
  require_cap(n, t);
  const Index d = Index{1} << n;
  for (const auto& g : generators)
    if (g.rows() != d || g.cols() != d) throw PreconditionError("generator does not act on n qubits");
  const Index dim = Index{1} << (n * t);
  Eliminator system(dim * dim);
  for (const auto& g : independent(generators)) {
    add_commutator_rows(omega(g, n, t), system);
    if (system.nullity() == 1) break;
  }
  return system.nullity();
}

CommutantReport commutant_check(const SymmetrySpec& spec, const std::vector<GaussianRationalMatrix>& generators,
                                long long n, long long t) {
  require_cap(n, t);
  CommutantReport report;
  report.t = t;
  report.dim_gateset = commutant_dimension(generators, n, t);
  report.dim_full = commutant_dimension(symmetric_algebra_generators(spec, n, FullAlgebra{}), n, t);
  if (report.dim_full > report.dim_gateset)
    throw InvariantError("commutant oracle: full commutant larger than the gate-set commutant");
  report.is_design = report.dim_full == report.dim_gateset;
  return report;
}

CommutantReport commutant_check(const SymmetrySpec& spec, long long n, long long k, long long t) {
  require_builtin_locality(spec, n, k);
  require_cap(n, t);
  return commutant_check(spec, symmetric_algebra_generators(spec, n, k), n, t);
}

std::vector<std::string> fixture_names() { return {"z2-n2-gamma123", "z2-n2-gamma134", "z2-n2-gamma1234"}; }

GateSetFixture fixture(const std::string& name) {
  // two-qubit Z2 gate sets generated by XX (1), ZZ (2), ZI (3), IZ (4)
  static const std::map<char, std::string> words{{'1', "XX"}, {'2', "ZZ"}, {'3', "ZI"}, {'4', "IZ"}};
  const std::string prefix = "z2-n2-gamma";
  if (name.rfind(prefix, 0) != 0) throw PreconditionError("unknown fixture '" + name + "'");
  const std::string digits = name.substr(prefix.size());
  if (digits != "123" && digits != "134" && digits != "1234") throw PreconditionError("unknown fixture '" + name + "'");

  GateSetFixture f;
  f.name = name;
  f.spec = SymmetrySpec::builtin(SymmetryKind::Z2);
  f.n = 2;
  std::string listed;
  for (char c : digits) {
    f.generators.push_back(pauli_string(words.at(c)));
    listed += (listed.empty() ? "" : ", ") + words.at(c);
  }
  f.description = "Z2 on 2 qubits, gates exp(i theta P) for P in {" + listed + "}";
  return f;
}

}  // namespace qdesign
