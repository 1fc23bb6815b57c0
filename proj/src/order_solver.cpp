#include "qdesign/order_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "qdesign/combinatorics.hpp"
#include "qdesign/errors.hpp"

namespace qdesign {

DesignOrder DesignOrder::finite(BigInt t_max, std::optional<SolutionCertificate> certificate) {
  DesignOrder order;
  order.tag = Tag::Finite;
  order.t_max = std::move(t_max);
  order.certificate = std::move(certificate);
  return order;
}

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("QDESIGN_NODE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return value;
  }
  return 100'000'000;
}

SearchOptions default_search_options() {
  SearchOptions options;
  options.node_budget = default_node_budget();
  return options;
}

BigInt certificate_cost(const IntegerVector& x, const IntegerVector& multiplicities) {
  if (x.size() != multiplicities.size()) throw InvariantError("certificate_cost: length mismatch");
  BigInt signed_sum = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) signed_sum += x(i) * multiplicities(i);
  if (signed_sum != 0) throw InvariantError("certificate_cost: <m, x> != 0 for " + to_string(x));
  return exact_div(weighted_l1(x, multiplicities), BigInt(2));
}

IntegerVector canonical_sign(const IntegerVector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) > 0) return x;
    if (x(i) < 0) return -x;
  }
  return x;
}

namespace {

// ---- scalar helpers: checked int64 for the fast path, BigInt as fallback ----

struct Overflow {};

inline long long add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline long long mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline long long absval(long long a) {
  if (a == std::numeric_limits<long long>::min()) throw Overflow{};
  return a < 0 ? -a : a;
}
inline long long fdiv(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline long long cdiv(long long a, long long b) { return -fdiv(-a, b); }
inline BigInt to_big(long long a) { return BigInt(a); }

inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt absval(const BigInt& a) { return abs(a); }
inline BigInt fdiv(const BigInt& a, const BigInt& b) { return floor_div(a, b); }
inline BigInt cdiv(const BigInt& a, const BigInt& b) { return ceil_div(a, b); }
inline const BigInt& to_big(const BigInt& a) { return a; }

template <typename Int>
Int from_big(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    static const BigInt limit = BigInt(1) << 62;
    if (abs(v) >= limit) throw Overflow{};
    return v.template convert_to<long long>();
  }
}

// Kernel lattice in echelon form over coordinates sorted by descending weight.
template <typename Int>
struct Problem {
  std::size_t length = 0;
  std::vector<Int> weights;              // permuted m
  std::vector<std::vector<Int>> rows;    // echelon basis rows, permuted coordinates
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> original;     // permuted position -> label index
};

struct Layout {
  IntegerMatrix rows;  // echelon basis rows, permuted
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> original;
  IntegerVector weights;
};

Layout make_layout(const KernelBasis& kernel, const IntegerVector& m) {
  Layout layout;
  const auto length = static_cast<std::size_t>(m.size());
  layout.original.resize(length);
  std::iota(layout.original.begin(), layout.original.end(), std::size_t{0});
  std::stable_sort(layout.original.begin(), layout.original.end(),
                   [&](std::size_t a, std::size_t b) { return m(static_cast<Eigen::Index>(a)) > m(static_cast<Eigen::Index>(b)); });
  IntegerMatrix permuted(kernel.rank(), m.size());
  layout.weights.resize(m.size());
  for (std::size_t c = 0; c < length; ++c) {
    const auto src = static_cast<Eigen::Index>(layout.original[c]);
    permuted.col(static_cast<Eigen::Index>(c)) = kernel.vectors.row(src).transpose();
    layout.weights(static_cast<Eigen::Index>(c)) = m(src);
  }
  const RowEchelonBasis echelon = row_hermite_form(permuted);
  layout.rows = echelon.rows;
  for (auto p : echelon.pivots) layout.pivots.push_back(static_cast<std::size_t>(p));
  return layout;
}

template <typename Int>
Problem<Int> convert(const Layout& layout) {
  Problem<Int> p;
  p.length = static_cast<std::size_t>(layout.weights.size());
  p.original = layout.original;
  p.pivots = layout.pivots;
  for (Eigen::Index c = 0; c < layout.weights.size(); ++c) p.weights.push_back(from_big<Int>(layout.weights(c)));
  for (Eigen::Index r = 0; r < layout.rows.rows(); ++r) {
    std::vector<Int> row;
    for (Eigen::Index c = 0; c < layout.rows.cols(); ++c) row.push_back(from_big<Int>(layout.rows(r, c)));
    p.rows.push_back(std::move(row));
  }
  return p;
}

// Best certificate so far, shared by all workers.  Costs are kept doubled
// (weighted L1 norm) so no halving happens during the search.
template <typename Int>
class Incumbent {
 public:
  Incumbent(Int twice_bound, std::uint64_t budget) : twice_bound_(std::move(twice_bound)), budget_(budget) {}

  // Returns the current doubled bound if it changed since `seen`.
  bool refresh(std::uint64_t& seen, Int& twice_bound) {
    const std::uint64_t v = version_.load(std::memory_order_acquire);
    if (v == seen) return false;
    std::lock_guard lock(mutex_);
    twice_bound = twice_bound_;
    seen = version_.load(std::memory_order_relaxed);
    return true;
  }

  void offer(const Int& twice_cost, IntegerVector canonical) {
    std::lock_guard lock(mutex_);
    if (found_) {
      if (twice_cost > twice_bound_) return;
      if (twice_cost == twice_bound_ && !lex_less(canonical, vector_)) return;
    } else if (twice_cost > twice_bound_) {
      return;
    }
    const bool improved = !found_ || twice_cost < twice_bound_;
    found_ = true;
    twice_bound_ = twice_cost;
    vector_ = std::move(canonical);
    if (improved) version_.fetch_add(1, std::memory_order_release);
  }

  // Adds to the global node count; false once the budget is spent.
  bool charge(std::uint64_t nodes) {
    const std::uint64_t total = nodes_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
    if (total > budget_) stop_.store(true, std::memory_order_relaxed);
    return !stop_.load(std::memory_order_relaxed);
  }
  bool stopped() const { return stop_.load(std::memory_order_relaxed); }
  void stop() { stop_.store(true, std::memory_order_relaxed); }

  std::uint64_t nodes() const { return nodes_.load(); }
  std::uint64_t flush_interval() const { return std::min<std::uint64_t>(1024, budget_ + 1); }
  bool found() const { return found_; }
  const Int& twice_bound() const { return twice_bound_; }
  const IntegerVector& vector() const { return vector_; }

 private:
  std::mutex mutex_;
  Int twice_bound_;
  bool found_ = false;
  IntegerVector vector_;
  std::atomic<std::uint64_t> version_{1};
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
  std::uint64_t budget_;
};

struct BudgetExhausted {};

template <typename Int>
class Worker {
 public:
  Worker(const Problem<Int>& problem, Incumbent<Int>& incumbent)
      : p_(problem),
        shared_(incumbent),
        x_(problem.length, Int(0)),
        coef_(problem.rows.size(), Int(0)),
        abs_sum_(problem.rows.size() + 1, Int(0)),
        signed_sum_(problem.rows.size() + 1, Int(0)) {
    shared_.refresh(seen_, twice_bound_);
  }

  ~Worker() { shared_.charge(pending_); }

  // Runs the subtree below a fixed coefficient prefix.
  void run(const std::vector<Int>& prefix) {
    std::size_t level = 0;
    bool leading = true;
    for (; level < prefix.size(); ++level) {
      if (!assign(level, prefix[level])) {
        for (std::size_t l = level + 1; l-- > 0;) unassign(l);
        return;
      }
      if (prefix[level] != 0) leading = false;
    }
    descend(level, leading);
    for (std::size_t l = level; l-- > 0;) unassign(l);
  }

  // Admissible values for one level given the current bound, in visiting order.
  std::vector<Int> choices(std::size_t level, bool leading) {
    shared_.refresh(seen_, twice_bound_);
    std::vector<Int> out;
    Int lo, hi, centre;
    if (!range(level, leading, lo, hi, centre)) return out;
    for (Int step = Int(0);; step = add(step, Int(1))) {
      const Int up = add(centre, step);
      const Int down = add(centre, -step - Int(1));
      const bool up_ok = up <= hi;
      const bool down_ok = down >= lo;
      if (!up_ok && !down_ok) break;
      if (up_ok) out.push_back(up);
      if (down_ok) out.push_back(down);
    }
    return out;
  }

  bool assign(std::size_t level, const Int& value) {
    coef_[level] = value;
    const std::size_t start = p_.pivots[level];
    if (value != 0) {
      const auto& row = p_.rows[level];
      for (std::size_t c = start; c < p_.length; ++c)
        if (row[c] != 0) x_[c] = add(x_[c], mul(value, row[c]));
    }
    return settle(level);
  }

  void unassign(std::size_t level) {
    const Int value = coef_[level];
    if (value == 0) return;
    const auto& row = p_.rows[level];
    for (std::size_t c = p_.pivots[level]; c < p_.length; ++c)
      if (row[c] != 0) x_[c] = add(x_[c], -mul(value, row[c]));
    coef_[level] = 0;
  }

 private:
  // Coordinates fixed once `level` is assigned: [pivot(level), pivot(level+1)).
  std::size_t block_end(std::size_t level) const {
    return level + 1 < p_.pivots.size() ? p_.pivots[level + 1] : p_.length;
  }

  // Box and partial-sum checks on the newly fixed block; updates prefix sums.
  bool settle(std::size_t level) {
    Int abs_sum = abs_sum_[level];
    Int signed_sum = signed_sum_[level];
    for (std::size_t c = p_.pivots[level]; c < block_end(level); ++c) {
      if (x_[c] == 0) continue;
      const Int weighted = mul(p_.weights[c], x_[c]);
      const Int twice = mul(Int(2), absval(weighted));
      if (twice > twice_bound_) return false;
      abs_sum = add(abs_sum, absval(weighted));
      signed_sum = add(signed_sum, weighted);
    }
    // cost >= max(positive part, negative part) of any sub-sum
    if (add(abs_sum, absval(signed_sum)) > twice_bound_) return false;
    abs_sum_[level + 1] = abs_sum;
    signed_sum_[level + 1] = signed_sum;
    return true;
  }

  bool range(std::size_t level, bool leading, Int& lo, Int& hi, Int& centre) const {
    const std::size_t c = p_.pivots[level];
    const Int pivot = p_.rows[level][c];
    const Int& base = x_[c];
    const Int radius = fdiv(twice_bound_, mul(Int(2), p_.weights[c]));
    lo = cdiv(add(-radius, -base), pivot);
    hi = fdiv(add(radius, -base), pivot);
    if (leading && lo < 0) lo = 0;
    if (lo > hi) return false;
    // value putting the pivot coordinate closest to zero
    centre = fdiv(add(mul(Int(2), -base), pivot), mul(Int(2), pivot));
    if (centre < lo) centre = lo;
    if (centre > hi) centre = hi;
    return true;
  }

  void tick() {
    if (++pending_ < shared_.flush_interval()) return;
    const bool ok = shared_.charge(pending_);
    pending_ = 0;
    if (!ok) throw BudgetExhausted{};
  }

  void leaf() {
    const std::size_t d = p_.rows.size();
    bool nonzero = false;
    for (std::size_t l = 0; l < d && !nonzero; ++l) nonzero = coef_[l] != 0;
    if (!nonzero) return;
    if (signed_sum_[d] != 0) throw InvariantError("minimize_cost: echelon point leaves the kernel");
    const Int& twice_cost = abs_sum_[d];
    if (twice_cost > twice_bound_) return;
    IntegerVector vec(static_cast<Eigen::Index>(p_.length));
    for (std::size_t c = 0; c < p_.length; ++c) vec(static_cast<Eigen::Index>(p_.original[c])) = to_big(x_[c]);
    shared_.offer(twice_cost, canonical_sign(vec));
    shared_.refresh(seen_, twice_bound_);
  }

  void descend(std::size_t level, bool leading) {
    if (level == p_.rows.size()) {
      leaf();
      return;
    }
    shared_.refresh(seen_, twice_bound_);
    Int lo, hi, centre;
    if (!range(level, leading, lo, hi, centre)) return;
    // zig-zag outwards from the centre, re-reading the bound as it shrinks
    bool up_open = true, down_open = true;
    Int up = centre, down = add(centre, Int(-1));
    while (up_open || down_open) {
      for (int side = 0; side < 2; ++side) {
        bool& open = side == 0 ? up_open : down_open;
        if (!open) continue;
        Int& value = side == 0 ? up : down;
        if (value < lo || value > hi) {
          open = false;
          continue;
        }
        tick();
        const Int chosen = value;
        value = side == 0 ? add(value, Int(1)) : add(value, Int(-1));
        if (assign(level, chosen)) descend(level + 1, leading && chosen == 0);
        unassign(level);
        if (shared_.refresh(seen_, twice_bound_)) {
          Int nlo, nhi, ncentre;
          if (!range(level, leading, nlo, nhi, ncentre)) return;
          lo = nlo;
          hi = nhi;
        }
      }
    }
  }

  const Problem<Int>& p_;
  Incumbent<Int>& shared_;
  std::vector<Int> x_;
  std::vector<Int> coef_;
  std::vector<Int> abs_sum_;
  std::vector<Int> signed_sum_;
  Int twice_bound_;
  std::uint64_t seen_ = 0;
  std::uint64_t pending_ = 0;
};

// Splits the tree into coefficient prefixes for parallel workers.
template <typename Int>
std::vector<std::vector<Int>> split_tasks(const Problem<Int>& problem, Incumbent<Int>& incumbent, unsigned jobs) {
  std::vector<std::vector<Int>> tasks{{}};
  if (jobs <= 1) return tasks;
  const std::size_t target = 8 * static_cast<std::size_t>(jobs);
  Worker<Int> probe(problem, incumbent);
  for (std::size_t depth = 0; depth < problem.rows.size() && depth < 3 && tasks.size() < target; ++depth) {
    std::vector<std::vector<Int>> next;
    for (const auto& prefix : tasks) {
      bool leading = true;
      std::size_t level = 0;
      bool ok = true;
      for (; level < prefix.size(); ++level) {
        if (!probe.assign(level, prefix[level])) {
          ok = false;
          ++level;
          break;
        }
        if (prefix[level] != 0) leading = false;
      }
      if (ok) {
        for (const Int& value : probe.choices(depth, leading)) {
          auto extended = prefix;
          extended.push_back(value);
          next.push_back(std::move(extended));
        }
      }
      for (std::size_t l = level; l-- > 0;) probe.unassign(l);
    }
    tasks = std::move(next);
  }
  return tasks;
}

template <typename Int>
void search(const Problem<Int>& problem, Incumbent<Int>& incumbent, unsigned jobs) {
  const auto tasks = split_tasks(problem, incumbent, jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    try {
      Worker<Int> worker(problem, incumbent);
      for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
        if (incumbent.stopped()) throw BudgetExhausted{};
        worker.run(tasks[i]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      incumbent.stop();
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

template <typename Int>
SolutionCertificate run_search(const Layout& layout, const IntegerVector& m, const BigInt& t0,
                               const SearchOptions& options, SearchStats* stats) {
  const Problem<Int> problem = convert<Int>(layout);
  Incumbent<Int> incumbent(from_big<Int>(BigInt(2 * t0)), options.node_budget);
  try {
    search(problem, incumbent, std::max(1u, options.jobs));
  } catch (const BudgetExhausted&) {
    if (stats) stats->nodes = incumbent.nodes();
    BigInt lightest = m(0);
    for (Eigen::Index i = 1; i < m.size(); ++i) lightest = std::min(lightest, m(i));
    const BigInt best = incumbent.found() ? exact_div(to_big(incumbent.twice_bound()), BigInt(2)) : t0;
    throw ResourceLimitError("node budget of " + std::to_string(options.node_budget) +
                                 " exhausted; t_max lies in the reported interval",
                             lightest - 1, best - 1);
  }
  if (stats) stats->nodes = incumbent.nodes();
  if (!incumbent.found())
    throw PreconditionError("minimize_cost: no kernel point has cost <= t0");
  SolutionCertificate cert;
  cert.vector = incumbent.vector();
  cert.cost = certificate_cost(cert.vector, m);
  return cert;
}

}  // namespace

SolutionCertificate minimize_cost(const KernelBasis& kernel, const IntegerVector& multiplicities, const BigInt& t0,
                                  const SearchOptions& options, SearchStats* stats) {
  if (kernel.empty()) throw PreconditionError("minimize_cost: empty kernel");
  if (kernel.dimension() != multiplicities.size()) throw PreconditionError("minimize_cost: dimension mismatch");
  for (Eigen::Index i = 0; i < multiplicities.size(); ++i)
    if (multiplicities(i) <= 0) throw PreconditionError("minimize_cost: multiplicities must be positive");
  if (t0 < 0) throw PreconditionError("minimize_cost: negative bound");

  const Layout layout = make_layout(kernel, multiplicities);
  try {
    return run_search<long long>(layout, multiplicities, t0, options, stats);
  } catch (const Overflow&) {
    return run_search<BigInt>(layout, multiplicities, t0, options, stats);
  }
}

std::optional<SolutionCertificate> seed_certificate(const SymmetrySpec& spec, long long n, long long k,
                                                    const KernelBasis& kernel) {
  if (kernel.empty()) return std::nullopt;
  const IrrepTable table = irrep_table(spec, n);
  const IntegerVector& m = table.multiplicities;

  std::vector<IntegerVector> candidates;
  switch (spec.kind) {
    case SymmetryKind::Z2: candidates.push_back(make_vector({1, -1})); break;
    case SymmetryKind::U1: candidates.push_back(u1_witness(n, k)); break;
    case SymmetryKind::SU2:
      if (n >= 2 * (k / 2 + 1)) candidates.push_back(su2_witness(n, k));
      break;
    case SymmetryKind::Custom: break;
  }
  const IntegerMatrix reduced = lll_reduce(kernel.vectors, m);
  for (Eigen::Index i = 0; i < reduced.cols(); ++i) candidates.push_back(reduced.col(i));

  std::optional<SolutionCertificate> best;
  for (const auto& v : candidates) {
    if (is_zero(v)) continue;
    SolutionCertificate cert{canonical_sign(v), certificate_cost(v, m)};
    if (!best || cert.cost < best->cost || (cert.cost == best->cost && lex_less(cert.vector, best->vector)))
      best = std::move(cert);
  }
  return best;
}

std::optional<BigInt> seed_upper_bound(const SymmetrySpec& spec, long long n, long long k,
                                       const KernelBasis& kernel) {
  auto cert = seed_certificate(spec, n, k, kernel);
  if (!cert) return std::nullopt;
  return cert->cost;
}

DesignOrder max_design_order(const SymmetrySpec& spec, long long n, long long k, const SearchOptions& options,
                             SearchStats* stats) {
  const ConstraintSystem system = constraint_system(spec, n, k);
  const IrrepTable table = irrep_table(spec, n);
  const KernelBasis kernel = integer_kernel(system.rows);
  if (kernel.empty()) {
    if (stats) stats->nodes = 0;
    return DesignOrder::infinite();
  }
  const auto seed = seed_certificate(spec, n, k, kernel);
  SolutionCertificate cert = minimize_cost(kernel, table.multiplicities, seed->cost, options, stats);

  // independent re-check of the answer
  if (is_zero(cert.vector) || !system.annihilates(cert.vector))
    throw InvariantError("max_design_order: certificate is not a nonzero kernel point");
  if (certificate_cost(cert.vector, table.multiplicities) != cert.cost)
    throw InvariantError("max_design_order: certificate cost mismatch");
  if (cert.cost > seed->cost) throw InvariantError("max_design_order: optimum exceeds seed bound");

  BigInt t_max = cert.cost - 1;
  return DesignOrder::finite(std::move(t_max), std::move(cert));
}

namespace {

DesignOrder from_witness(const SymmetrySpec& spec, long long n, long long k, const BigInt& bound) {
  IntegerVector witness;
  switch (spec.kind) {
    case SymmetryKind::Z2: witness = make_vector({1, -1}); break;
    case SymmetryKind::U1: witness = u1_witness(n, k); break;
    case SymmetryKind::SU2: witness = su2_witness(n, k); break;
    case SymmetryKind::Custom: break;
  }
  std::optional<SolutionCertificate> cert;
  const IrrepTable table = irrep_table(spec, n);
  const BigInt cost = certificate_cost(witness, table.multiplicities);
  if (cost == bound) cert = SolutionCertificate{canonical_sign(witness), cost};
  return DesignOrder::finite(bound - 1, std::move(cert));
}

std::optional<DesignOrder> exceptional(long long n, const std::vector<std::pair<long long, long long>>& table) {
  for (const auto& [size, value] : table)
    if (size == n) return value < 0 ? DesignOrder::infinite() : DesignOrder::finite(BigInt(value));
  return std::nullopt;
}

}  // namespace

std::optional<DesignOrder> theorem_order(const SymmetrySpec& spec, long long n, long long k) {
  if (!spec.is_builtin()) return std::nullopt;
  if (n < 3 || k < 2 || k > n - 1) return std::nullopt;

  switch (spec.kind) {
    case SymmetryKind::Z2: {
      BigInt half = 1;
      half <<= static_cast<unsigned>(n - 1);
      return from_witness(spec, n, k, half);
    }
    case SymmetryKind::U1: {
      const bool covered = k <= 4 || (k < 63 && n >= (1LL << k));
      if (!covered) return std::nullopt;
      return from_witness(spec, n, k, b_bound(n, k));
    }
    case SymmetryKind::SU2: {
      // -1 marks Infinite
      if (k == 2 || k == 3) {
        if (auto special = exceptional(n, {{3, -1}, {6, 9}, {7, 19}, {8, 19}})) return special;
        return from_witness(spec, n, k, c_bound(n, k));
      }
      if (k == 4) {
        if (auto special = exceptional(n, {{5, -1}, {8, 34}, {9, 89}, {10, 95}, {11, 191}, {12, 329}}))
          return special;
        return from_witness(spec, n, k, c_bound(n, k));
      }
      const long long shift = 2 * (k / 2 + 1);
      if (shift >= 63 || n < (1LL << shift)) return std::nullopt;
      return from_witness(spec, n, k, c_bound(n, k));
    }
    case SymmetryKind::Custom: break;
  }
  return std::nullopt;
}

}  // namespace qdesign
