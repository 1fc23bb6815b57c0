#include <algorithm>
#include <map>
#include <numeric>

#include "qdesign/errors.hpp"
#include "qdesign/oracles.hpp"

namespace qdesign {

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceLimitError("collision oracle: projection overflows 64 bits");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceLimitError("collision oracle: projection overflows 64 bits");
  return r;
}

long long small(const BigInt& v, const char* what) {
  static const BigInt limit = BigInt(1) << 62;
  if (abs(v) >= limit) throw ResourceLimitError(std::string("collision oracle: ") + what + " exceeds 64 bits");
  return v.convert_to<long long>();
}

// All y >= 0 with <m, y> = weight, depth first over coordinates sorted by
// descending m; buckets them by rows * y.
class WeightLayer {
 public:
  WeightLayer(const std::vector<long long>& m, const std::vector<std::vector<long long>>& columns,
              const std::vector<std::size_t>& order, std::uint64_t& visited, std::uint64_t budget)
      : m_(m), columns_(columns), order_(order), visited_(visited), budget_(budget) {}

  // Returns the first colliding pair in enumeration order, if any.
  std::optional<std::pair<std::vector<long long>, std::vector<long long>>> run(long long weight) {
    buckets_.clear();
    collision_.reset();
    y_.assign(m_.size(), 0);
    key_.assign(columns_.empty() ? 0 : columns_.front().size(), 0);
    visit(0, weight);
    return collision_;
  }

 private:
  void visit(std::size_t depth, long long remaining) {
    if (collision_) return;
    if (++visited_ > budget_)
      throw ResourceLimitError("collision oracle: enumeration budget of " + std::to_string(budget_) + " exhausted");
    const std::size_t coord = order_[depth];
    const long long w = m_[coord];
    if (depth + 1 == order_.size()) {
      if (remaining % w != 0) return;
      place(coord, remaining / w);
      record();
      place(coord, -(remaining / w));
      return;
    }
    long long v = 0;
    while (true) {
      visit(depth + 1, remaining - v * w);
      if (collision_ || (v + 1) * w > remaining) break;
      place(coord, 1);
      ++v;
    }
    place(coord, -v);
  }

  // y[coord] += delta, keeping the projection in sync.
  void place(std::size_t coord, long long delta) {
    if (delta == 0) return;
    y_[coord] += delta;
    const auto& column = columns_[coord];
    for (std::size_t r = 0; r < column.size(); ++r) key_[r] = checked_add(key_[r], checked_mul(column[r], delta));
  }

  void record() {
    auto [it, inserted] = buckets_.try_emplace(key_, y_);
    if (!inserted && it->second != y_) collision_.emplace(it->second, y_);
  }

  const std::vector<long long>& m_;
  const std::vector<std::vector<long long>>& columns_;
  const std::vector<std::size_t>& order_;
  std::uint64_t& visited_;
  std::uint64_t budget_;
  std::vector<long long> y_;
  std::vector<long long> key_;
  std::map<std::vector<long long>, std::vector<long long>> buckets_;
  std::optional<std::pair<std::vector<long long>, std::vector<long long>>> collision_;
};

IntegerVector to_integer_vector(const std::vector<long long>& v) {
  IntegerVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace

CollisionReport collision_exists(const IrrepTable& table, const ConstraintSystem& system, long long t,
                                 std::uint64_t budget) {
  if (t < 0) throw PreconditionError("collision_exists requires t >= 0");
  const Eigen::Index labels = table.multiplicities.size();
  if (system.rows.cols() != labels) throw PreconditionError("collision_exists: table and system disagree in size");

  std::vector<long long> m(static_cast<std::size_t>(labels));
  std::vector<std::vector<long long>> columns(static_cast<std::size_t>(labels));
  for (Eigen::Index l = 0; l < labels; ++l) {
    m[l] = small(table.multiplicities(l), "multiplicity");
    if (m[l] <= 0) throw PreconditionError("collision_exists: multiplicities must be positive");
    for (Eigen::Index r = 0; r < system.rows.rows(); ++r) columns[l].push_back(small(system.rows(r, l), "constraint entry"));
  }
  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m[a] > m[b]; });

  CollisionReport report;
  report.t = t;
  WeightLayer layer(m, columns, order, report.enumerated, budget);
  // graded by weight, so the first collision has minimal weight
  for (long long w = 0; w <= t; ++w) {
    if (auto hit = layer.run(w)) {
      report.found = true;
      report.weight = BigInt(w);
      IntegerVector y = to_integer_vector(hit->first), y_prime = to_integer_vector(hit->second);
      // orient so that y - y' has a positive leading entry
      if (lex_less(y, y_prime)) std::swap(y, y_prime);
      report.pair.emplace(std::move(y), std::move(y_prime));
      return report;
    }
  }
  return report;
}

bool is_collision(const IrrepTable& table, const ConstraintSystem& system, const IntegerVector& y,
                  const IntegerVector& y_prime, long long t) {
  const Eigen::Index labels = table.multiplicities.size();
  if (y.size() != labels || y_prime.size() != labels) return false;
  if (y == y_prime) return false;
  for (Eigen::Index l = 0; l < labels; ++l)
    if (y(l) < 0 || y_prime(l) < 0) return false;
  const BigInt w = table.multiplicities.dot(y);
  if (w != table.multiplicities.dot(y_prime) || w > t) return false;
  return IntegerVector(system.rows * y) == IntegerVector(system.rows * y_prime);
}

std::pair<IntegerVector, IntegerVector> split_signs(const IntegerVector& x) {
  IntegerVector y = IntegerVector::Zero(x.size()), y_prime = IntegerVector::Zero(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) > 0) y(i) = x(i);
    if (x(i) < 0) y_prime(i) = -x(i);
  }
  return {y, y_prime};
}

}  // namespace qdesign
