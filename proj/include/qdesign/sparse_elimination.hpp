#pragma once

// Online exact Gaussian elimination on sparse rows.  Rows are fed one at a
// time and reduced against the pivots found so far; the result gives the rank
// of the stacked system and a basis of its nullspace.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qdesign {

template <typename Scalar>
class SparseEliminator {
 public:
  using Entry = std::pair<std::int64_t, Scalar>;
  using Row = std::vector<Entry>;

  explicit SparseEliminator(std::int64_t unknowns) : pivots_(static_cast<std::size_t>(unknowns)) {}

  std::int64_t unknowns() const { return static_cast<std::int64_t>(pivots_.size()); }
  std::int64_t rank() const { return rank_; }
  std::int64_t nullity() const { return unknowns() - rank_; }

  // Entries may be unsorted and repeat a column; they are summed.
  // Returns true when the row was independent of the previous ones.
  bool add(Row row) {
    normalise(row);
    std::size_t pos = 0;
    while (pos < row.size()) {
      const auto col = static_cast<std::size_t>(row[pos].first);
      if (!pivots_[col]) {
        ++pos;
        continue;
      }
      const Scalar factor = row[pos].second;
      row = axpy(row, pos, factor, *pivots_[col]);
    }
    if (row.empty()) return false;
    const Scalar lead = row.front().second;
    for (auto& e : row) e.second /= lead;
    pivots_[static_cast<std::size_t>(row.front().first)] = std::move(row);
    ++rank_;
    return true;
  }

  // One vector per free column: that column set to 1, the other free columns
  // to 0, pivot columns solved from the stored rows.
  std::vector<std::vector<Scalar>> nullspace_basis() const {
    std::vector<std::vector<Scalar>> basis;
    const std::size_t n = pivots_.size();
    for (std::size_t free = 0; free < n; ++free) {
      if (pivots_[free]) continue;
      std::vector<Scalar> x(n, Scalar(0));
      x[free] = Scalar(1);
      // a pivot row only references columns to its right
      for (std::size_t p = std::min(free, n); p-- > 0;) {
        if (!pivots_[p]) continue;
        Scalar value(0);
        bool touched = false;
        for (std::size_t e = 1; e < pivots_[p]->size(); ++e) {
          const auto& [c, coeff] = (*pivots_[p])[e];
          if (is_zero(x[static_cast<std::size_t>(c)])) continue;
          value -= coeff * x[static_cast<std::size_t>(c)];
          touched = true;
        }
        if (touched) x[p] = value;
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  static bool is_zero(const Scalar& s) { return s == Scalar(0); }

  static void normalise(Row& row) {
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    Row merged;
    merged.reserve(row.size());
    for (auto& e : row) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(std::move(e));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Entry& e) { return is_zero(e.second); }),
                 merged.end());
    row = std::move(merged);
  }

  // row - factor * pivot, where pivot's leading column equals row[pos].
  static Row axpy(const Row& row, std::size_t pos, const Scalar& factor, const Row& pivot) {
    Row out;
    out.reserve(row.size() + pivot.size());
    out.insert(out.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(pos));
    std::size_t i = pos + 1, j = 1;
    while (i < row.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
        out.push_back(row[i++]);
      } else if (i == row.size() || pivot[j].first < row[i].first) {
        out.emplace_back(pivot[j].first, -(factor * pivot[j].second));
        ++j;
      } else {
        Scalar v = row[i].second - factor * pivot[j].second;
        if (!is_zero(v)) out.emplace_back(row[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<std::optional<Row>> pivots_;
  std::int64_t rank_ = 0;
};

}  // namespace qdesign
