#include "qdesign/numeric.hpp"

#include <sstream>

#include "qdesign/errors.hpp"

namespace qdesign {

IntegerVector make_vector(std::initializer_list<long long> entries) {
  IntegerVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long long e : entries) v(i++) = e;
  return v;
}

IntegerVector make_vector(const std::vector<BigInt>& entries) {
  IntegerVector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
  return v;
}

std::vector<BigInt> to_std_vector(const IntegerVector& v) {
  return std::vector<BigInt>(v.data(), v.data() + v.size());
}

std::string to_string(const IntegerVector& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v(i);
  }
  os << ')';
  return os.str();
}

BigInt weighted_l1(const IntegerVector& x, const IntegerVector& weights) {
  BigInt total = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) total += abs(x(i)) * weights(i);
  return total;
}

bool is_zero(const IntegerVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

bool lex_less(const IntegerVector& a, const IntegerVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  divide_qr(a, b, q, r);  // truncates toward zero
  if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return -floor_div(-a, b); }

BigInt exact_div(const BigInt& a, const BigInt& b) {
  BigInt q, r;
  divide_qr(a, b, q, r);
  if (r != 0) {
    std::ostringstream os;
    os << "non-exact division " << a << " / " << b;
    throw InvariantError(os.str());
  }
  return q;
}

}  // namespace qdesign
