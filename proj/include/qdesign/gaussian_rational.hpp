#pragma once

// Exact complex scalar a + b i with a, b rational, usable as an Eigen scalar.

#include <iosfwd>
#include <string>

#include "qdesign/numeric.hpp"

namespace qdesign {

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long long re) : re_(re) {}
  GaussianRational(int re) : re_(re) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }

  GaussianRational conjugate() const { return {re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (im_ == 0 && o.im_ == 0) {
      re_ *= o.re_;
      return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.im_ == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    const Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
    Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
    im_ = (im_ * o.re_ - re_ * o.im_) / norm;
    re_ = std::move(re);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

 private:
  Rational re_;
  Rational im_;
};

// Found by Eigen through argument-dependent lookup.
inline const Rational& real(const GaussianRational& z) { return z.real(); }
inline const Rational& imag(const GaussianRational& z) { return z.imag(); }
inline GaussianRational conj(const GaussianRational& z) { return z.conjugate(); }
inline Rational abs2(const GaussianRational& z) { return z.real() * z.real() + z.imag() * z.imag(); }

std::string to_string(const GaussianRational& z);
std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

using GaussianRationalMatrix = Matrix<GaussianRational>;
using GaussianRationalVector = Vector<GaussianRational>;

}  // namespace qdesign

namespace Eigen {

template <>
struct NumTraits<qdesign::GaussianRational> : GenericNumTraits<qdesign::GaussianRational> {
  using Real = qdesign::Rational;
  using NonInteger = qdesign::GaussianRational;
  using Literal = qdesign::GaussianRational;
  using Nested = qdesign::GaussianRational;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 80,
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
