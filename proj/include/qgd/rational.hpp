#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qgd {

/// Exact arbitrary-precision rational scalar, backed by GMP.
///
/// All arithmetic is exact; division by zero throws. This is the default
/// backend for every identity that the library checks with exact equality.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& v) : v_(v) {}

  static Rational from_string(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    v.canonicalize();
    return Rational(v);
  }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  /// Integer power, negative exponents allowed (value must be nonzero then).
  Rational pow(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
      if (e < 0) throw std::domain_error("Rational: 0^negative");
      return Rational(0);
    }
    mpz_class num = v_.get_num(), den = v_.get_den();
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), a);
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), a);
    mpq_class r = (e > 0) ? mpq_class(pn, pd) : mpq_class(pd, pn);
    r.canonicalize();
    return Rational(r);
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  std::string str() const { return v_.get_str(); }
  const mpq_class& raw() const { return v_; }

private:
  mpq_class v_;
};

inline Rational abs(const Rational& a) { return a.abs(); }

}  // namespace qgd
