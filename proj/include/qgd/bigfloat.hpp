#pragma once

#include <mpfr.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace qgd {

/// Arbitrary-precision real scalar backed by MPFR.
///
/// Precision is carried per value; binary operations work at the larger of
/// the two operand precisions. New values (literals, parsed strings) pick up
/// the thread's working precision, which is set from a Context's decimal
/// digit count before a computation starts.
class BigFloat {
public:
  static long digits_to_bits(int digits) {
    // log2(10) = 3.3219..., plus guard bits
    return static_cast<long>(digits * 3.3219280948873623) + 32;
  }

  static std::atomic<long>& base_prec_bits() {
    static std::atomic<long> bits{digits_to_bits(40)};
    return bits;
  }
  static long& thread_prec_bits() {
    thread_local long bits = 0;  // 0 = use process base
    return bits;
  }
  static long working_prec() {
    long t = thread_prec_bits();
    return t > 0 ? t : base_prec_bits().load();
  }
  static void set_base_decimal_digits(int digits) {
    base_prec_bits().store(digits_to_bits(digits));
  }

  /// RAII bump of the calling thread's working precision. Never lowers it.
  struct PrecisionGuard {
    long saved;
    explicit PrecisionGuard(int digits) : saved(thread_prec_bits()) {
      long want = digits_to_bits(digits);
      if (want > working_prec()) thread_prec_bits() = want;
    }
    ~PrecisionGuard() { thread_prec_bits() = saved; }
  };

  /// RAII raise of the working precision by a number of guard bits, for the
  /// error-amplifying inner loops (deep flow levels, difference quotients).
  struct PrecisionBump {
    long saved;
    explicit PrecisionBump(long extra_bits) : saved(thread_prec_bits()) {
      thread_prec_bits() = working_prec() + extra_bits;
    }
    ~PrecisionBump() { thread_prec_bits() = saved; }
  };

  BigFloat() { mpfr_init2(v_, working_prec()); mpfr_set_zero(v_, 1); }
  BigFloat(long n) { mpfr_init2(v_, working_prec()); mpfr_set_si(v_, n, MPFR_RNDN); }
  BigFloat(long num, long den) {
    mpfr_init2(v_, working_prec());
    mpfr_set_si(v_, num, MPFR_RNDN);
    mpfr_div_si(v_, v_, den, MPFR_RNDN);
  }
  explicit BigFloat(double d) { mpfr_init2(v_, working_prec()); mpfr_set_d(v_, d, MPFR_RNDN); }

  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_string(const std::string& s) {
    BigFloat r;
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("BigFloat: cannot parse '" + s + "'");
    return r;
  }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Operations compute at the larger of the operand precisions, but never
  /// below the thread's working precision: a precision bump therefore
  /// genuinely elevates everything computed downstream of it.
  friend long join_prec(const BigFloat& a, const BigFloat& b) {
    long pa = mpfr_get_prec(a.v_), pb = mpfr_get_prec(b.v_);
    long p = pa > pb ? pa : pb;
    long w = working_prec();
    return p > w ? p : w;
  }

#define QGD_BF_BINOP(op, fn)                                        \
  friend BigFloat operator op(const BigFloat& a, const BigFloat& b) { \
    BigFloat r(0L);                                                 \
    mpfr_set_prec(r.v_, join_prec(a, b));                           \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                \
    return r;                                                       \
  }
  QGD_BF_BINOP(+, mpfr_add)
  QGD_BF_BINOP(-, mpfr_sub)
  QGD_BF_BINOP(*, mpfr_mul)
#undef QGD_BF_BINOP

  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) throw std::domain_error("BigFloat: division by zero");
    BigFloat r(0L);
    mpfr_set_prec(r.v_, join_prec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  BigFloat operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return b < a; }

#define QGD_BF_UNFN(name, fn)               \
  friend BigFloat name(const BigFloat& a) {  \
    BigFloat r(0L);                         \
    mpfr_set_prec(r.v_, join_prec(a, a));   \
    fn(r.v_, a.v_, MPFR_RNDN);              \
    return r;                               \
  }
  QGD_BF_UNFN(abs, mpfr_abs)
  QGD_BF_UNFN(exp, mpfr_exp)
  QGD_BF_UNFN(sqrt, mpfr_sqrt)
  QGD_BF_UNFN(sin, mpfr_sin)
  QGD_BF_UNFN(cos, mpfr_cos)
#undef QGD_BF_UNFN

  friend BigFloat log(const BigFloat& a) {
    if (a.sign() <= 0) throw std::domain_error("BigFloat: log of nonpositive value");
    BigFloat r(0L);
    mpfr_set_prec(r.v_, join_prec(a, a));
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(0L);
    mpfr_set_prec(r.v_, join_prec(y, x));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat pi() {
    BigFloat r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// 10^e at working precision; handy for tolerances.
  static BigFloat pow10(long e) {
    BigFloat r;
    mpfr_set_si(r.v_, 10, MPFR_RNDN);
    mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }
  BigFloat pow_si(long e) const {
    BigFloat r(0L);
    mpfr_set_prec(r.v_, join_prec(*this, *this));
    mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string str() const {
    long digits = static_cast<long>(mpfr_get_prec(v_) / 3.3219280948873623);
    char* out = nullptr;
    mpfr_asprintf(&out, "%.*Re", static_cast<int>(digits), v_);
    std::string s(out);
    mpfr_free_str(out);
    return s;
  }

private:
  mpfr_t v_;
};

/// Complex scalar over BigFloat. Pairings in this library are bilinear, so
/// no conjugation is ever applied implicitly.
class Complex {
public:
  Complex() = default;
  Complex(long n) : re_(n) {}
  Complex(long num, long den) : re_(num, den) {}
  Complex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(const BigFloat& re) : re_(re) {}

  static Complex i() { return Complex(BigFloat(0L), BigFloat(1L)); }

  /// Accepts "1.5", "-2e-3", "1.5+0.25i", "1.5-0.25i", "0.3i".
  static Complex from_string(const std::string& s) {
    std::string t = s;
    if (!t.empty() && t.back() == 'i') {
      t.pop_back();
      // split at the last +/- that is not an exponent sign or leading sign
      for (size_t k = t.size(); k-- > 1;) {
        char c = t[k];
        if ((c == '+' || c == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
          std::string res = t.substr(0, k);
          std::string ims = t.substr(k);
          if (ims == "+" || ims == "-") ims += "1";
          return Complex(BigFloat::from_string(res), BigFloat::from_string(ims));
        }
      }
      if (t.empty() || t == "+") t = "1";
      if (t == "-") t = "-1";
      return Complex(BigFloat(0L), BigFloat::from_string(t));
    }
    return Complex(BigFloat::from_string(t), BigFloat(0L));
  }

  const BigFloat& re() const { return re_; }
  const BigFloat& im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  Complex operator-() const { return Complex(-re_, -im_); }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    BigFloat n = b.re_ * b.re_ + b.im_ * b.im_;
    if (n.is_zero()) throw std::domain_error("Complex: division by zero");
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
  }
  Complex& operator+=(const Complex& o) { return *this = *this + o; }
  Complex& operator-=(const Complex& o) { return *this = *this - o; }
  Complex& operator*=(const Complex& o) { return *this = *this * o; }
  Complex& operator/=(const Complex& o) { return *this = *this / o; }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

  friend BigFloat abs(const Complex& a) { return sqrt(a.re_ * a.re_ + a.im_ * a.im_); }
  friend Complex exp(const Complex& a) {
    BigFloat m = exp(a.re_);
    return {m * cos(a.im_), m * sin(a.im_)};
  }
  /// Principal branch.
  friend Complex log(const Complex& a) {
    if (a.is_zero()) throw std::domain_error("Complex: log of zero");
    BigFloat m = a.re_ * a.re_ + a.im_ * a.im_;
    return {log(m) / BigFloat(2L), atan2(a.im_, a.re_)};
  }

  Complex pow(long e) const {
    if (e == 0) return Complex(1L);
    Complex base = e < 0 ? Complex(1L) / *this : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Complex acc(1L);
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  std::string str() const {
    if (im_.is_zero()) return re_.str();
    std::string s = re_.str();
    std::string is = im_.str();
    if (!is.empty() && is[0] != '-') s += "+";
    return s + is + "i";
  }

private:
  BigFloat re_, im_;
};

}  // namespace qgd
