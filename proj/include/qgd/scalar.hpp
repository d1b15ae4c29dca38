#pragma once

#include <stdexcept>
#include <string>

#include "qgd/bigfloat.hpp"
#include "qgd/jet.hpp"
#include "qgd/rational.hpp"

namespace qgd {

/// Per-backend facts the templated layers need: exactness, parsing, and how
/// far a value is from zero (for the numeric guards).
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational parse(const std::string& s) { return Rational::from_string(s); }
  static std::string str(const Rational& v) { return v.str(); }
  static bool small(const Rational& v, const BigFloat&) { return v.is_zero(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex parse(const std::string& s) { return Complex::from_string(s); }
  static std::string str(const Complex& v) { return v.str(); }
  static bool small(const Complex& v, const BigFloat& tol) { return abs(v) < tol; }
};

template <class B>
struct ScalarTraits<Jet<B>> {
  static constexpr bool exact = ScalarTraits<B>::exact;
  static Jet<B> parse(const std::string& s) { return Jet<B>(ScalarTraits<B>::parse(s), B(0)); }
  static std::string str(const Jet<B>& v) { return v.str(); }
  static bool small(const Jet<B>& v, const BigFloat& tol) {
    return ScalarTraits<B>::small(v.val, tol) && ScalarTraits<B>::small(v.der, tol);
  }
};

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::exact;

/// Shared configuration for one computation: the deformation parameter q,
/// the D-expansion depth K, the numeric precision in decimal digits, and the
/// seed for derived random instances.
template <class S>
struct Context {
  S q = S(1, 2);
  int depth = 8;
  int digits = 40;
  unsigned long long seed = 42;

  /// q^e for integer e.
  S qpow(long e) const { return q.pow(e); }

  /// lambda standing for ln q. Exact backends use lambda = 1: every identity
  /// fed by it is homogeneous of degree one in lambda, so checking at 1
  /// checks all values. Numeric backends evaluate the principal branch.
  S log_q() const {
    if constexpr (is_exact_v<S>) {
      return S(1);
    } else {
      return log(q);
    }
  }

  /// Numeric tolerance 10^(offset - digits); only meaningful for numeric
  /// backends but harmless to form anywhere.
  BigFloat tol(int offset = 1) const { return BigFloat::pow10(offset - digits); }
};

/// q^(e) for complex exponent e (numeric backend only).
inline Complex qpow_c(const Context<Complex>& ctx, const Complex& e) {
  return exp(e * log(ctx.q));
}

inline BigFloat to_bigfloat(const Rational& r) {
  BigFloat num(0L), out(0L);
  // exact at the working precision via the string round trip
  return BigFloat::from_string(r.raw().get_num().get_str()) /
         BigFloat::from_string(r.raw().get_den().get_str());
}

inline Complex to_complex(const Rational& r) { return Complex(to_bigfloat(r)); }

inline Context<Jet<Rational>> jet_context(const Context<Rational>& ctx) {
  Context<Jet<Rational>> j;
  j.q = Jet<Rational>(ctx.q, Rational(0));
  j.depth = ctx.depth;
  j.digits = ctx.digits;
  j.seed = ctx.seed;
  return j;
}

/// Raised when a value is requested outside an operator's trusted window.
struct TrustError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qgd
