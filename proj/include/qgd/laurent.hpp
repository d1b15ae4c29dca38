#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "qgd/scalar.hpp"

namespace qgd {

/// Finite-support Laurent polynomial in z. Every coefficient operation used
/// by the operator algebra (products, dilations, resolvents, the formal
/// integral) preserves finite support, so no truncation happens in the
/// z-direction and exact backends stay exact.
template <class S>
class LaurentPoly {
public:
  LaurentPoly() = default;
  explicit LaurentPoly(S c) { set(0, std::move(c)); }
  LaurentPoly(long num, long den) { set(0, S(num, den)); }

  static LaurentPoly monomial(int m, S c) {
    LaurentPoly p;
    p.set(m, std::move(c));
    return p;
  }
  static LaurentPoly z(int m = 1) { return monomial(m, S(1)); }

  bool is_zero() const { return c_.empty(); }
  int lo() const { return c_.empty() ? 0 : c_.begin()->first; }
  int hi() const { return c_.empty() ? 0 : c_.rbegin()->first; }

  S coeff(int m) const {
    auto it = c_.find(m);
    return it == c_.end() ? S(0) : it->second;
  }
  void set(int m, S c) {
    if (c.is_zero())
      c_.erase(m);
    else
      c_[m] = std::move(c);
  }
  void add(int m, const S& c) {
    auto it = c_.find(m);
    if (it == c_.end()) {
      if (!c.is_zero()) c_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  const std::map<int, S>& terms() const { return c_; }

  LaurentPoly operator-() const {
    LaurentPoly r;
    for (auto& [m, c] : c_) r.c_.emplace(m, -c);
    return r;
  }
  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (auto& [m, c] : o.c_) add(m, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (auto& [m, c] : o.c_) add(m, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto& [ma, ca] : a.c_)
      for (auto& [mb, cb] : b.c_) r.add(ma + mb, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend LaurentPoly operator*(const S& s, const LaurentPoly& p) {
    LaurentPoly r;
    for (auto& [m, c] : p.c_) r.add(m, s * c);
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// Applies f(m) to each monomial coefficient: z^m -> f(m)*c_m*z^m.
  template <class F>
  LaurentPoly map_monomials(F&& f) const {
    LaurentPoly r;
    for (auto& [m, c] : c_) r.add(m, f(m) * c);
    return r;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : c_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << ScalarTraits<S>::str(c) << ")";
      if (m != 0) os << "*z^" << m;
    }
    return os.str();
  }

private:
  std::map<int, S> c_;
};

/// h^t action: z^m -> q^{tm} z^m, integer dilation exponent.
template <class S>
LaurentPoly<S> dilate(const LaurentPoly<S>& a, long t, const Context<S>& ctx) {
  if (t == 0) return a;
  return a.map_monomials([&](int m) { return ctx.qpow(t * static_cast<long>(m)); });
}

/// h^alpha action for complex alpha (numeric backend only).
inline LaurentPoly<Complex> dilate_c(const LaurentPoly<Complex>& a, const Complex& alpha,
                                     const Context<Complex>& ctx) {
  return a.map_monomials([&](int m) { return qpow_c(ctx, alpha * Complex(m)); });
}

/// The formal integral of Eq-style a(z) dz/z: the z^0 coefficient.
template <class S>
S formal_integral(const LaurentPoly<S>& a) {
  return a.coeff(0);
}

/// ln D action on coefficients: z^m -> m * lambda * z^m with lambda = ctx.log_q().
template <class S>
LaurentPoly<S> log_dilation_action(const LaurentPoly<S>& a, const Context<S>& ctx) {
  S lam = ctx.log_q();
  return a.map_monomials([&](int m) { return S(m) * lam; });
}

namespace detail {

template <class S>
void check_resolvent_divisor(const S& d, const Context<S>& ctx) {
  if constexpr (is_exact_v<S>) {
    if (d.is_zero()) throw std::domain_error("resolvent: resonant dilation (1 - q^{sm} = 0)");
  } else {
    if (ScalarTraits<S>::small(d, ctx.tol(1)))
      throw std::domain_error("near-resonant dilation");
  }
}

}  // namespace detail

/// (1 - h^s)^{-1} P0' : constants -> 0, z^m -> z^m / (1 - q^{sm}) for m != 0.
template <class S>
LaurentPoly<S> mean_zero_resolvent(const LaurentPoly<S>& a, long s, const Context<S>& ctx) {
  if (s == 0) throw std::invalid_argument("mean_zero_resolvent: s must be nonzero");
  return a.map_monomials([&](int m) -> S {
    if (m == 0) return S(0);
    S d = S(1) - ctx.qpow(s * static_cast<long>(m));
    detail::check_resolvent_divisor(d, ctx);
    return S(1) / d;
  });
}

/// (1 + h^s)(1 - h^s)^{-1} P0' : constants -> 0, z^m -> (1+q^{sm})/(1-q^{sm}) z^m.
template <class S>
LaurentPoly<S> cayley_resolvent(const LaurentPoly<S>& a, long s, const Context<S>& ctx) {
  if (s == 0) throw std::invalid_argument("cayley_resolvent: s must be nonzero");
  return a.map_monomials([&](int m) -> S {
    if (m == 0) return S(0);
    S p = ctx.qpow(s * static_cast<long>(m));
    S d = S(1) - p;
    detail::check_resolvent_divisor(d, ctx);
    return (S(1) + p) / d;
  });
}

/// h^s (1 - h^s)^{-1} P0' : constants -> 0, z^m -> q^{sm}/(1-q^{sm}) z^m.
template <class S>
LaurentPoly<S> geometric_resolvent(const LaurentPoly<S>& a, long s, const Context<S>& ctx) {
  if (s == 0) throw std::invalid_argument("geometric_resolvent: s must be nonzero");
  return a.map_monomials([&](int m) -> S {
    if (m == 0) return S(0);
    S p = ctx.qpow(s * static_cast<long>(m));
    S d = S(1) - p;
    detail::check_resolvent_divisor(d, ctx);
    return p / d;
  });
}

/// Mean removal on J0: g - (integral of g) * 1.
template <class S>
LaurentPoly<S> mean_removed(const LaurentPoly<S>& a) {
  LaurentPoly<S> r = a;
  r.set(0, S(0));
  return r;
}

/// Complex-exponent resolvents for the generalized bracket.
inline LaurentPoly<Complex> mean_zero_resolvent_c(const LaurentPoly<Complex>& a,
                                                  const Complex& alpha,
                                                  const Context<Complex>& ctx) {
  return a.map_monomials([&](int m) -> Complex {
    if (m == 0) return Complex(0L);
    Complex d = Complex(1L) - qpow_c(ctx, alpha * Complex(m));
    detail::check_resolvent_divisor(d, ctx);
    return Complex(1L) / d;
  });
}

inline LaurentPoly<Complex> cayley_resolvent_c(const LaurentPoly<Complex>& a,
                                               const Complex& alpha,
                                               const Context<Complex>& ctx) {
  return a.map_monomials([&](int m) -> Complex {
    if (m == 0) return Complex(0L);
    Complex p = qpow_c(ctx, alpha * Complex(m));
    Complex d = Complex(1L) - p;
    detail::check_resolvent_divisor(d, ctx);
    return (Complex(1L) + p) / d;
  });
}

inline LaurentPoly<Complex> geometric_resolvent_c(const LaurentPoly<Complex>& a,
                                                  const Complex& alpha,
                                                  const Context<Complex>& ctx) {
  return a.map_monomials([&](int m) -> Complex {
    if (m == 0) return Complex(0L);
    Complex p = qpow_c(ctx, alpha * Complex(m));
    Complex d = Complex(1L) - p;
    detail::check_resolvent_divisor(d, ctx);
    return p / d;
  });
}

}  // namespace qgd
