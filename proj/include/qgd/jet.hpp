#pragma once

#include <stdexcept>
#include <string>

namespace qgd {

/// First-order jet a + eps*b with eps^2 = 0. Used for exact directional
/// derivatives; pushing a jet-valued point through any rational expression
/// yields the value and its derivative simultaneously.
template <class S>
struct Jet {
  S val{};
  S der{};

  Jet() = default;
  Jet(long n) : val(n), der(0) {}
  Jet(long num, long den) : val(num, den), der(0) {}
  Jet(S v, S d) : val(std::move(v)), der(std::move(d)) {}

  bool is_zero() const { return val.is_zero() && der.is_zero(); }

  Jet operator-() const { return {-val, -der}; }
  friend Jet operator+(const Jet& a, const Jet& b) { return {a.val + b.val, a.der + b.der}; }
  friend Jet operator-(const Jet& a, const Jet& b) { return {a.val - b.val, a.der - b.der}; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    return {a.val * b.val, a.val * b.der + a.der * b.val};
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.val.is_zero()) throw std::domain_error("Jet: division by zero value part");
    S v = a.val / b.val;
    return {v, (a.der - v * b.der) / b.val};
  }
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend bool operator==(const Jet& a, const Jet& b) { return a.val == b.val && a.der == b.der; }
  friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

  Jet pow(long e) const {
    if (e == 0) return Jet(1);
    Jet base = e < 0 ? Jet(1) / *this : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Jet acc(1);
    while (k) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  std::string str() const { return val.str() + " + eps*" + der.str(); }
};

}  // namespace qgd
