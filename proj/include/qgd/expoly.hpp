#pragma once

#include <map>
#include <utility>

#include "qgd/laurent.hpp"

namespace qgd {

/// Symbolic function of t in the class spanned by t^p e^{s t ln q}
/// (p >= 0, s integer). Closed under products, shifts by q^{mt}, d/dt and
/// antidifferentiation with zero value at t = 0, which is exactly what the
/// exponential-map recursion consumes; the only numeric step left is final
/// evaluation at a complex argument.
class ExpPoly {
public:
  using Key = std::pair<int, int>;  // (p, s)

  ExpPoly() = default;
  static ExpPoly cell(int p, int s, Complex c) {
    ExpPoly f;
    f.add(p, s, std::move(c));
    return f;
  }
  static ExpPoly qpow_t(int s) { return cell(0, s, Complex(1L)); }  // q^{st}

  bool empty() const { return c_.empty(); }
  const std::map<Key, Complex>& cells() const { return c_; }

  void add(int p, int s, const Complex& c) {
    if (c.is_zero()) return;
    auto it = c_.find({p, s});
    if (it == c_.end()) {
      c_.emplace(Key{p, s}, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  ExpPoly operator-() const {
    ExpPoly r;
    for (auto& [k, c] : c_) r.c_.emplace(k, -c);
    return r;
  }
  ExpPoly& operator+=(const ExpPoly& o) {
    for (auto& [k, c] : o.c_) add(k.first, k.second, c);
    return *this;
  }
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a += -b; }
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly r;
    for (auto& [ka, ca] : a.c_)
      for (auto& [kb, cb] : b.c_)
        r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  friend ExpPoly operator*(const Complex& s, const ExpPoly& a) {
    ExpPoly r;
    for (auto& [k, c] : a.c_) r.add(k.first, k.second, s * c);
    return r;
  }
  /// Multiplication by q^{mt}.
  ExpPoly shift_s(int m) const {
    ExpPoly r;
    for (auto& [k, c] : c_) r.add(k.first, k.second + m, c);
    return r;
  }

  ExpPoly derivative(const Complex& log_q) const {
    ExpPoly r;
    for (auto& [k, c] : c_) {
      auto [p, s] = k;
      if (p > 0) r.add(p - 1, s, Complex(static_cast<long>(p)) * c);
      if (s != 0) r.add(p, s, Complex(static_cast<long>(s)) * log_q * c);
    }
    return r;
  }

  /// Integral from 0 to t, cell by cell:
  ///   s = 0:  t^p -> t^{p+1}/(p+1)
  ///   s != 0: I_p = t^p q^{st}/mu - (p/mu) I_{p-1}, I_0 = (q^{st}-1)/mu,
  /// with mu = s ln q.
  ExpPoly antiderivative(const Complex& log_q) const {
    ExpPoly r;
    for (auto& [k, c] : c_) {
      auto [p, s] = k;
      if (s == 0) {
        r.add(p + 1, 0, c / Complex(static_cast<long>(p + 1)));
        continue;
      }
      Complex mu = Complex(static_cast<long>(s)) * log_q;
      // I_k as an ExpPoly, built upward from I_0
      ExpPoly I;
      I.add(0, s, Complex(1L) / mu);
      I.add(0, 0, -(Complex(1L) / mu));
      for (int k2 = 1; k2 <= p; ++k2) {
        ExpPoly next;
        next.add(k2, s, Complex(1L) / mu);
        next += -(Complex(static_cast<long>(k2)) / mu) * I;
        I = std::move(next);
      }
      r += c * I;
    }
    return r;
  }

  Complex evaluate(const Complex& t, const Context<Complex>& ctx) const {
    Complex acc(0L);
    for (auto& [k, c] : c_) {
      auto [p, s] = k;
      acc += c * t.pow(p) * qpow_c(ctx, Complex(static_cast<long>(s)) * t);
    }
    return acc;
  }

private:
  std::map<Key, Complex> c_;
};

}  // namespace qgd
