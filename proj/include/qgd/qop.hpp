#pragma once

#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qgd/laurent.hpp"

namespace qgd {

/// Which slice of the triangular splitting to keep.
enum class Part { Plus, Minus, Zero, PlusZero, MinusZero };

/// Windowed q-pseudodifference operator: sum of a_i(z) D^i over a finite
/// window of D-degrees. Formal series are infinite downward in D, so every
/// operator carries a validity floor; degrees below the floor are an unknown
/// tail, degrees at or above it (up to the finite top) are known exactly.
/// Operators built from finite data are "complete": they have no unknown
/// tail at all, and products of complete operators stay complete.
template <class S>
class QOp {
public:
  QOp() = default;
  explicit QOp(S c) {
    if (!c.is_zero()) c_.emplace(0, LaurentPoly<S>(std::move(c)));
  }
  explicit QOp(const LaurentPoly<S>& p) {
    if (!p.is_zero()) c_.emplace(0, p);
  }

  static QOp d_power(int k, S coeff = S(1)) {
    QOp a;
    if (!coeff.is_zero()) a.c_.emplace(k, LaurentPoly<S>(std::move(coeff)));
    return a;
  }
  static QOp term(int deg, LaurentPoly<S> p) {
    QOp a;
    if (!p.is_zero()) a.c_.emplace(deg, std::move(p));
    return a;
  }
  static QOp one() { return d_power(0); }

  bool complete() const { return !floor_.has_value(); }
  bool has_floor() const { return floor_.has_value(); }
  int floor() const { return *floor_; }
  /// Degrees >= this value are trusted. Complete operators trust everything.
  bool trusted(int deg) const { return !floor_ || deg >= *floor_; }

  bool known_zero() const { return c_.empty() && complete(); }
  bool window_zero() const { return c_.empty(); }

  /// Top possibly-nonzero degree. Operators are finite upward, so this is
  /// just the top of the stored support (or floor-1 for an all-zero window).
  int hi() const {
    if (!c_.empty()) return c_.rbegin()->first;
    return floor_ ? *floor_ - 1 : 0;
  }
  int lo_stored() const { return c_.empty() ? hi() : c_.begin()->first; }

  const std::map<int, LaurentPoly<S>>& coeffs() const { return c_; }
  LaurentPoly<S> coeff(int deg) const {
    auto it = c_.find(deg);
    return it == c_.end() ? LaurentPoly<S>() : it->second;
  }
  void set_coeff(int deg, LaurentPoly<S> p) {
    if (floor_ && deg < *floor_) return;  // below window: drop
    if (p.is_zero())
      c_.erase(deg);
    else
      c_[deg] = std::move(p);
  }

  /// Declares everything below v unknown and drops stored data there.
  QOp with_floor(int v) const {
    QOp r;
    r.floor_ = floor_ ? std::max(*floor_, v) : v;
    for (auto& [d, p] : c_)
      if (d >= *r.floor_) r.c_.emplace(d, p);
    return r;
  }

  QOp operator-() const {
    QOp r;
    r.floor_ = floor_;
    for (auto& [d, p] : c_) r.c_.emplace(d, -p);
    return r;
  }

  friend QOp operator+(const QOp& a, const QOp& b) {
    QOp r;
    if (a.floor_ || b.floor_) {
      int v = std::numeric_limits<int>::min();
      if (a.floor_) v = std::max(v, *a.floor_);
      if (b.floor_) v = std::max(v, *b.floor_);
      r.floor_ = v;
    }
    for (auto& [d, p] : a.c_)
      if (r.trusted(d)) r.c_.emplace(d, p);
    for (auto& [d, p] : b.c_) {
      if (!r.trusted(d)) continue;
      auto it = r.c_.find(d);
      if (it == r.c_.end()) {
        r.c_.emplace(d, p);
      } else {
        it->second += p;
        if (it->second.is_zero()) r.c_.erase(it);
      }
    }
    return r;
  }
  friend QOp operator-(const QOp& a, const QOp& b) { return a + (-b); }

  friend QOp operator*(const S& s, const QOp& a) {
    QOp r;
    r.floor_ = a.floor_;
    for (auto& [d, p] : a.c_) {
      LaurentPoly<S> q = s * p;
      if (!q.is_zero()) r.c_.emplace(d, std::move(q));
    }
    return r;
  }

  friend bool operator==(const QOp& a, const QOp& b) {
    return a.floor_ == b.floor_ && a.c_ == b.c_;
  }
  friend bool operator!=(const QOp& a, const QOp& b) { return !(a == b); }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      if (!first) os << "  +  ";
      first = false;
      os << "[" << it->second.str() << "] D^" << it->first;
    }
    if (first) os << "0";
    if (floor_) os << "   (floor " << *floor_ << ")";
    return os.str();
  }

private:
  std::map<int, LaurentPoly<S>> c_;
  std::optional<int> floor_;  // nullopt = complete
};

/// Product with the floor rule: degrees below max(v_A + hi_B, hi_A + v_B)
/// may receive contributions from unknown tails and are dropped.
template <class S>
QOp<S> mul(const QOp<S>& a, const QOp<S>& b, const Context<S>& ctx) {
  QOp<S> r;
  std::optional<int> vf;
  if (!a.complete() || !b.complete()) {
    if (a.window_zero() && a.complete()) return r;  // exact zero
    if (b.window_zero() && b.complete()) return r;
    int v = std::numeric_limits<int>::min();
    if (!a.complete()) v = std::max(v, a.floor() + b.hi());
    if (!b.complete()) v = std::max(v, a.hi() + b.floor());
    vf = v;
  }
  std::map<int, LaurentPoly<S>> acc;
  for (auto& [i, ai] : a.coeffs())
    for (auto& [j, bj] : b.coeffs()) {
      int d = i + j;
      if (vf && d < *vf) continue;
      LaurentPoly<S> t = ai * dilate(bj, i, ctx);
      if (t.is_zero()) continue;
      auto it = acc.find(d);
      if (it == acc.end())
        acc.emplace(d, std::move(t));
      else {
        it->second += t;
        if (it->second.is_zero()) acc.erase(it);
      }
    }
  for (auto& [d, p] : acc) r.set_coeff(d, std::move(p));
  if (vf) r = r.with_floor(*vf);
  return r;
}

template <class S>
QOp<S> commutator(const QOp<S>& a, const QOp<S>& b, const Context<S>& ctx) {
  return mul(a, b, ctx) - mul(b, a, ctx);
}

template <class S>
QOp<S> pow_int(const QOp<S>& a, int k, const Context<S>& ctx) {
  if (k < 0) throw std::invalid_argument("pow_int: negative exponent");
  QOp<S> acc = QOp<S>::one();
  for (int i = 0; i < k; ++i) acc = mul(acc, a, ctx);
  return acc;
}

/// Triangular projections P+, P-, P0, P(+), P(-). The window is kept, except
/// that a restriction lying entirely inside the trusted window yields a
/// complete operator (the unknown tail was cut away by the projection).
template <class S>
QOp<S> proj(const QOp<S>& a, Part part) {
  int lo = std::numeric_limits<int>::min(), hi = std::numeric_limits<int>::max();
  switch (part) {
    case Part::Plus: lo = 1; break;
    case Part::Minus: hi = -1; break;
    case Part::Zero: lo = 0; hi = 0; break;
    case Part::PlusZero: lo = 0; break;
    case Part::MinusZero: hi = 0; break;
  }
  QOp<S> r;
  for (auto& [d, p] : a.coeffs())
    if (d >= lo && d <= hi) r.set_coeff(d, p);
  if (!a.complete() && a.floor() > lo) r = r.with_floor(a.floor());
  return r;
}

/// Residue: the D^0 coefficient.
template <class S>
LaurentPoly<S> res(const QOp<S>& a) {
  if (!a.trusted(0)) throw TrustError("trace outside trusted window");
  return a.coeff(0);
}

/// Trace: z^0 coefficient of the residue.
template <class S>
S trace(const QOp<S>& a) {
  return formal_integral(res(a));
}

template <class S>
S inner(const QOp<S>& a, const QOp<S>& b, const Context<S>& ctx) {
  return trace(mul(a, b, ctx));
}

/// Element of the doubled algebra d = PsiD_q (+) PsiD_q.
template <class S>
struct DoubledVector {
  QOp<S> first;
  QOp<S> second;

  DoubledVector() = default;
  DoubledVector(QOp<S> a, QOp<S> b) : first(std::move(a)), second(std::move(b)) {}

  friend DoubledVector operator+(const DoubledVector& x, const DoubledVector& y) {
    return {x.first + y.first, x.second + y.second};
  }
  friend DoubledVector operator-(const DoubledVector& x, const DoubledVector& y) {
    return {x.first - y.first, x.second - y.second};
  }
  friend DoubledVector operator*(const S& s, const DoubledVector& x) {
    return {s * x.first, s * x.second};
  }
};

/// <<(X1,X2),(Y1,Y2)>> = <X1,Y1> - <X2,Y2>.
template <class S>
S doubled_inner(const DoubledVector<S>& x, const DoubledVector<S>& y, const Context<S>& ctx) {
  return inner(x.first, y.first, ctx) - inner(x.second, y.second, ctx);
}

/// Componentwise Lie bracket on the doubled algebra.
template <class S>
DoubledVector<S> doubled_commutator(const DoubledVector<S>& x, const DoubledVector<S>& y,
                                    const Context<S>& ctx) {
  return {commutator(x.first, y.first, ctx), commutator(x.second, y.second, ctx)};
}

/// Sum over i of D^{-i} (D^i B)_0; reproduces B for finitely supported B.
template <class S>
QOp<S> reconstruct_from_slices(const QOp<S>& b, const Context<S>& ctx) {
  if (!b.complete()) throw TrustError("reconstruct_from_slices needs a complete operator");
  QOp<S> r;
  for (auto& [d, p] : b.coeffs()) {
    int i = -d;
    QOp<S> slice = proj(mul(QOp<S>::d_power(i), b, ctx), Part::Zero);
    r = r + mul(QOp<S>::d_power(-i), slice, ctx);
  }
  return r;
}

/// ln D acting as a derivation: [ln D, sum a_i D^i] = sum (lambda z a_i') D^i.
template <class S>
QOp<S> log_dilation_derivation(const QOp<S>& a, const Context<S>& ctx) {
  QOp<S> r;
  for (auto& [d, p] : a.coeffs()) r.set_coeff(d, log_dilation_action(p, ctx));
  if (!a.complete()) r = r.with_floor(a.floor());
  return r;
}

/// Cocycle omega(X, Y) = <[ln D, X], Y>.
template <class S>
S cocycle_omega(const QOp<S>& x, const QOp<S>& y, const Context<S>& ctx) {
  return inner(log_dilation_derivation(x, ctx), y, ctx);
}

/// Element of the double extension PsiD_q + C ln D + C c.
template <class S>
struct ExtElement {
  QOp<S> body;
  S lnD = S(0);
  S center = S(0);
};

/// Invariant pairing of the double extension:
/// <X + a lnD + b c, Y + g lnD + d c> = <X,Y> + a*d + b*g.
template <class S>
S ext_pairing(const ExtElement<S>& x, const ExtElement<S>& y, const Context<S>& ctx) {
  return inner(x.body, y.body, ctx) + x.lnD * y.center + x.center * y.lnD;
}

/// Cocycle on the double extension; ln D is central for the derivation
/// ([ln D, ln D] = 0) so only the PsiD_q parts contribute.
template <class S>
S cocycle(const ExtElement<S>& x, const ExtElement<S>& y, const Context<S>& ctx) {
  return cocycle_omega(x.body, y.body, ctx);
}

/// Equality of the known parts on the common trusted window.
template <class S>
bool equal_on_trusted(const QOp<S>& a, const QOp<S>& b) {
  if (a.complete() && b.complete()) return a == b;
  int v = std::numeric_limits<int>::min();
  if (!a.complete()) v = a.floor();
  if (!b.complete()) v = std::max(v, b.floor());
  int top = std::max(a.hi(), b.hi());
  for (int d = v; d <= top; ++d)
    if (a.coeff(d) != b.coeff(d)) return false;
  return true;
}

template <class S>
bool zero_on_trusted(const QOp<S>& a) {
  return a.coeffs().empty();
}

/// Lowest degree of the common trusted window (INT_MIN if both complete).
template <class S>
int common_floor(const QOp<S>& a, const QOp<S>& b) {
  int v = std::numeric_limits<int>::min();
  if (!a.complete()) v = a.floor();
  if (!b.complete()) v = std::max(v, b.floor());
  return v;
}

}  // namespace qgd
