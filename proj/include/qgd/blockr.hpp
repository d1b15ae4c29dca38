#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qgd/qop.hpp"

namespace qgd {

/// r = (P+ - P-)/2, the standard splitting r-matrix.
template <class S>
QOp<S> r_std(const QOp<S>& x) {
  S half(1, 2);
  return half * (proj(x, Part::Plus) - proj(x, Part::Minus));
}

/// r_s = (P(+) - P-)/2, the symmetrized variant entering the linear bracket.
template <class S>
QOp<S> r_sym(const QOp<S>& x) {
  S half(1, 2);
  return half * (proj(x, Part::PlusZero) - proj(x, Part::Minus));
}

/// Finitely described linear operator on J0 = C((z^-1)): a composition
/// chain of multiplications by z^p, integer dilations h^k, and the
/// rank-one projection P00 onto constants, with a scalar factor.
/// Adjoints (w.r.t. <f,g> = integral of f g dz/z) are computable in closed
/// form: (z^p .)* = z^p ., (h^k)* = h^{-k}, P00* = P00.
template <class S>
struct J0Atom {
  enum Kind { MulZ, Dilate, P00 } kind;
  int p = 0;

  LaurentPoly<S> apply(const LaurentPoly<S>& f, const Context<S>& ctx) const {
    switch (kind) {
      case MulZ: return LaurentPoly<S>::z(p) * f;
      case Dilate: return dilate(f, p, ctx);
      case P00: return LaurentPoly<S>::monomial(0, formal_integral(f));
    }
    return {};
  }
  J0Atom adjoint() const {
    switch (kind) {
      case MulZ: return {MulZ, p};
      case Dilate: return {Dilate, -p};
      case P00: return {P00, 0};
    }
    return {};
  }
};

template <class S>
struct J0Chain {
  S scale = S(1);
  std::vector<J0Atom<S>> atoms;  // applied right to left

  LaurentPoly<S> apply(LaurentPoly<S> f, const Context<S>& ctx) const {
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) f = it->apply(f, ctx);
    return scale * f;
  }
  J0Chain adjoint() const {
    J0Chain r;
    r.scale = scale;
    for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) r.atoms.push_back(it->adjoint());
    return r;
  }
};

template <class S>
struct J0OpSum {
  std::vector<J0Chain<S>> chains;

  LaurentPoly<S> apply(const LaurentPoly<S>& f, const Context<S>& ctx) const {
    LaurentPoly<S> r;
    for (auto& ch : chains) r += ch.apply(f, ctx);
    return r;
  }
  J0OpSum adjoint() const {
    J0OpSum r;
    for (auto& ch : chains) r.chains.push_back(ch.adjoint());
    return r;
  }
  J0OpSum operator-() const {
    J0OpSum r = *this;
    for (auto& ch : r.chains) ch.scale = -ch.scale;
    return r;
  }
  friend J0OpSum operator+(J0OpSum a, const J0OpSum& b) {
    for (auto& ch : b.chains) a.chains.push_back(ch);
    return a;
  }
  friend J0OpSum operator-(J0OpSum a, const J0OpSum& b) { return a + (-b); }
};

/// Block r-matrix acting on the doubled algebra:
/// (X1, X2) -> (A X1 + B X2, C X1 + D X2).
template <class S>
struct BlockR {
  using Fn = std::function<QOp<S>(const QOp<S>&)>;
  Fn A, B, C, D;

  DoubledVector<S> apply(const DoubledVector<S>& x) const {
    return {A(x.first) + B(x.second), C(x.first) + D(x.second)};
  }
};

namespace blocks {

template <class S>
QOp<S> lift0(const LaurentPoly<S>& f) {
  return QOp<S>(f);
}

/// The quadratic q-Gelfand-Dickey r-matrix (canonical presentation):
///   A = r + (1/2) Cay_n P0'      B = -geo_n P0' + (1/2) P00
///   C = mzr_n P0'  + (1/2) P00   D = r - (1/2) Cay_n P0'
/// where the resolvents act on the mean-removed degree-0 coefficient.
/// `diag_coeff` is 1/2 canonically; other values break the bracket and are
/// used as a negative control.
template <class S>
BlockR<S> quadratic(int n, const Context<S>& ctx, S diag_coeff = S(1, 2)) {
  S half(1, 2);
  typename BlockR<S>::Fn A = [n, ctx, diag_coeff](const QOp<S>& x) {
    LaurentPoly<S> g = mean_removed(res(x));
    return r_std(x) + lift0(diag_coeff * cayley_resolvent(g, n, ctx));
  };
  typename BlockR<S>::Fn B = [n, ctx, half](const QOp<S>& x) {
    LaurentPoly<S> x0 = res(x);
    LaurentPoly<S> g = mean_removed(x0);
    return lift0(-geometric_resolvent(g, n, ctx) +
                 half * LaurentPoly<S>(formal_integral(x0)));
  };
  typename BlockR<S>::Fn C = [n, ctx, half](const QOp<S>& x) {
    LaurentPoly<S> x0 = res(x);
    LaurentPoly<S> g = mean_removed(x0);
    return lift0(mean_zero_resolvent(g, n, ctx) +
                 half * LaurentPoly<S>(formal_integral(x0)));
  };
  typename BlockR<S>::Fn D = [n, ctx, diag_coeff](const QOp<S>& x) {
    LaurentPoly<S> g = mean_removed(res(x));
    return r_std(x) - lift0(diag_coeff * cayley_resolvent(g, n, ctx));
  };
  return {A, B, C, D};
}

/// The equivalent presentation
///   A = P+ + mzr_n P0'   B = -geo_n P0'
///   C = mzr_n P0'        D = P+ - geo_n P0'.
template <class S>
BlockR<S> quadratic_alt(int n, const Context<S>& ctx) {
  typename BlockR<S>::Fn A = [n, ctx](const QOp<S>& x) {
    LaurentPoly<S> g = mean_removed(res(x));
    return proj(x, Part::Plus) + lift0(mean_zero_resolvent(g, n, ctx));
  };
  typename BlockR<S>::Fn B = [n, ctx](const QOp<S>& x) {
    LaurentPoly<S> g = mean_removed(res(x));
    return lift0(-geometric_resolvent(g, n, ctx));
  };
  typename BlockR<S>::Fn C = [n, ctx](const QOp<S>& x) {
    LaurentPoly<S> g = mean_removed(res(x));
    return lift0(mean_zero_resolvent(g, n, ctx));
  };
  typename BlockR<S>::Fn D = [n, ctx](const QOp<S>& x) {
    LaurentPoly<S> g = mean_removed(res(x));
    return proj(x, Part::Plus) - lift0(geometric_resolvent(g, n, ctx));
  };
  return {A, B, C, D};
}

/// Generic block matrix [[r + a P0, b P0], [c P0, r + d P0]] with finitely
/// described operators a, b, c, d on J0.
template <class S>
BlockR<S> generic(const J0OpSum<S>& a, const J0OpSum<S>& b, const J0OpSum<S>& c,
                  const J0OpSum<S>& d, const Context<S>& ctx) {
  auto diag = [ctx](J0OpSum<S> op) -> typename BlockR<S>::Fn {
    return [op, ctx](const QOp<S>& x) { return r_std(x) + lift0(op.apply(res(x), ctx)); };
  };
  auto off = [ctx](J0OpSum<S> op) -> typename BlockR<S>::Fn {
    return [op, ctx](const QOp<S>& x) { return lift0(op.apply(res(x), ctx)); };
  };
  return {diag(a), off(b), off(c), diag(d)};
}

}  // namespace blocks

/// mCYBE residual [RX, RY] - R([RX,Y] + [X,RY]) + (1/4)[X,Y] in the doubled
/// algebra; identically zero for every block matrix of the admissible shape.
template <class S>
DoubledVector<S> mcybe_residual(const BlockR<S>& R, const DoubledVector<S>& x,
                                const DoubledVector<S>& y, const Context<S>& ctx) {
  DoubledVector<S> rx = R.apply(x), ry = R.apply(y);
  DoubledVector<S> lhs = doubled_commutator(rx, ry, ctx);
  DoubledVector<S> mid = R.apply(doubled_commutator(rx, y, ctx) + doubled_commutator(x, ry, ctx));
  DoubledVector<S> quarter = S(1, 4) * doubled_commutator(x, y, ctx);
  return lhs - mid + quarter;
}

}  // namespace qgd
