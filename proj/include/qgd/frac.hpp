#pragma once

#include <stdexcept>
#include <vector>

#include "qgd/qop.hpp"

namespace qgd {

/// Monic q-difference operator L = D^n + u_{n-1} D^{n-1} + ... + u_0,
/// the phase space element of the n-th q-KdV hierarchy.
template <class S>
class MonicQDiff {
public:
  MonicQDiff(int n, std::vector<LaurentPoly<S>> u) : n_(n), u_(std::move(u)) {
    if (n_ < 1) throw std::invalid_argument("MonicQDiff: order must be >= 1");
    if (static_cast<int>(u_.size()) != n_)
      throw std::invalid_argument("MonicQDiff: need exactly n coefficients u_0..u_{n-1}");
  }

  static MonicQDiff from_op(const QOp<S>& a, int n) {
    if (!a.complete()) throw std::invalid_argument("MonicQDiff: operator must be complete");
    if (a.coeff(n) != LaurentPoly<S>(S(1))) throw std::invalid_argument("not monic");
    std::vector<LaurentPoly<S>> u(n);
    for (auto& [d, p] : a.coeffs()) {
      if (d == n) continue;
      if (d < 0 || d > n) throw std::invalid_argument("MonicQDiff: degrees outside 0..n");
      u[d] = p;
    }
    return MonicQDiff(n, std::move(u));
  }

  int n() const { return n_; }
  const LaurentPoly<S>& u(int i) const { return u_.at(i); }
  const std::vector<LaurentPoly<S>>& coeffs() const { return u_; }

  QOp<S> op() const {
    QOp<S> a = QOp<S>::d_power(n_);
    for (int i = 0; i < n_; ++i) a.set_coeff(i, u_[i]);
    return a;
  }

  friend bool operator==(const MonicQDiff& a, const MonicQDiff& b) {
    return a.n_ == b.n_ && a.u_ == b.u_;
  }

private:
  int n_;
  std::vector<LaurentPoly<S>> u_;
};

namespace detail {

/// Solves (sum_{a=0}^{n-1} h^a) p = c per monomial. The multiplier
/// sum_a q^{am} is nonzero for every m because |q| < 1 (and q in (0,1) in
/// exact mode), so the step operator is invertible.
template <class S>
LaurentPoly<S> solve_dilation_sum(const LaurentPoly<S>& c, int n, const Context<S>& ctx) {
  LaurentPoly<S> p;
  for (auto& [m, cm] : c.terms()) {
    S mult(0);
    for (int a = 0; a < n; ++a) mult += ctx.qpow(static_cast<long>(a) * m);
    p.set(m, cm / mult);
  }
  return p;
}

/// Coefficient of A*B at a single D-degree, without forming the product.
template <class S>
LaurentPoly<S> product_coeff(const QOp<S>& a, const QOp<S>& b, int deg, const Context<S>& ctx) {
  LaurentPoly<S> acc;
  for (auto& [i, ai] : a.coeffs()) {
    auto it = b.coeffs().find(deg - i);
    if (it == b.coeffs().end()) continue;
    acc += ai * dilate(it->second, i, ctx);
  }
  return acc;
}

}  // namespace detail

/// The unique P = D + p_0 + p_1 D^{-1} + ... with P^n = L, computed to depth
/// K coefficients (window [1-K, 1]). Coefficients are matched from degree
/// n-1 downward; each step is a monomial-diagonal solve.
template <class S>
QOp<S> nth_root(const MonicQDiff<S>& L, const Context<S>& ctx, int depth = -1) {
  int n = L.n();
  int K = depth == -1 ? ctx.depth : depth;
  if (K < 1) throw std::invalid_argument("nth_root: invalid depth");
  QOp<S> Lop = L.op();
  // Carrying the final floor through the iteration truncates the power
  // chain below degree n-K, which no matching step ever reads. Each step
  // needs a single coefficient of P^n, extracted from cached half powers.
  QOp<S> P = QOp<S>::d_power(1).with_floor(1 - K);
  int lo = n / 2, hi = n - lo;
  for (int k = 0; k < K; ++k) {
    std::vector<QOp<S>> w{QOp<S>::one(), P};
    for (int j = 2; j <= hi; ++j) w.push_back(mul(w.back(), P, ctx));
    LaurentPoly<S> e = (lo == 0) ? w[hi].coeff(n - 1 - k)
                                 : detail::product_coeff(w[hi], w[lo], n - 1 - k, ctx);
    LaurentPoly<S> c = Lop.coeff(n - 1 - k) - e;
    if (c.is_zero()) continue;
    P.set_coeff(-k, detail::solve_dilation_sum(c, n, ctx));
  }
  return P;
}

/// Inverse of an operator with top degree 1 and leading coefficient 1
/// (e.g. an n-th root): Q with P Q = Q P = 1, computed to depth K.
template <class S>
QOp<S> invert_first_order(const QOp<S>& P, const Context<S>& ctx, int depth = -1) {
  int K = depth == -1 ? ctx.depth : depth;
  if (P.hi() != 1 || P.coeff(1) != LaurentPoly<S>(S(1)))
    throw std::invalid_argument("invert_first_order: leading term must be D");
  QOp<S> Q = QOp<S>::d_power(-1);
  for (int k = 1; k < K; ++k) {
    // coefficient of P*Q at degree -k must vanish; only q_{-k-1} is new
    LaurentPoly<S> s;
    for (auto& [i, pi] : P.coeffs()) {
      if (i == 1) continue;
      int j = -k - i;
      if (j > -1) continue;
      LaurentPoly<S> qj = Q.coeff(j);
      if (qj.is_zero()) continue;
      s += pi * dilate(qj, i, ctx);
    }
    if (s.is_zero()) continue;
    Q.set_coeff(-k - 1, dilate(-s, -1, ctx));
  }
  return Q.with_floor(-K);
}

/// L^{m/n} for any integer m, via powers of the n-th root.
template <class S>
QOp<S> frac_power(const MonicQDiff<S>& L, int m, const Context<S>& ctx, int depth = -1) {
  QOp<S> P = nth_root(L, ctx, depth);
  if (m >= 0) return pow_int(P, m, ctx);
  QOp<S> Q = invert_first_order(P, ctx, depth);
  return pow_int(Q, -m, ctx);
}

}  // namespace qgd
