#pragma once

#include <stdexcept>
#include <vector>

#include "qgd/frac.hpp"

namespace qgd {

/// Lifts an exact point of M_n to a jet point L + eps*V along a tangent
/// direction V (a complete operator of degree <= n-1).
template <class S>
MonicQDiff<Jet<S>> jet_point(const MonicQDiff<S>& L, const QOp<S>& V) {
  if (!V.complete()) throw TrustError("jet_point: tangent direction must be complete");
  int n = L.n();
  if (V.hi() >= n) throw std::invalid_argument("jet_point: direction leaves M_n");
  std::vector<LaurentPoly<Jet<S>>> u(n);
  for (int i = 0; i < n; ++i) {
    LaurentPoly<Jet<S>> ui;
    for (auto& [m, c] : L.u(i).terms()) ui.set(m, Jet<S>(c, S(0)));
    const LaurentPoly<S> vi = V.coeff(i);
    for (auto& [m, c] : vi.terms()) {
      Jet<S> cur = ui.coeff(m);
      ui.set(m, Jet<S>(cur.val, cur.der + c));
    }
    u[i] = std::move(ui);
  }
  return MonicQDiff<Jet<S>>(n, std::move(u));
}

/// Derivative part of a jet-valued operator, as an operator over the base.
template <class S>
QOp<S> jet_der(const QOp<Jet<S>>& a) {
  QOp<S> r;
  for (auto& [d, p] : a.coeffs()) {
    LaurentPoly<S> q;
    for (auto& [m, c] : p.terms()) q.set(m, c.der);
    r.set_coeff(d, std::move(q));
  }
  if (!a.complete()) r = r.with_floor(a.floor());
  return r;
}

template <class S>
QOp<S> jet_val(const QOp<Jet<S>>& a) {
  QOp<S> r;
  for (auto& [d, p] : a.coeffs()) {
    LaurentPoly<S> q;
    for (auto& [m, c] : p.terms()) q.set(m, c.val);
    r.set_coeff(d, std::move(q));
  }
  if (!a.complete()) r = r.with_floor(a.floor());
  return r;
}

template <class S>
QOp<Jet<S>> jet_const(const QOp<S>& a) {
  QOp<Jet<S>> r;
  for (auto& [d, p] : a.coeffs()) {
    LaurentPoly<Jet<S>> q;
    for (auto& [m, c] : p.terms()) q.set(m, Jet<S>(c, S(0)));
    r.set_coeff(d, std::move(q));
  }
  if (!a.complete()) r = r.with_floor(a.floor());
  return r;
}

/// Right-hand side of the m-th Lax flow: [ (L^{m/n})_{(+)}, L ].
/// Depth must reach degree 0 of L^{m/n}, i.e. K >= m; the result is then a
/// complete operator of degree <= n-1.
template <class S>
QOp<S> lax_rhs(const MonicQDiff<S>& L, int m, const Context<S>& ctx, int depth = -1) {
  int K = depth == -1 ? ctx.depth : depth;
  if (m < 1) throw std::invalid_argument("lax_rhs: m must be >= 1");
  if (m - K > 0) throw TrustError("insufficient depth");
  QOp<S> G = frac_power(L, m, ctx, K);
  QOp<S> A = proj(G, Part::PlusZero);
  if (!A.complete()) throw TrustError("insufficient depth");
  QOp<S> V = commutator(A, L.op(), ctx);
  if (V.hi() >= L.n() && !V.coeff(V.hi()).is_zero())
    throw std::logic_error("lax_rhs: commutator left the tangent space");
  return V;
}

/// H_m(L) = (n/m) Tr L^{m/n}.
template <class S>
S hamiltonian(const MonicQDiff<S>& L, int m, const Context<S>& ctx, int depth = -1) {
  int K = depth == -1 ? ctx.depth : depth;
  if (m < 1) throw std::invalid_argument("hamiltonian: m must be >= 1");
  if (m - K > 0) throw TrustError("insufficient depth");
  return S(L.n(), 1) / S(m, 1) * trace(frac_power(L, m, ctx, K));
}

/// eps-component of H_r evaluated at L + eps * lax_rhs(L, m); conservation
/// makes this exactly zero.
template <class S>
S conservation_residual(const MonicQDiff<S>& L, int m, int r, const Context<S>& ctx,
                        int depth = -1) {
  QOp<S> V = lax_rhs(L, m, ctx, depth);
  auto jctx = jet_context(ctx);
  auto LJ = jet_point(L, V);
  return hamiltonian(LJ, r, jctx, depth).der;
}

/// Directional derivative of the map L -> lax_rhs(L, m) at L along V.
template <class S>
QOp<S> lax_rhs_derivative(const MonicQDiff<S>& L, int m, const QOp<S>& V,
                          const Context<S>& ctx, int depth = -1) {
  auto jctx = jet_context(ctx);
  return jet_der(lax_rhs(jet_point(L, V), m, jctx, depth));
}

/// D_{V1} V2 - D_{V2} V1 for the m1- and m2-flows; commuting flows make it
/// vanish identically.
template <class S>
QOp<S> flow_commutator_residual(const MonicQDiff<S>& L, int m1, int m2,
                                const Context<S>& ctx, int depth = -1) {
  QOp<S> V1 = lax_rhs(L, m1, ctx, depth);
  QOp<S> V2 = lax_rhs(L, m2, ctx, depth);
  return lax_rhs_derivative(L, m2, V1, ctx, depth) - lax_rhs_derivative(L, m1, V2, ctx, depth);
}

/// Derivative of L^{r/n} along the m-th flow minus [ (L^{m/n})_{(+)}, L^{r/n} ];
/// vanishes on the common trusted window.
template <class S>
QOp<S> frac_power_transport_residual(const MonicQDiff<S>& L, int m, int r,
                                     const Context<S>& ctx, int depth = -1) {
  QOp<S> V = lax_rhs(L, m, ctx, depth);
  auto jctx = jet_context(ctx);
  QOp<S> dFr = jet_der(frac_power(jet_point(L, V), r, jctx, depth));
  QOp<S> A = proj(frac_power(L, m, ctx, depth), Part::PlusZero);
  QOp<S> rhs = commutator(A, frac_power(L, r, ctx, depth), ctx);
  return dFr - rhs;
}

/// Caches the n-th root and its powers at one point of M_n so that grids of
/// flow/conservation checks do not recompute the root per (m, r) pair.
template <class S>
class FlowLab {
public:
  FlowLab(MonicQDiff<S> L, const Context<S>& ctx, int depth = -1)
      : L_(std::move(L)), ctx_(ctx), depth_(depth == -1 ? ctx.depth : depth) {
    powers_.push_back(QOp<S>::one());
    powers_.push_back(nth_root(L_, ctx_, depth_));
  }

  const MonicQDiff<S>& point() const { return L_; }

  const QOp<S>& power(int m) {
    while (static_cast<int>(powers_.size()) <= m)
      powers_.push_back(mul(powers_.back(), powers_[1], ctx_));
    return powers_[m];
  }

  QOp<S> lax(int m) {
    if (m - depth_ > 0) throw TrustError("insufficient depth");
    QOp<S> A = proj(power(m), Part::PlusZero);
    if (!A.complete()) throw TrustError("insufficient depth");
    return commutator(A, L_.op(), ctx_);
  }

  S ham(int m) {
    if (m - depth_ > 0) throw TrustError("insufficient depth");
    return S(L_.n(), 1) / S(m, 1) * trace(power(m));
  }

private:
  MonicQDiff<S> L_;
  Context<S> ctx_;
  int depth_;
  std::vector<QOp<S>> powers_;
};

/// All conservation residuals for (m, r) in [1, mmax] x [1, rmax], sharing
/// one base root and one jet root per flow.
template <class S>
std::vector<std::vector<S>> conservation_grid(const MonicQDiff<S>& L, int mmax, int rmax,
                                             const Context<S>& ctx, int depth = -1) {
  FlowLab<S> base(L, ctx, depth);
  auto jctx = jet_context(ctx);
  std::vector<std::vector<S>> out;
  for (int m = 1; m <= mmax; ++m) {
    FlowLab<Jet<S>> lab(jet_point(L, base.lax(m)), jctx, depth);
    std::vector<S> row;
    for (int r = 1; r <= rmax; ++r) row.push_back(lab.ham(r).der);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace qgd
