#pragma once

#include <array>
#include <vector>

#include "qgd/gdbracket.hpp"
#include "qgd/loopmat.hpp"

namespace qgd {

/// Diagonal of a loop matrix as a slot vector.
template <class S>
std::vector<LaurentPoly<S>> diag_of(const LoopMat<S>& m) {
  std::vector<LaurentPoly<S>> d(m.n());
  for (int k = 0; k < m.n(); ++k) d[k] = m.at(k, k);
  return d;
}

template <class S>
LoopMat<S> diag_to_mat(const std::vector<LaurentPoly<S>>& d) {
  LoopMat<S> m(static_cast<int>(d.size()));
  for (int k = 0; k < m.n(); ++k) m.at(k, k) = d[k];
  return m;
}

/// P0' on Lgl(n): diagonal part minus (1/n) (integral of Tr) times I.
template <class S>
std::vector<LaurentPoly<S>> p0prime_diag(const LoopMat<S>& m) {
  int n = m.n();
  std::vector<LaurentPoly<S>> d = diag_of(m);
  S mean = formal_integral(m.trace_poly()) / S(n);
  for (auto& p : d) p -= LaurentPoly<S>(mean);
  return d;
}

/// theta = R_s h: z^m at slot k goes to q^m z^m at slot k+1 mod n.
template <class S>
std::vector<LaurentPoly<S>> theta_apply(const std::vector<LaurentPoly<S>>& d,
                                        const Context<S>& ctx) {
  int n = static_cast<int>(d.size());
  std::vector<LaurentPoly<S>> r(n);
  for (int k = 0; k < n; ++k) r[(k + 1) % n] = dilate(d[k], 1, ctx);
  return r;
}

/// (1+theta)(1-theta)^{-1} P0' on diagonal matrices, computed per z-grade.
/// Grades m != 0 use the closed form (1-theta^n)^{-1} (1+theta+...+theta^{n-1})
/// with theta^n acting as q^{mn}; the grade m = 0 (where that form is 0/0)
/// is the cyclic-shift circulant, solved exactly on the mean-zero slot
/// vector by cumulative sums.
template <class S>
std::vector<LaurentPoly<S>> theta_cayley(const std::vector<LaurentPoly<S>>& d_in,
                                         const Context<S>& ctx) {
  int n = static_cast<int>(d_in.size());
  // apply P0' (remove the theta-fixed component)
  std::vector<LaurentPoly<S>> d = d_in;
  {
    S mean(0);
    for (auto& p : d) mean += formal_integral(p);
    mean = mean / S(n);
    for (auto& p : d) p.add(0, -mean);
  }
  // collect z-grades
  std::map<int, std::vector<S>> grades;
  for (int k = 0; k < n; ++k)
    for (auto& [m, c] : d[k].terms()) {
      auto& slot = grades[m];
      if (slot.empty()) slot.assign(n, S(0));
      slot[k] = c;
    }
  std::vector<LaurentPoly<S>> out(n);
  for (auto& [m, v] : grades) {
    std::vector<S> y(n, S(0));
    if (m != 0) {
      // x = (1 - q^{mn})^{-1} sum_j theta^j v ;  y = (1 + theta) x
      std::vector<S> x(n, S(0));
      S qm = ctx.qpow(m);
      S scale = S(1) / (S(1) - ctx.qpow(static_cast<long>(m) * n));
      for (int j = 0; j < n; ++j) {
        S f = qm.pow(j);
        for (int k = 0; k < n; ++k) x[(k + j) % n] += f * v[k];
      }
      for (auto& c : x) c *= scale;
      for (int k = 0; k < n; ++k) y[k] = x[k] + qm * x[(k - 1 + n) % n];
    } else {
      // mean-zero circulant solve: x_k - x_{k-1} = v_k, sum x = 0
      std::vector<S> x(n, S(0));
      S run(0), tot(0);
      for (int k = 1; k < n; ++k) {
        run += v[k];
        x[k] = run;
        tot += run;
      }
      S shift = tot / S(n);
      for (auto& c : x) c -= shift;
      for (int k = 0; k < n; ++k) y[k] = x[k] + x[(k - 1 + n) % n];
    }
    for (int k = 0; k < n; ++k)
      if (!y[k].is_zero()) out[k].add(m, y[k]);
  }
  return out;
}

/// Gradient data lifted from M_n to the matrix picture at the companion
/// point: the full differential (both triangles), the left gradient, and
/// the Z combination, each per the closed formulas of the reduction.
template <class S>
struct LiftedGradient {
  LoopMat<S> dhat;
  LoopMat<S> nabla_hat;
  LoopMat<S> z;
};

template <class S>
LiftedGradient<S> lift_gradient(const Functional<S>& phi, const MonicQDiff<S>& L,
                                const Context<S>& ctx) {
  int n = L.n();
  QOp<S> dphi = differential(phi, L, ctx);
  if (!dphi.complete() || (!dphi.window_zero() && (dphi.hi() > 0 || dphi.lo_stored() < -(n - 1))))
    throw std::invalid_argument("lift_gradient: dphi must have the form sum f_i D^{-i}, 0 <= i < n");
  QOp<S> Lop = L.op();
  QOp<S> nabla = mul(Lop, dphi, ctx);
  QOp<S> nabla_prime = mul(dphi, Lop, ctx);

  // W_m = [L D^{-(m+1)}]_{(+)}
  std::vector<QOp<S>> w;
  for (int m = 0; m < n; ++m)
    w.push_back(proj(mul(Lop, QOp<S>::d_power(-(m + 1)), ctx), Part::PlusZero));

  LiftedGradient<S> out;
  out.dhat = LoopMat<S>(n);
  out.nabla_hat = LoopMat<S>(n);
  out.z = LoopMat<S>(n);

  for (int p = 0; p < n; ++p)
    for (int m = 0; m < n; ++m) {
      QOp<S> dp = mul(QOp<S>::d_power(p), mul(dphi, w[m], ctx), ctx);
      out.dhat.at(p, m) = -res(dp);
      if (p == n - 1) {
        out.nabla_hat.at(p, m) = res(mul(nabla, w[m], ctx));
      } else {
        out.nabla_hat.at(p, m) = -res(mul(QOp<S>::d_power(p + 1), mul(dphi, w[m], ctx), ctx));
      }
    }

  // Z entries: row n-1 from the dilated left gradient, column 0 from the
  // negative right gradient; everything else vanishes. The column-0 row
  // index pairs with the D-exponent (Z_{p,0} = -(D^p nabla' phi)_0), which
  // is what the direct computation h^{-1} L dhat - dhat L gives.
  for (int m = 0; m < n; ++m) {
    LaurentPoly<S> v = dilate(res(mul(nabla, w[m], ctx)), -1, ctx);
    if (m == 0) v -= res(mul(QOp<S>::d_power(n - 1), dphi, ctx)) * L.u(0);
    out.z.at(n - 1, m) = std::move(v);
  }
  for (int p = 0; p <= n - 2; ++p)
    out.z.at(p, 0) = -res(mul(QOp<S>::d_power(p), nabla_prime, ctx));
  return out;
}

/// The reduced bracket at the companion point:
/// (1/2) ( < Cay Z0_phi, Z0_psi > + < ^h Z_phi, nabla_psi > - < nabla_phi, ^h Z_psi > ).
/// Coincides exactly with the quadratic bracket on M_n.
template <class S>
S reduced_bracket(const Functional<S>& phi, const Functional<S>& psi, const MonicQDiff<S>& L,
                  const Context<S>& ctx) {
  LiftedGradient<S> a = lift_gradient(phi, L, ctx);
  LiftedGradient<S> b = lift_gradient(psi, L, ctx);
  LoopMat<S> cay = diag_to_mat(theta_cayley(p0prime_diag(a.z), ctx));
  LoopMat<S> zb0 = diag_to_mat(p0prime_diag(b.z));
  S t1 = loop_inner(cay, zb0);
  S t2 = loop_inner(dilate(a.z, 1, ctx), b.nabla_hat);
  S t3 = loop_inner(a.nabla_hat, dilate(b.z, 1, ctx));
  return S(1, 2) * (t1 + t2 - t3);
}

/// The six finite trigonometric-sum identities behind the Coxeter-twisted
/// resolvent, evaluated at numeric precision. Returns LHS - RHS for each.
/// The m = 0 sums follow the primed-sum convention (alpha = 0 excluded).
inline std::vector<Complex> lemma118_sums(int n, int m, const Context<Complex>& ctx) {
  Complex two_pi_i(BigFloat(0L), BigFloat(2L) * BigFloat::pi());
  auto omega_pow = [&](long k) { return exp(two_pi_i * Complex(k, static_cast<long>(n))); };
  Complex qm = qpow_c(ctx, Complex(m));
  Complex inv_n = Complex(1L) / Complex(static_cast<long>(n));

  auto cay = [](const Complex& x) { return (Complex(1L) + x) / (Complex(1L) - x); };

  std::vector<Complex> out;
  // m != 0 family
  Complex s175(0L), s177(0L), s179(0L);
  for (int a = 0; a < n; ++a) {
    Complex t = cay(qm * omega_pow(a));
    s175 += t;
    s177 += t * omega_pow(a);
    s179 += t * omega_pow(-a);
  }
  Complex qmn = qpow_c(ctx, Complex(static_cast<long>(m) * n));
  out.push_back(inv_n * s175 - cay(qmn));
  out.push_back(inv_n * s177 - Complex(2L) * qpow_c(ctx, Complex(static_cast<long>(m) * (n - 1))) /
                                   (Complex(1L) - qmn));
  out.push_back(inv_n * s179 - Complex(2L) * qm / (Complex(1L) - qmn));
  // m = 0 family (alpha = 0 excluded)
  Complex s176(0L), s178(0L), s180(0L);
  for (int a = 1; a < n; ++a) {
    Complex t = cay(omega_pow(a));
    s176 += t;
    s178 += t * omega_pow(a);
    s180 += t * omega_pow(-a);
  }
  Complex frac(static_cast<long>(n) - 2, static_cast<long>(n));
  out.push_back(inv_n * s176);
  out.push_back(inv_n * s178 + frac);
  out.push_back(inv_n * s180 - frac);
  return out;
}

/// Eigenvector pairing <E_{m,alpha}, E_{l,beta}> = n delta_{m,-l} [alpha = -beta mod n].
inline Complex theta_eigvec_pairing(int n, int m, int alpha, int l, int beta) {
  Complex two_pi_i(BigFloat(0L), BigFloat(2L) * BigFloat::pi());
  LoopMat<Complex> A(n), B(n);
  for (int k = 0; k < n; ++k) {
    A.at(k, k) = LaurentPoly<Complex>::monomial(m, exp(two_pi_i * Complex(-static_cast<long>(k) * alpha, static_cast<long>(n))));
    B.at(k, k) = LaurentPoly<Complex>::monomial(l, exp(two_pi_i * Complex(-static_cast<long>(k) * beta, static_cast<long>(n))));
  }
  return loop_inner(A, B);
}

}  // namespace qgd
