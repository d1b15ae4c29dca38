#pragma once

#include <cmath>
#include <vector>

#include "qgd/blockr.hpp"
#include "qgd/expoly.hpp"
#include "qgd/qop.hpp"

namespace qgd {

/// Normalized symbol of complex degree alpha, D^alpha + sum u_i D^{alpha-i},
/// kept to K coefficients. The body (1 + sum u_i D^{-i}) lives in the
/// degree-zero group; all arithmetic happens there.
class CSymbol {
public:
  CSymbol(Complex alpha, std::vector<LaurentPoly<Complex>> u)
      : alpha_(std::move(alpha)), u_(std::move(u)) {}

  static CSymbol pure(Complex alpha, int K) {
    return CSymbol(std::move(alpha), std::vector<LaurentPoly<Complex>>(K));
  }

  const Complex& alpha() const { return alpha_; }
  int depth() const { return static_cast<int>(u_.size()); }
  /// u_i for i = 1..K.
  const LaurentPoly<Complex>& u(int i) const { return u_.at(i - 1); }
  const std::vector<LaurentPoly<Complex>>& coeffs() const { return u_; }

  /// Body 1 + sum u_i D^{-i} as a windowed operator, floor -K.
  QOp<Complex> body() const {
    QOp<Complex> b = QOp<Complex>::one();
    for (int i = 1; i <= depth(); ++i) b.set_coeff(-i, u(i));
    return b.with_floor(-depth());
  }

  static CSymbol from_body(const QOp<Complex>& b, Complex alpha, int K) {
    std::vector<LaurentPoly<Complex>> u(K);
    for (int i = 1; i <= K; ++i)
      if (b.trusted(-i)) u[i - 1] = b.coeff(-i);
    return CSymbol(std::move(alpha), std::move(u));
  }

private:
  Complex alpha_;
  std::vector<LaurentPoly<Complex>> u_;
};

/// sigma_alpha(X) = D^alpha X D^{-alpha}: coefficientwise complex dilation.
inline QOp<Complex> sigma(const QOp<Complex>& x, const Complex& alpha,
                          const Context<Complex>& ctx) {
  QOp<Complex> r;
  for (auto& [d, p] : x.coeffs()) r.set_coeff(d, dilate_c(p, alpha, ctx));
  if (!x.complete()) r = r.with_floor(x.floor());
  return r;
}

/// Group law: deg(L1 L2) = deg L1 + deg L2, body L1bar * sigma_{alpha1}(L2bar).
inline CSymbol mul_c(const CSymbol& a, const CSymbol& b, const Context<Complex>& ctx) {
  BigFloat::PrecisionBump precision_guard(128);
  int K = std::min(a.depth(), b.depth());
  QOp<Complex> body = mul(a.body(), sigma(b.body(), a.alpha(), ctx), ctx);
  return CSymbol::from_body(body, a.alpha() + b.alpha(), K);
}

/// Symbolic solution A_i^m(t) of the exponential flow dA/dt = A sigma_t(X),
/// A(0) = 1, for X = sum_{i>=1} X_i D^{-i} in J-.
class ExpFlow {
public:
  ExpFlow(const QOp<Complex>& x, int K, const Context<Complex>& ctx) : K_(K) {
    BigFloat::PrecisionBump guard(128);
    Complex lq = log(ctx.q);
    std::vector<LaurentPoly<Complex>> xs(K + 1);
    for (int i = 1; i <= K; ++i)
      if (x.trusted(-i)) xs[i] = x.coeff(-i);
    a_.resize(K + 1);
    for (int i = 1; i <= K; ++i) {
      std::map<int, ExpPoly> rhs;
      // j = 0 term: q^{tm} X_i^m
      for (auto& [m, c] : xs[i].terms()) rhs[m] += ExpPoly::cell(0, m, c);
      // 1 <= j < i: A_j^n(t) q^{(t-j)(m-n)} X_{i-j}^{m-n}
      for (int j = 1; j < i; ++j) {
        for (auto& [nn, aj] : a_[j]) {
          for (auto& [d, xc] : xs[i - j].terms()) {
            int m = nn + d;  // d = m - n
            Complex factor = qpow_c(ctx, Complex(static_cast<long>(-j) * d)) * xc;
            rhs[m] += factor * aj.shift_s(d);
          }
        }
      }
      for (auto& [m, f] : rhs) {
        ExpPoly av = f.antiderivative(lq);
        if (!av.empty()) a_[i].emplace(m, std::move(av));
      }
    }
  }

  int depth() const { return K_; }
  const std::map<int, ExpPoly>& level(int i) const { return a_.at(i); }

  /// exp t(X + ln D) evaluated at t = alpha.
  CSymbol evaluate(const Complex& alpha, const Context<Complex>& ctx) const {
    BigFloat::PrecisionBump guard(128);
    std::vector<LaurentPoly<Complex>> u(K_);
    for (int i = 1; i <= K_; ++i) {
      LaurentPoly<Complex> ui;
      for (auto& [m, f] : a_[i]) ui.set(m, f.evaluate(alpha, ctx));
      u[i - 1] = std::move(ui);
    }
    return CSymbol(alpha, std::move(u));
  }

private:
  int K_;
  std::vector<std::map<int, ExpPoly>> a_;
};

/// exp alpha(X + ln D) in G_alpha.
inline CSymbol exp_map(const QOp<Complex>& x, const Complex& alpha, int K,
                       const Context<Complex>& ctx) {
  return ExpFlow(x, K, ctx).evaluate(alpha, ctx);
}

/// Guard for the genericity condition: alpha ln q / 2 pi i must stay away
/// from rationals with small denominator. Heuristic: denominators up to 64,
/// distance threshold 1e-8.
inline void require_generic(const Complex& alpha, const Context<Complex>& ctx) {
  Complex two_pi_i(BigFloat(0L), BigFloat(2L) * BigFloat::pi());
  Complex x = alpha * log(ctx.q) / two_pi_i;
  BigFloat tol = BigFloat::pow10(-8);
  double xr = x.re().to_double();
  for (int d = 1; d <= 64; ++d) {
    long p = std::lround(xr * d);
    Complex cand(p, d);
    if (abs(x - cand) < tol) throw std::domain_error("non-generic degree");
  }
}

/// The unique X in J- with exp alpha(X + ln D) = L, solved level by level.
inline QOp<Complex> log_map(const CSymbol& L, const Context<Complex>& ctx) {
  require_generic(L.alpha(), ctx);
  BigFloat::PrecisionBump precision_guard(128);
  const Complex& alpha = L.alpha();
  int K = L.depth();
  Complex lq = log(ctx.q);
  BigFloat guard = ctx.tol(1);

  // c_m(alpha) = integral_0^alpha q^{mw} dw
  auto cm = [&](int m) -> Complex {
    if (m == 0) return alpha;
    Complex mu = Complex(static_cast<long>(m)) * lq;
    return (qpow_c(ctx, Complex(static_cast<long>(m)) * alpha) - Complex(1L)) / mu;
  };

  QOp<Complex> x;
  std::vector<std::map<int, ExpPoly>> a(K + 1);
  std::vector<LaurentPoly<Complex>> xs(K + 1);
  for (int i = 1; i <= K; ++i) {
    // partial right-hand side from the already known levels
    std::map<int, ExpPoly> rhs;
    for (int j = 1; j < i; ++j)
      for (auto& [nn, aj] : a[j])
        for (auto& [d, xc] : xs[i - j].terms()) {
          int m = nn + d;
          Complex factor = qpow_c(ctx, Complex(static_cast<long>(-j) * d)) * xc;
          rhs[m] += factor * aj.shift_s(d);
        }
    // solve A_i^m(alpha) = known_m(alpha) + c_m(alpha) X_i^m for X_i^m
    std::map<int, Complex> known;
    for (auto& [m, f] : rhs) known[m] = f.antiderivative(lq).evaluate(alpha, ctx);
    LaurentPoly<Complex> xi;
    auto solve_at = [&](int m, const Complex& target) {
      Complex denom = cm(m);
      if (abs(denom) < guard) throw std::domain_error("non-generic degree");
      Complex num = target - (known.count(m) ? known[m] : Complex(0L));
      xi.set(m, num / denom);
    };
    for (auto& [m, c] : L.u(i).terms()) solve_at(m, c);
    for (auto& [m, k] : known)
      if (L.u(i).coeff(m).is_zero()) solve_at(m, Complex(0L));
    xs[i] = xi;
    // extend the symbolic flow with the completed level
    for (auto& [m, c] : xi.terms()) rhs[m] += ExpPoly::cell(0, m, c);
    for (auto& [m, f] : rhs) {
      ExpPoly av = f.antiderivative(lq);
      if (!av.empty()) a[i].emplace(m, std::move(av));
    }
    x.set_coeff(-i, xi);
  }
  return x.with_floor(-K);
}

/// L^beta = exp (alpha beta)(X + ln D).
inline CSymbol power(const CSymbol& L, const Complex& beta, const Context<Complex>& ctx) {
  BigFloat::PrecisionBump precision_guard(128);
  QOp<Complex> x = log_map(L, ctx);
  return exp_map(x, L.alpha() * beta, L.depth(), ctx);
}

/// Embeds an integer-degree symbol as a windowed operator D^m + ... .
inline QOp<Complex> embed_integer(const CSymbol& L, int m) {
  QOp<Complex> r = QOp<Complex>::d_power(m);
  for (int i = 1; i <= L.depth(); ++i) r.set_coeff(m - i, L.u(i));
  return r.with_floor(m - L.depth());
}

/// Body coefficients of the Lax right-hand side [L^{m/alpha}_{(+)}, L] D^{-alpha}:
/// B Lbar - Lbar sigma_alpha(B) with B the nonnegative part of L^{m/alpha}.
inline QOp<Complex> lax_rhs_c(const CSymbol& L, int m, const Context<Complex>& ctx) {
  if (m < 1) throw std::invalid_argument("lax_rhs_c: m must be >= 1");
  if (m > L.depth()) throw TrustError("insufficient depth");
  BigFloat::PrecisionBump precision_guard(128);
  CSymbol Lm = power(L, Complex(static_cast<long>(m)) / L.alpha(), ctx);
  QOp<Complex> B = proj(embed_integer(Lm, m), Part::PlusZero);
  if (!B.complete()) throw TrustError("insufficient depth");
  QOp<Complex> body = L.body();
  return mul(B, body, ctx) - mul(body, sigma(B, L.alpha(), ctx), ctx);
}

/// H_m(L) = (alpha/m) Tr L^{m/alpha}.
inline Complex hamiltonian_c(const CSymbol& L, int m, const Context<Complex>& ctx) {
  BigFloat::PrecisionBump precision_guard(128);
  CSymbol Lm = power(L, Complex(static_cast<long>(m)) / L.alpha(), ctx);
  return L.alpha() / Complex(static_cast<long>(m)) * trace(embed_integer(Lm, m));
}

/// Functionals on G_alpha are carried by the J+ component dbar of their
/// differential in normal coordinates.
struct CFunctional {
  QOp<Complex> dbar;
};

/// dbar H_m = D^alpha L^{m/alpha - 1}, an integer-degree operator of top m.
inline CFunctional trace_ham_dbar(const CSymbol& L, int m, const Context<Complex>& ctx) {
  BigFloat::PrecisionBump precision_guard(128);
  CSymbol G = power(L, Complex(static_cast<long>(m)) / L.alpha() - Complex(1L), ctx);
  // D^alpha (Gbar D^{m - alpha}) = sigma_alpha(Gbar) D^m
  QOp<Complex> body = sigma(G.body(), L.alpha(), ctx);
  QOp<Complex> r;
  for (auto& [d, p] : body.coeffs()) r.set_coeff(d + m, p);
  return {r.with_floor(body.floor() + m)};
}

/// phi_{f,l} = integral of u_l f dz/z, with dbar = D^l f.
inline CFunctional coefficient_functional(const LaurentPoly<Complex>& f, int l,
                                          const Context<Complex>& ctx) {
  return {QOp<Complex>::term(l, dilate(f, l, ctx))};
}

struct CGradients {
  QOp<Complex> nabla;        // Lbar dbar
  QOp<Complex> nabla_prime;  // sigma_{-alpha}(dbar Lbar)
};

/// Normal coordinates of tangent and cotangent vectors on the symbol group:
/// a tangent is (Xbar in J-, Xtilde in C), a cotangent is (fbar in J+,
/// ftilde in C), paired by <X, f> = <Xbar, fbar> + Xtilde ftilde.
struct NormalTangent {
  QOp<Complex> bar;
  Complex tilde{0L};
};
struct NormalCotangent {
  QOp<Complex> bar;
  Complex tilde{0L};
};

inline Complex normal_pairing(const NormalTangent& x, const NormalCotangent& f,
                              const Context<Complex>& ctx) {
  return inner(x.bar, f.bar, ctx) + x.tilde * f.tilde;
}

inline CGradients gradients_c(const CFunctional& phi, const CSymbol& L,
                              const Context<Complex>& ctx) {
  BigFloat::PrecisionBump precision_guard(128);
  QOp<Complex> body = L.body();
  return {mul(body, phi.dbar, ctx), sigma(mul(phi.dbar, body, ctx), -L.alpha(), ctx)};
}

/// The generalized quadratic bracket: same block shape as the integer-degree
/// bracket with h^alpha resolvents; include_p00 keeps the off-diagonal
/// (1/2) P00 terms (their net contribution is zero, asserted separately).
inline Complex bracket_c(const CFunctional& phi, const CFunctional& psi, const CSymbol& L,
                         const Context<Complex>& ctx, bool include_p00 = true) {
  BigFloat::PrecisionBump precision_guard(128);
  const Complex& alpha = L.alpha();
  CGradients gp = gradients_c(phi, L, ctx), gq = gradients_c(psi, L, ctx);
  Complex half(1, 2);
  auto P0p = [&](const QOp<Complex>& v) { return mean_removed(res(v)); };
  QOp<Complex> img1 = r_std(gp.nabla) +
                      QOp<Complex>(half * cayley_resolvent_c(P0p(gp.nabla), alpha, ctx)) +
                      QOp<Complex>(-geometric_resolvent_c(P0p(gp.nabla_prime), alpha, ctx));
  QOp<Complex> img2 = r_std(gp.nabla_prime) +
                      QOp<Complex>(-(half * cayley_resolvent_c(P0p(gp.nabla_prime), alpha, ctx))) +
                      QOp<Complex>(mean_zero_resolvent_c(P0p(gp.nabla), alpha, ctx));
  if (include_p00) {
    img1 = img1 + QOp<Complex>(half * trace(gp.nabla_prime));
    img2 = img2 + QOp<Complex>(half * trace(gp.nabla));
  }
  return inner(img1, gq.nabla, ctx) - inner(img2, gq.nabla_prime, ctx);
}

/// Bracket of the coefficient functional phi_{f,l} against psi on a symbol
/// truncated at n coefficients; for l > n the truncated symbols form a
/// Poisson submanifold and the value vanishes.
inline Complex submanifold_residual(const CSymbol& L, const LaurentPoly<Complex>& f, int l,
                                    const CFunctional& psi, const Context<Complex>& ctx) {
  return bracket_c(coefficient_functional(f, l, ctx), psi, L, ctx);
}

/// At integer degree alpha = n, u_n is a Casimir on the n-truncated symbols.
inline Complex casimir_un_residual(const CSymbol& L, int n, const LaurentPoly<Complex>& f,
                                   const CFunctional& psi, const Context<Complex>& ctx) {
  return bracket_c(coefficient_functional(f, n, ctx), psi, L, ctx);
}

/// Hamiltonian vector field of the generalized bracket in body coordinates:
/// (R DH)_1 Lbar - Lbar sigma_alpha((R DH)_2).
inline QOp<Complex> hamiltonian_field_c(const CFunctional& H, const CSymbol& L,
                                        const Context<Complex>& ctx) {
  BigFloat::PrecisionBump precision_guard(128);
  const Complex& alpha = L.alpha();
  CGradients g = gradients_c(H, L, ctx);
  Complex half(1, 2);
  auto P0p = [&](const QOp<Complex>& v) { return mean_removed(res(v)); };
  QOp<Complex> img1 = r_std(g.nabla) +
                      QOp<Complex>(half * cayley_resolvent_c(P0p(g.nabla), alpha, ctx)) +
                      QOp<Complex>(-geometric_resolvent_c(P0p(g.nabla_prime), alpha, ctx)) +
                      QOp<Complex>(half * trace(g.nabla_prime));
  QOp<Complex> img2 = r_std(g.nabla_prime) +
                      QOp<Complex>(-(half * cayley_resolvent_c(P0p(g.nabla_prime), alpha, ctx))) +
                      QOp<Complex>(mean_zero_resolvent_c(P0p(g.nabla), alpha, ctx)) +
                      QOp<Complex>(half * trace(g.nabla));
  QOp<Complex> body = L.body();
  return mul(img1, body, ctx) - mul(body, sigma(img2, alpha, ctx), ctx);
}

}  // namespace qgd
