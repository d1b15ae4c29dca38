#pragma once

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "qgd/blockr.hpp"
#include "qgd/hierarchy.hpp"

namespace qgd {

/// Elementary functional zeta_i^j(A) = Tr(z^{-j} A D^{-i}); on M_n its value
/// is the z^j coefficient of u_i and its differential is the constant
/// operator D^{-i} z^{-j}.
template <class S>
struct ZetaTerm {
  S coeff = S(1);
  int i = 0;
  int j = 0;
};

template <class S>
struct ElemSum {
  std::vector<ZetaTerm<S>> terms;

  static ElemSum zeta(int i, int j) { return {{ZetaTerm<S>{S(1), i, j}}}; }
};

/// H_m = (n/m) Tr L^{m/n}.
struct TraceHam {
  int m = 1;
};

/// phi_f(L) = Tr(L D^{-n} f); differential D^{-n} f, a Casimir on M_n.
template <class S>
struct CasimirFun {
  LaurentPoly<S> f;
};

template <class S>
using Functional = std::variant<ElemSum<S>, TraceHam, CasimirFun<S>>;

template <class S>
struct GradientPair {
  QOp<S> nabla;        // L dphi
  QOp<S> nabla_prime;  // dphi L

  DoubledVector<S> doubled() const { return {nabla, nabla_prime}; }
};

/// u_i as a Laurent polynomial, with u_n = 1 for the monic leading term.
template <class S>
LaurentPoly<S> u_poly(const MonicQDiff<S>& L, int i) {
  if (i == L.n()) return LaurentPoly<S>(S(1));
  if (i < 0 || i > L.n()) return LaurentPoly<S>();
  return L.u(i);
}

template <class S>
S functional_value(const Functional<S>& F, const MonicQDiff<S>& L, const Context<S>& ctx) {
  return std::visit(
      [&](auto&& f) -> S {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ElemSum<S>>) {
          S v(0);
          for (auto& t : f.terms) v += t.coeff * u_poly(L, t.i).coeff(t.j);
          return v;
        } else if constexpr (std::is_same_v<T, TraceHam>) {
          return hamiltonian(L, f.m, ctx);
        } else {
          // u_n = 1 on M_n
          return formal_integral(f.f);
        }
      },
      F);
}

/// The linear gradient dphi, normalized as in the smoothness definition.
/// For the trace family the canonical choice commuting with L is L^{(m-n)/n}.
template <class S>
QOp<S> differential(const Functional<S>& F, const MonicQDiff<S>& L, const Context<S>& ctx) {
  return std::visit(
      [&](auto&& f) -> QOp<S> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ElemSum<S>>) {
          QOp<S> d;
          for (auto& t : f.terms) {
            if (t.i < 0) throw std::invalid_argument("zeta: D-index must be >= 0");
            LaurentPoly<S> m = LaurentPoly<S>::monomial(-t.j, t.coeff);
            QOp<S> term = QOp<S>::term(-t.i, dilate(m, -t.i, ctx));
            d = d + term;
          }
          return d;
        } else if constexpr (std::is_same_v<T, TraceHam>) {
          return frac_power(L, f.m - L.n(), ctx);
        } else {
          return QOp<S>::term(-L.n(), dilate(f.f, -L.n(), ctx));
        }
      },
      F);
}

template <class S>
GradientPair<S> gradients(const Functional<S>& F, const MonicQDiff<S>& L,
                          const Context<S>& ctx) {
  if (auto* h = std::get_if<TraceHam>(&F)) {
    QOp<S> g = frac_power(L, h->m, ctx);
    return {g, g};
  }
  QOp<S> d = differential(F, L, ctx);
  return {mul(L.op(), d, ctx), mul(d, L.op(), ctx)};
}

enum class BracketKind { Quadratic, QuadraticAlt, Linear, Pencil, Coordinate, Custom };

template <class S>
struct BracketSpec {
  BracketKind kind = BracketKind::Quadratic;
  S pencil_alpha = S(0);
  std::optional<BlockR<S>> custom;

  static BracketSpec quad() { return {BracketKind::Quadratic, S(0), std::nullopt}; }
  static BracketSpec quad_p1() { return {BracketKind::QuadraticAlt, S(0), std::nullopt}; }
  static BracketSpec linear() { return {BracketKind::Linear, S(0), std::nullopt}; }
  static BracketSpec pencil(S alpha) { return {BracketKind::Pencil, std::move(alpha), std::nullopt}; }
  static BracketSpec coord() { return {BracketKind::Coordinate, S(0), std::nullopt}; }
  static BracketSpec with_blocks(BlockR<S> R) {
    return {BracketKind::Custom, S(0), std::move(R)};
  }
};

namespace detail {

template <class S>
S quad_bracket(const BlockR<S>& R, const GradientPair<S>& dphi, const GradientPair<S>& dpsi,
               const Context<S>& ctx) {
  DoubledVector<S> img = R.apply(dphi.doubled());
  return inner(img.first, dpsi.nabla, ctx) - inner(img.second, dpsi.nabla_prime, ctx);
}

template <class S>
S linear_bracket(const QOp<S>& dphi, const QOp<S>& dpsi, const QOp<S>& X,
                 const Context<S>& ctx) {
  QOp<S> t = commutator(r_sym(dphi), dpsi, ctx) + commutator(dphi, r_sym(dpsi), ctx);
  return -inner(t, X, ctx);
}

/// Coordinate form of the quadratic bracket: {u_{i,a}, u_{j,b}} expanded
/// over the finite Laurent supports of the u's.
template <class S>
S coord_bracket(int i, int a, int j, int b, const MonicQDiff<S>& L, const Context<S>& ctx) {
  int n = L.n();
  if (i < 0 || i > n || j < 0 || j > n)
    throw std::invalid_argument("coordinate bracket: indices must lie in 0..n");
  LaurentPoly<S> ui = u_poly(L, i), uj = u_poly(L, j);
  S acc(0);
  // sum over m != 0 of (1-q^{m(n-i)})(1-q^{mj})/(1-q^{mn}) u_{i,a+m} u_{j,b-m}
  for (auto& [ma, ca] : ui.terms()) {
    long m = ma - a;
    if (m == 0) continue;
    S cb = uj.coeff(static_cast<int>(b - m));
    if (cb.is_zero()) continue;
    S num = (S(1) - ctx.qpow(m * (n - i))) * (S(1) - ctx.qpow(m * j));
    if (num.is_zero()) continue;
    acc += num / (S(1) - ctx.qpow(m * n)) * ca * cb;
  }
  int rmax = std::min(n - i, j);
  for (int r = 1; r <= rmax; ++r) {
    LaurentPoly<S> uir = u_poly(L, i + r), ujr = u_poly(L, j - r);
    // + sum_m q^{rm} u_{i+r, b-m} u_{j-r, a+m}
    for (auto& [idx, c1] : uir.terms()) {
      long m = b - idx;
      S c2 = ujr.coeff(static_cast<int>(a + m));
      if (c2.is_zero()) continue;
      acc += ctx.qpow(static_cast<long>(r) * m) * c1 * c2;
    }
    // - sum_m q^{-m(i-j+r)} u_{i+r, a+m} u_{j-r, b-m}
    for (auto& [idx, c1] : uir.terms()) {
      long m = idx - a;
      S c2 = ujr.coeff(static_cast<int>(b - m));
      if (c2.is_zero()) continue;
      acc -= ctx.qpow(-m * (i - j + r)) * c1 * c2;
    }
  }
  return acc;
}

}  // namespace detail

/// Poisson bracket {phi, psi}(L) under the chosen presentation.
template <class S>
S bracket(const BracketSpec<S>& spec, const Functional<S>& phi, const Functional<S>& psi,
          const MonicQDiff<S>& L, const Context<S>& ctx) {
  int n = L.n();
  switch (spec.kind) {
    case BracketKind::Quadratic:
      return detail::quad_bracket(blocks::quadratic(n, ctx), gradients(phi, L, ctx),
                                  gradients(psi, L, ctx), ctx);
    case BracketKind::QuadraticAlt:
      return detail::quad_bracket(blocks::quadratic_alt(n, ctx), gradients(phi, L, ctx),
                                  gradients(psi, L, ctx), ctx);
    case BracketKind::Custom:
      return detail::quad_bracket(*spec.custom, gradients(phi, L, ctx),
                                  gradients(psi, L, ctx), ctx);
    case BracketKind::Linear:
      return detail::linear_bracket(differential(phi, L, ctx), differential(psi, L, ctx),
                                    L.op(), ctx);
    case BracketKind::Pencil: {
      S q = detail::quad_bracket(blocks::quadratic(n, ctx), gradients(phi, L, ctx),
                                 gradients(psi, L, ctx), ctx);
      S l = detail::linear_bracket(differential(phi, L, ctx), differential(psi, L, ctx),
                                   L.op(), ctx);
      return q + spec.pencil_alpha * l;
    }
    case BracketKind::Coordinate: {
      const auto* ep = std::get_if<ElemSum<S>>(&phi);
      const auto* eq = std::get_if<ElemSum<S>>(&psi);
      if (!ep || !eq)
        throw std::invalid_argument("coordinate bracket needs elementary functionals");
      S acc(0);
      for (auto& tp : ep->terms)
        for (auto& tq : eq->terms)
          acc += tp.coeff * tq.coeff * detail::coord_bracket(tp.i, tp.j, tq.i, tq.j, L, ctx);
      return acc;
    }
  }
  throw std::logic_error("bracket: unknown kind");
}

/// Hamiltonian vector field with the convention {H, phi} = <dphi, V_H>.
/// Quadratic kinds: V = (A grad + B grad') L - L (C grad + D grad').
/// Linear kind:     V = [r_s dH, L] + r_s^*([dH, L]).
/// The result is a polynomial tangent vector of degree <= n-1; tangency is
/// checked on the trusted window and the known coefficients are returned as
/// a complete operator.
template <class S>
QOp<S> hamiltonian_vector_field(const BracketSpec<S>& spec, const Functional<S>& H,
                                const MonicQDiff<S>& L, const Context<S>& ctx) {
  int n = L.n();
  QOp<S> Lop = L.op();
  QOp<S> V;
  auto quad_field = [&](const BlockR<S>& R) {
    GradientPair<S> g = gradients(H, L, ctx);
    DoubledVector<S> img = R.apply(g.doubled());
    return mul(img.first, Lop, ctx) - mul(Lop, img.second, ctx);
  };
  auto linear_field = [&]() {
    QOp<S> dH = differential(H, L, ctx);
    S half(1, 2);
    auto r_sym_star = [&](const QOp<S>& x) {
      return half * (proj(x, Part::MinusZero) - proj(x, Part::Plus));
    };
    return commutator(r_sym(dH), Lop, ctx) + r_sym_star(commutator(dH, Lop, ctx));
  };
  switch (spec.kind) {
    case BracketKind::Quadratic: V = quad_field(blocks::quadratic(n, ctx)); break;
    case BracketKind::QuadraticAlt: V = quad_field(blocks::quadratic_alt(n, ctx)); break;
    case BracketKind::Custom: V = quad_field(*spec.custom); break;
    case BracketKind::Linear: V = linear_field(); break;
    case BracketKind::Pencil: {
      V = quad_field(blocks::quadratic(n, ctx)) + spec.pencil_alpha * linear_field();
      break;
    }
    default:
      throw std::invalid_argument("hamiltonian_vector_field: unsupported bracket kind");
  }
  if (!V.trusted(0)) throw TrustError("hamiltonian_vector_field: untrusted window");
  QOp<S> tangent;
  for (auto& [d, p] : V.coeffs()) {
    if (d < 0 || d >= n)
      throw std::logic_error("hamiltonian_vector_field: field left the tangent space");
    tangent.set_coeff(d, p);
  }
  return tangent;
}

/// Bracket of the Casimir family phi_f against psi; exactly zero on M_n.
template <class S>
S casimir_leading_residual(const LaurentPoly<S>& f, const Functional<S>& psi,
                           const MonicQDiff<S>& L, const Context<S>& ctx) {
  Functional<S> phi = CasimirFun<S>{f};
  return bracket(BracketSpec<S>::quad(), phi, psi, L, ctx);
}

/// Cyclic sum <<[R Dphi, R Dpsi], Dchi>> + c.p.; the Jacobi obstruction for a
/// constant skew block matrix, zero for the admissible shape.
template <class S>
S schouten_delta(const BlockR<S>& R, const Functional<S>& phi, const Functional<S>& psi,
                 const Functional<S>& chi, const MonicQDiff<S>& L, const Context<S>& ctx) {
  DoubledVector<S> d1 = gradients(phi, L, ctx).doubled();
  DoubledVector<S> d2 = gradients(psi, L, ctx).doubled();
  DoubledVector<S> d3 = gradients(chi, L, ctx).doubled();
  auto term = [&](const DoubledVector<S>& a, const DoubledVector<S>& b,
                  const DoubledVector<S>& c) {
    return doubled_inner(doubled_commutator(R.apply(a), R.apply(b), ctx), c, ctx);
  };
  return term(d1, d2, d3) + term(d2, d3, d1) + term(d3, d1, d2);
}

namespace detail {

template <class S>
Functional<Jet<S>> lift_functional(const Functional<S>& F) {
  if (auto* e = std::get_if<ElemSum<S>>(&F)) {
    ElemSum<Jet<S>> r;
    for (auto& t : e->terms) r.terms.push_back({Jet<S>(t.coeff, S(0)), t.i, t.j});
    return r;
  }
  if (auto* h = std::get_if<TraceHam>(&F)) return *h;
  auto& c = std::get<CasimirFun<S>>(F);
  LaurentPoly<Jet<S>> f;
  for (auto& [m, v] : c.f.terms()) f.set(m, Jet<S>(v, S(0)));
  return CasimirFun<Jet<S>>{f};
}

template <class S>
BracketSpec<Jet<S>> lift_spec(const BracketSpec<S>& spec) {
  if (spec.kind == BracketKind::Custom || spec.kind == BracketKind::Coordinate)
    throw std::invalid_argument("jacobi_residual: spec not computable over jets");
  BracketSpec<Jet<S>> r;
  r.kind = spec.kind;
  r.pencil_alpha = Jet<S>(spec.pencil_alpha, S(0));
  return r;
}

}  // namespace detail

/// Jacobi residual via jets:
/// sum over cyclic (phi,psi,chi) of the derivative of {psi,chi} along V_phi.
template <class S>
S jacobi_residual(const BracketSpec<S>& spec, const Functional<S>& phi,
                  const Functional<S>& psi, const Functional<S>& chi,
                  const MonicQDiff<S>& L, const Context<S>& ctx) {
  auto jctx = jet_context(ctx);
  auto jspec = detail::lift_spec(spec);
  auto one = [&](const Functional<S>& a, const Functional<S>& b, const Functional<S>& c) {
    QOp<S> V = hamiltonian_vector_field(spec, a, L, ctx);
    auto LJ = jet_point(L, V);
    return bracket(jspec, detail::lift_functional(b), detail::lift_functional(c), LJ, jctx).der;
  };
  return one(phi, psi, chi) + one(psi, chi, phi) + one(chi, phi, psi);
}

/// <dphi, V> pairing used by the consistency checks.
template <class S>
S pair_differential(const Functional<S>& phi, const QOp<S>& V, const MonicQDiff<S>& L,
                    const Context<S>& ctx) {
  return inner(differential(phi, L, ctx), V, ctx);
}

}  // namespace qgd
