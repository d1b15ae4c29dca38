#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgd/cdeg.hpp"
#include "qgd/gdbracket.hpp"
#include "qgd/rng.hpp"

using namespace qgd;

namespace {
using CLP = LaurentPoly<Complex>;
using COp = QOp<Complex>;

Context<Complex> make_ctx(int digits = 40) {
  BigFloat::set_base_decimal_digits(digits);
  Context<Complex> ctx;
  ctx.q = Complex(1, 2);
  ctx.digits = digits;
  return ctx;
}

Complex cnum(long a, long b) { return Complex(a, b); }

CLP random_claurent(Rng& rng, int terms = 2) {
  CLP p;
  for (int t = 0; t < terms; ++t)
    p.set(static_cast<int>(rng.range(-3, 3)), cnum(rng.range(-9, 9), rng.range(1, 9)));
  return p;
}

COp random_jminus(Rng& rng, int K, int levels = 3) {
  COp x;
  for (int i = 1; i <= levels; ++i) x.set_coeff(-i, random_claurent(rng));
  return x.with_floor(-K);
}

CSymbol random_csymbol(Rng& rng, const Complex& alpha, int K, int levels = 3) {
  std::vector<CLP> u(K);
  for (int i = 0; i < levels && i < K; ++i) u[i] = random_claurent(rng);
  return CSymbol(alpha, std::move(u));
}

BigFloat qop_dist(const COp& a, const COp& b) {
  BigFloat worst(0L);
  int lo = std::max(common_floor(a, b), std::min(a.lo_stored(), b.lo_stored()));
  for (int d = lo; d <= std::max(a.hi(), b.hi()); ++d) {
    CLP pa = a.coeff(d), pb = b.coeff(d);
    for (auto& [m, c] : pa.terms()) {
      BigFloat e = abs(c - pb.coeff(m));
      if (worst < e) worst = e;
    }
    for (auto& [m, c] : pb.terms()) {
      BigFloat e = abs(pa.coeff(m) - c);
      if (worst < e) worst = e;
    }
  }
  return worst;
}

BigFloat csymbol_dist(const CSymbol& a, const CSymbol& b) {
  BigFloat worst = abs(a.alpha() - b.alpha());
  for (int i = 1; i <= std::min(a.depth(), b.depth()); ++i) {
    for (auto& [m, c] : a.u(i).terms()) {
      BigFloat e = abs(c - b.u(i).coeff(m));
      if (worst < e) worst = e;
    }
    for (auto& [m, c] : b.u(i).terms()) {
      BigFloat e = abs(a.u(i).coeff(m) - c);
      if (worst < e) worst = e;
    }
  }
  return worst;
}
}  // namespace

TEST_CASE("expoly: products, shifts, calculus") {
  auto ctx = make_ctx();
  Complex lq = log(ctx.q);
  Rng rng(Rng::derive(2, "cdeg", "expoly"));
  for (int rep = 0; rep < 10; ++rep) {
    ExpPoly f, g;
    for (int t = 0; t < 3; ++t) {
      f.add(static_cast<int>(rng.range(0, 3)), static_cast<int>(rng.range(-3, 3)),
            cnum(rng.range(-9, 9), rng.range(1, 9)));
      g.add(static_cast<int>(rng.range(0, 3)), static_cast<int>(rng.range(-3, 3)),
            cnum(rng.range(-9, 9), rng.range(1, 9)));
    }
    Complex t0 = cnum(3, 7);
    // evaluation is a ring morphism
    CHECK(abs((f * g).evaluate(t0, ctx) - f.evaluate(t0, ctx) * g.evaluate(t0, ctx)) <
          BigFloat::pow10(-30));
    // d/dt of the antiderivative reproduces the integrand, cell by cell
    ExpPoly back = f.antiderivative(lq).derivative(lq) - f;
    for (auto& [k, c] : back.cells()) CHECK(abs(c) < BigFloat::pow10(-30));
    // the antiderivative vanishes at t = 0
    CHECK(abs(f.antiderivative(lq).evaluate(Complex(0L), ctx)) < BigFloat::pow10(-30));
  }
}

TEST_CASE("mul_c group law basics") {
  auto ctx = make_ctx();
  Complex a = Complex::from_string("0.7"), b = Complex::from_string("-0.32+0.1i");
  CSymbol Da = CSymbol::pure(a, 6), Db = CSymbol::pure(b, 6);
  CSymbol prod = mul_c(Da, Db, ctx);
  CHECK(abs(prod.alpha() - (a + b)) < BigFloat::pow10(-35));
  for (int i = 1; i <= 6; ++i) CHECK(prod.u(i).is_zero());
  // sigma cancellation: (1 + z D^-1) D^a * D^-a = 1 + z D^-1
  std::vector<CLP> u(6);
  u[0] = CLP::z(1);
  CSymbol Lz(a, u);
  CSymbol back = mul_c(Lz, CSymbol::pure(-a, 6), ctx);
  CHECK(abs(back.alpha()) < BigFloat::pow10(-35));
  CHECK(csymbol_dist(back, CSymbol(Complex(0L), u)) < BigFloat::pow10(-35));
}

TEST_CASE("exp_map: trivial case and level-one closed form") {
  auto ctx = make_ctx();
  Complex alpha = Complex::from_string("0.7");
  int K = 8;
  // X = 0 exponentiates to D^alpha
  CSymbol pure = exp_map(COp{}.with_floor(-K), alpha, K, ctx);
  for (int i = 1; i <= K; ++i) CHECK(pure.u(i).is_zero());
  // level 1: A_1^m(alpha) = (q^{m alpha} - 1)/(m ln q) X_1^m, alpha X_1^0
  Rng rng(Rng::derive(2, "cdeg", "level-one"));
  COp X;
  CLP x1 = random_claurent(rng, 3);
  x1.set(0, cnum(2, 3));
  X.set_coeff(-1, x1);
  X = X.with_floor(-K);
  ExpFlow flow(X, K, ctx);
  CSymbol got = flow.evaluate(alpha, ctx);
  Complex lq = log(ctx.q);
  for (auto& [m, c] : x1.terms()) {
    Complex want = (m == 0) ? alpha * c
                            : (qpow_c(ctx, Complex(static_cast<long>(m)) * alpha) - Complex(1L)) /
                                  (Complex(static_cast<long>(m)) * lq) * c;
    CHECK(abs(got.u(1).coeff(m) - want) < BigFloat::pow10(-35));
  }
}

TEST_CASE("exp_map: one-parameter group law") {
  auto ctx = make_ctx();
  int K = 6;
  Rng rng(Rng::derive(2, "cdeg", "grouplaw"));
  COp X = random_jminus(rng, K);
  ExpFlow flow(X, K, ctx);
  Complex s = Complex::from_string("0.41"), t = Complex::from_string("0.29+0.05i");
  CSymbol Ls = flow.evaluate(s, ctx), Lt = flow.evaluate(t, ctx), Lst = flow.evaluate(s + t, ctx);
  CHECK(csymbol_dist(mul_c(Ls, Lt, ctx), Lst) < BigFloat::pow10(-35));
}

TEST_CASE("log/exp roundtrips at alpha = 0.7, depth 8") {
  auto ctx = make_ctx(40);
  int K = 8;
  Complex alpha = Complex::from_string("0.7");
  Rng rng(Rng::derive(2, "cdeg", "roundtrip"));
  // log(exp(X)) = X
  COp X = random_jminus(rng, K);
  CSymbol L = exp_map(X, alpha, K, ctx);
  COp X2 = log_map(L, ctx);
  CHECK(qop_dist(X, X2) < BigFloat::pow10(-30));
  // exp(log(L)) = L
  CSymbol L3 = random_csymbol(rng, alpha, K);
  CSymbol L4 = exp_map(log_map(L3, ctx), alpha, K, ctx);
  CHECK(csymbol_dist(L3, L4) < BigFloat::pow10(-30));
}

TEST_CASE("non-generic degrees are rejected") {
  auto ctx = make_ctx();
  // alpha ln q / 2 pi i rational <=> alpha = 2 pi i rational / ln q
  Complex two_pi_i(BigFloat(0L), BigFloat(2L) * BigFloat::pi());
  Complex bad_alpha = two_pi_i * Complex(1, 3) / log(ctx.q);
  CHECK_THROWS_AS(require_generic(bad_alpha, ctx), std::domain_error);
  CHECK_NOTHROW(require_generic(Complex::from_string("0.7"), ctx));
}

TEST_CASE("power: identity, inverse exponent, integer degrees") {
  auto ctx = make_ctx();
  int K = 6;
  Complex alpha = Complex::from_string("0.7");
  Rng rng(Rng::derive(2, "cdeg", "power"));
  CSymbol L = random_csymbol(rng, alpha, K, 2);
  CHECK(csymbol_dist(power(L, Complex(1L), ctx), L) < BigFloat::pow10(-30));
  Complex beta = Complex::from_string("0.37");
  CSymbol Lb = power(L, beta, ctx);
  CHECK(csymbol_dist(power(Lb, Complex(1L) / beta, ctx), L) < BigFloat::pow10(-25));
  // L^{m/alpha} has integer degree m
  CSymbol Lm = power(L, Complex(2L) / alpha, ctx);
  CHECK(abs(Lm.alpha() - Complex(2L)) < BigFloat::pow10(-30));
}

TEST_CASE("lax flows on G_alpha") {
  auto ctx = make_ctx();
  int K = 6;
  Complex alpha = Complex::from_string("0.7");
  Rng rng(Rng::derive(2, "cdeg", "lax"));
  // L = D^alpha is a fixed point
  CSymbol pure = CSymbol::pure(alpha, K);
  COp v0 = lax_rhs_c(pure, 2, ctx);
  CHECK(qop_dist(v0, COp{}.with_floor(v0.complete() ? -K : v0.floor())) < BigFloat::pow10(-30));
  // the coefficient at D^alpha (body degree 0) vanishes: tangency
  CSymbol L = random_csymbol(rng, alpha, K, 2);
  for (int m : {1, 2}) {
    COp v = lax_rhs_c(L, m, ctx);
    CHECK(abs(formal_integral(v.coeff(0))) < BigFloat::pow10(-30));
    const CLP deg0 = v.coeff(0);
    for (auto& [mm, c] : deg0.terms()) CHECK(abs(c) < BigFloat::pow10(-30));
  }
}

TEST_CASE("conservation along the generalized flows (difference quotient)") {
  auto ctx = make_ctx(40);
  int K = 6;
  Complex alpha = Complex::from_string("0.7");
  Rng rng(Rng::derive(2, "cdeg", "cons"));
  CSymbol L = random_csymbol(rng, alpha, K, 2);
  COp V = lax_rhs_c(L, 2, ctx);
  // evaluate H_3 at L +- h V at doubled working precision
  BigFloat::PrecisionGuard lift(90);
  Context<Complex> hctx = ctx;
  auto shift = [&](const Complex& h) {
    std::vector<CLP> u;
    for (int i = 1; i <= K; ++i) {
      CLP ui = L.u(i);
      if (V.trusted(-i)) ui += h * V.coeff(-i);
      u.push_back(ui);
    }
    return CSymbol(alpha, u);
  };
  Complex h(BigFloat::pow10(-20), BigFloat(0L));
  Complex hp = hamiltonian_c(shift(h), 3, hctx);
  Complex hm = hamiltonian_c(shift(-h), 3, hctx);
  Complex deriv = (hp - hm) / (Complex(2L) * h);
  CHECK(abs(deriv) < BigFloat::pow10(-25));
}

TEST_CASE("generalized bracket: Hamiltonian consistency and involution") {
  auto ctx = make_ctx(40);
  int K = 8;
  Complex alpha = Complex::from_string("0.7");
  Rng rng(Rng::derive(2, "cdeg", "ham-consistency"));
  CSymbol L = random_csymbol(rng, alpha, K, 2);
  BigFloat::PrecisionBump argbump(128);
  // V_{H_m} from the bracket equals the Lax right-hand side
  for (int m : {1, 2}) {
    CFunctional H = trace_ham_dbar(L, m, ctx);
    COp V = hamiltonian_field_c(H, L, ctx);
    COp W = lax_rhs_c(L, m, ctx);
    CHECK(qop_dist(V, W) < BigFloat::pow10(-30));
  }
  // involution of the trace Hamiltonians
  for (int m = 1; m <= 4; ++m)
    for (int k = m + 1; k <= 4; ++k) {
      Complex br = bracket_c(trace_ham_dbar(L, m, ctx), trace_ham_dbar(L, k, ctx), L, ctx);
      CHECK(abs(br) < BigFloat::pow10(-30));
    }
  // both gradients of H_m are L^{m/alpha}
  for (int m : {1, 2}) {
    CGradients g = gradients_c(trace_ham_dbar(L, m, ctx), L, ctx);
    COp want = embed_integer(power(L, Complex(static_cast<long>(m)) / alpha, ctx), m);
    CHECK(qop_dist(g.nabla, want) < BigFloat::pow10(-30));
    CHECK(qop_dist(g.nabla_prime, want) < BigFloat::pow10(-30));
  }
}

TEST_CASE("bracket is independent of the P00 terms and of J(-) shifts of dbar") {
  auto ctx = make_ctx(40);
  int K = 6;
  Complex alpha = Complex::from_string("0.7");
  Rng rng(Rng::derive(2, "cdeg", "p00"));
  CSymbol L = random_csymbol(rng, alpha, K, 2);
  for (int rep = 0; rep < 4; ++rep) {
    CFunctional phi{COp::term(static_cast<int>(rng.range(1, 3)), random_claurent(rng))};
    CFunctional psi{COp::term(static_cast<int>(rng.range(1, 3)), random_claurent(rng))};
    Complex with = bracket_c(phi, psi, L, ctx, true);
    Complex without = bracket_c(phi, psi, L, ctx, false);
    CHECK(abs(with - without) < BigFloat::pow10(-30));
    // antisymmetry
    CHECK(abs(with + bracket_c(psi, phi, L, ctx)) < BigFloat::pow10(-30));
    // adding junk from J(-) to dbar does not change the value
    CFunctional phi2{phi.dbar + COp::term(0, random_claurent(rng)) +
                     COp::term(-1, random_claurent(rng))};
    CHECK(abs(bracket_c(phi2, psi, L, ctx) - with) < BigFloat::pow10(-28));
  }
}

TEST_CASE("truncated symbols are Poisson submanifolds; u_n is Casimir at alpha = n") {
  auto ctx = make_ctx(40);
  int K = 8;
  Rng rng(Rng::derive(2, "cdeg", "submanifolds"));
  // G_{alpha,n}: u_i = 0 for i > n; test functional phi_{f,l}, l > n
  Complex alpha = Complex::from_string("0.7");
  int n = 3;
  CSymbol L = random_csymbol(rng, alpha, K, n);
  for (int l : {n + 1, n + 2}) {
    CFunctional phi = coefficient_functional(random_claurent(rng), l, ctx);
    for (int rep = 0; rep < 3; ++rep) {
      CFunctional psi{COp::term(static_cast<int>(rng.range(1, 3)), random_claurent(rng))};
      CHECK(abs(bracket_c(phi, psi, L, ctx)) < BigFloat::pow10(-30));
    }
  }
  // f = 0 gives exactly zero
  CFunctional zero = coefficient_functional(CLP(), n + 1, ctx);
  CFunctional psi0{COp::term(1, random_claurent(rng))};
  CHECK(bracket_c(zero, psi0, L, ctx).is_zero());
  // alpha = n integer: u_n is a Casimir on G_{n,n}
  CSymbol Ln(Complex(static_cast<long>(n)), L.coeffs());
  CFunctional phin = coefficient_functional(random_claurent(rng), n, ctx);
  for (int rep = 0; rep < 3; ++rep) {
    CFunctional psi{COp::term(static_cast<int>(rng.range(1, 3)), random_claurent(rng))};
    CHECK(abs(bracket_c(phin, psi, Ln, ctx)) < BigFloat::pow10(-30));
  }
}

TEST_CASE("integer-degree restriction matches the exact bracket") {
  auto nctx = make_ctx(40);
  Context<Rational> xctx{};
  int n = 2, K = 8;
  Rng rng(Rng::derive(2, "cdeg", "restrict"));
  auto Lx = random_monic(rng, n);
  // the symbol with u_i = u_{n-i} carries the same operator
  std::vector<CLP> u(K);
  for (int i = 1; i <= n; ++i) {
    CLP ui;
    for (auto& [m, c] : Lx.u(n - i).terms()) ui.set(m, to_complex(c));
    u[i - 1] = ui;
  }
  CSymbol Ln(Complex(static_cast<long>(n)), u);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
          Rational exact = bracket(BracketSpec<Rational>::quad(),
                                   Functional<Rational>{ElemSum<Rational>::zeta(i, a)},
                                   Functional<Rational>{ElemSum<Rational>::zeta(j, b)}, Lx, xctx);
          // dbar zeta_i^a = D^n d zeta = D^{n-i} z^{-a} left-dilated
          CFunctional phi{COp::term(n - i, dilate(CLP::z(-a), n - i, nctx))};
          CFunctional psi{COp::term(n - j, dilate(CLP::z(-b), n - j, nctx))};
          Complex got = bracket_c(phi, psi, Ln, nctx);
          CHECK(abs(got - to_complex(exact)) < BigFloat::pow10(-30));
        }
}

TEST_CASE("tangent maps of left/right translation (difference quotients)") {
  auto ctx = make_ctx(40);
  int K = 5;
  Complex alpha = Complex::from_string("0.7");
  Rng rng(Rng::derive(2, "cdeg", "tangent-maps"));
  CSymbol L = random_csymbol(rng, alpha, K, 2);
  COp Xbar = random_jminus(rng, K, 2);
  // curve gamma(s) = exp s(Xbar + lnD): degree s, normal coordinates (Xbar, 1)
  ExpFlow flow(Xbar, K, ctx);
  Complex h(BigFloat::pow10(-20), BigFloat(0L));
  BigFloat::PrecisionGuard lift(80);
  auto body_of = [&](const CSymbol& s) { return s.body(); };
  // right translation: d/ds body(gamma(s) L) = Xbar Lbar + [lnD, Lbar]
  {
    COp bp = body_of(mul_c(flow.evaluate(h, ctx), L, ctx));
    COp bm = body_of(mul_c(flow.evaluate(-h, ctx), L, ctx));
    COp got = Complex(1L) / (Complex(2L) * h) * (bp - bm);
    COp want = mul(Xbar, L.body(), ctx) + log_dilation_derivation(L.body(), ctx);
    CHECK(qop_dist(got, want) < BigFloat::pow10(-10));
  }
  // left translation: d/ds body(L gamma(s)) = Lbar sigma_alpha(Xbar) + Lbar [lnD ...]
  {
    COp bp = body_of(mul_c(L, flow.evaluate(h, ctx), ctx));
    COp bm = body_of(mul_c(L, flow.evaluate(-h, ctx), ctx));
    COp got = Complex(1L) / (Complex(2L) * h) * (bp - bm);
    // f323 for the pure-Xbar part plus the lnD drift L (sigma_alpha lnD-term):
    // d/ds (Lbar sigma_alpha(Bbar(s)) D^{alpha+s}) at s=0 gives
    // Lbar sigma_alpha(Xbar) + L lnD D^{-alpha}-term; the body part is
    // Lbar sigma_alpha(Xbar) since [lnD, D^s] drift sits in the degree.
    COp want = mul(L.body(), sigma(Xbar, alpha, ctx), ctx);
    CHECK(qop_dist(got, want) < BigFloat::pow10(-10));
  }
}

TEST_CASE("flows with different m commute (mixed difference quotients)") {
  auto ctx = make_ctx(40);
  int K = 5;
  Complex alpha = Complex::from_string("0.7");
  Rng rng(Rng::derive(2, "cdeg", "flow-commute"));
  CSymbol L = random_csymbol(rng, alpha, K, 2);
  BigFloat::PrecisionGuard lift(140);
  Complex h(BigFloat::pow10(-25), BigFloat(0L));
  auto shift = [&](const CSymbol& base, const COp& v, const Complex& step) {
    std::vector<CLP> u;
    for (int i = 1; i <= K; ++i) {
      CLP ui = base.u(i);
      if (v.trusted(-i)) ui += step * v.coeff(-i);
      u.push_back(ui);
    }
    return CSymbol(alpha, u);
  };
  auto dirderiv = [&](int m, const COp& v) {
    COp p = lax_rhs_c(shift(L, v, h), m, ctx);
    COp q = lax_rhs_c(shift(L, v, -h), m, ctx);
    return Complex(1L) / (Complex(2L) * h) * (p - q);
  };
  COp V1 = lax_rhs_c(L, 1, ctx), V2 = lax_rhs_c(L, 2, ctx);
  COp mixed = dirderiv(2, V1) - dirderiv(1, V2);
  CHECK(qop_dist(mixed, COp{}.with_floor(mixed.complete() ? -K : mixed.floor())) <
        BigFloat::pow10(-32));
}

TEST_CASE("normal coordinate pairing") {
  auto ctx = make_ctx();
  NormalTangent x{COp::term(-1, CLP::z(1)), Complex(2L)};
  NormalCotangent f{COp::term(1, CLP::z(-1)), Complex(3L)};
  // <z D^-1, z^-1 D> = q, plus the scalar slot 2*3
  Complex want = ctx.q + Complex(6L);
  CHECK(abs(normal_pairing(x, f, ctx) - want) < BigFloat::pow10(-35));
}

TEST_CASE("cocycle over the numeric backend uses lambda = ln q") {
  auto ctx = make_ctx(40);
  // omega(z D^-1, z^-1 D) = q ln q
  COp x = COp::term(-1, CLP::z(1)), y = COp::term(1, CLP::z(-1));
  Complex want = ctx.q * log(ctx.q);
  CHECK(abs(cocycle_omega(x, y, ctx) - want) < BigFloat::pow10(-35));
}
